"""Validated stochastic value types.

Every array handed to one of the classes in here is copied, checked for
nonnegativity and for its sum condition within a [Tolerance][cubestoch_api.core.Tolerance],
has tiny negative round-off clamped to zero and is then frozen. Instances
never change after construction, so they can be shared freely.

Indices are 0-based in code and 1-based in every message and file format,
an entry `p[i, j, k]` of a cubic array is written `p_(i+1)(j+1)(k+1)` in math notation.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple, Type, TypeVar, Union

import numpy as np
import numpy.typing as npt

from cubestoch_api.error import DomainError, ShapeError, StochasticityError

DEFAULT_EPS = 1e-9

ArrayLike = npt.ArrayLike


@dataclass(frozen=True)
class Tolerance:
    """Admission tolerance used for all "nonnegative" and "sums to one"
    checks.

    A value `v` passes the nonnegativity check if `v >= -eps`, a sum `s`
    passes if `|s - 1| <= eps`.

    Attributes:
        eps: Nonnegative, dimensionless tolerance
    """

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not math.isfinite(self.eps) or self.eps < 0:
            raise DomainError("eps", self.eps, "a finite real >= 0")

    def nonnegative(self, value: float) -> bool:
        return value >= -self.eps

    def sums_to_one(self, value: float) -> bool:
        return abs(value - 1.0) <= self.eps


class StochasticType(Enum):
    """The stochasticity conditions that can be checked.

    Attributes:
        COLUMN: Square matrix, every column sums to one
        TYPE_12: Cubic matrix, every frontal slice `P[:, :, k]` sums to one
        TYPE_23: Cubic matrix, every horizontal slice `P[i, :, :]` sums to one
        TYPE_13: Cubic matrix, every lateral slice `P[:, j, :]` sums to one
        THREE: Cubic matrix, every tube `P[i, j, :]` sums to one
        SIMPLEX: Vector whose entries sum to one
    """

    COLUMN = "ns"
    TYPE_12 = "(1,2)"
    TYPE_23 = "(2,3)"
    TYPE_13 = "(1,3)"
    THREE = "3-stochastic"
    SIMPLEX = "simplex"

    def __str__(self) -> str:
        return self.value

    @property
    def order(self) -> int:
        if self is StochasticType.SIMPLEX:
            return 1
        if self is StochasticType.COLUMN:
            return 2
        return 3


# axes that get summed, and how the surviving index is named in reports
_SUM_AXES = {
    StochasticType.COLUMN: ((0,), "column", ("j",)),
    StochasticType.TYPE_12: ((0, 1), "frontal slice", ("k",)),
    StochasticType.TYPE_23: ((1, 2), "horizontal slice", ("i",)),
    StochasticType.TYPE_13: ((0, 2), "lateral slice", ("j",)),
    StochasticType.THREE: ((2,), "tube", ("i", "j")),
    StochasticType.SIMPLEX: ((0,), "vector", ()),
}


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a stochasticity check.

    Attributes:
        ok: Whether every condition holds within tolerance
        which: The checked stochastic type
        eps: The tolerance the check used
        problem: `None`, `"negative"`, `"non-finite"` or `"sum"`
        index: 1-based index tuple of the first failing entry (for
            `"negative"`/`"non-finite"`) or of the failing index set (for `"sum"`)
        value: The offending entry or the offending sum
    """

    ok: bool
    which: StochasticType
    eps: float
    problem: Optional[str] = None
    index: Tuple[int, ...] = ()
    value: Optional[float] = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        """Human readable one-line summary of the report."""
        if self.ok:
            return f"valid {self.which} (eps={self.eps:g})"

        if self.problem == "sum":
            _, label, names = _SUM_AXES[self.which]
            if names:
                where = f"{label} {_format_index(names, self.index)}"
            else:
                where = label
            return (
                f"{where} sums to {self.value!r} "
                f"(expected 1 within {self.eps:g}) for type {self.which}"
            )

        position = "(" + ",".join(str(i) for i in self.index) + ")"
        if self.problem == "non-finite":
            return f"entry {position} is not finite ({self.value!r}) for type {self.which}"
        return (
            f"entry {position} is negative ({self.value!r}, "
            f"tolerance {self.eps:g}) for type {self.which}"
        )


def _format_index(names: Tuple[str, ...], index: Tuple[int, ...]) -> str:
    if len(names) == 1:
        return f"{names[0]}={index[0]}"
    return f"({','.join(names)})=({','.join(str(i) for i in index)})"


def _check_shape(array: np.ndarray, which: StochasticType) -> None:
    order = which.order
    if array.ndim != order:
        raise ShapeError(
            f"type {which} needs an array of order {order}, got shape {array.shape}"
        )
    if array.shape[0] < 1:
        raise ShapeError("dimension n must be at least 1")
    if len(set(array.shape)) != 1:
        raise ShapeError(f"type {which} needs equal mode sizes, got {array.shape}")


def _validate_array(
    array: np.ndarray, which: StochasticType, tol: Tolerance
) -> ValidationReport:
    _check_shape(array, which)

    finite = np.isfinite(array)
    if not finite.all():
        bad = tuple(int(i) for i in np.argwhere(~finite)[0])
        return ValidationReport(
            False,
            which,
            tol.eps,
            "non-finite",
            tuple(i + 1 for i in bad),
            float(array[bad]),
        )

    negative = array < -tol.eps
    if negative.any():
        bad = tuple(int(i) for i in np.argwhere(negative)[0])
        return ValidationReport(
            False,
            which,
            tol.eps,
            "negative",
            tuple(i + 1 for i in bad),
            float(array[bad]),
        )

    axes, _, _ = _SUM_AXES[which]
    sums = np.asarray(array.sum(axis=axes))
    failing = np.abs(sums - 1.0) > tol.eps
    if failing.any():
        bad = tuple(int(i) for i in np.argwhere(failing)[0]) if sums.ndim else ()
        return ValidationReport(
            False,
            which,
            tol.eps,
            "sum",
            tuple(i + 1 for i in bad),
            float(sums[bad]),
        )

    return ValidationReport(True, which, tol.eps)


def validate_type(
    entries: ArrayLike,
    which: Union[StochasticType, str],
    tol: Optional[Tolerance] = None,
) -> ValidationReport:
    """Check a grid against one of the stochasticity conditions.

    Example:
        ```python
        import numpy as np
        from cubestoch_api.core import validate_type

        report = validate_type(np.full((2, 2, 2), 0.25), "3-stochastic")
        assert not report
        print(report.describe())  # tube (i,j)=(1,1) sums to 0.5 ...
        ```

    Args:
        entries: The grid to check (nested lists or a numpy array)
        which: The condition, a [StochasticType][cubestoch_api.core.StochasticType]
            or its string value (`"(1,2)"`, `"(2,3)"`, `"(1,3)"`,
            `"3-stochastic"`, `"ns"`, `"simplex"`)
        tol: Tolerance, defaults to `eps=1e-9`

    Returns:
        A report that is truthy iff the grid passes

    Raises:
        ShapeError: If the grid has the wrong order or is not cubical/square
    """
    array = np.asarray(entries, dtype=np.float64)
    return _validate_array(array, StochasticType(which), tol or Tolerance())


def ensure_type(
    entries: ArrayLike,
    which: Union[StochasticType, str],
    tol: Optional[Tolerance] = None,
) -> np.ndarray:
    """Validate a grid and return an admitted, read-only copy.

    Entries in `(-eps, 0)` are clamped to 0 on admission.

    Raises:
        ShapeError: If the grid has the wrong order or shape
        StochasticityError: If the grid fails the check
    """
    tol = tol or Tolerance()
    array = np.array(entries, dtype=np.float64, copy=True)
    report = _validate_array(array, StochasticType(which), tol)
    if not report:
        raise StochasticityError(report)

    array[array < 0] = 0.0
    array.flags.writeable = False
    return array


T = TypeVar("T", bound="StochasticArray")


@dataclass(frozen=True, eq=False)
class StochasticArray:
    """Base of all validated value types.

    Instances compare and hash by identity, use
    [allclose][cubestoch_api.core.StochasticArray.allclose] to compare values.

    Attributes:
        entries: Read-only numpy array of the admitted entries
        tol: Tolerance the value was admitted with
    """

    TYPE = StochasticType.COLUMN

    entries: np.ndarray
    tol: Tolerance = field(default_factory=Tolerance)

    def __post_init__(self):
        object.__setattr__(self, "entries", ensure_type(self.entries, self.TYPE, self.tol))

    @property
    def n(self) -> int:
        """The dimension n."""
        return int(self.entries.shape[0])

    def to_list(self) -> list:
        return self.entries.tolist()

    def allclose(self, other: "StochasticArray", atol: float = 1e-12) -> bool:
        """Entrywise comparison within an absolute tolerance."""
        return type(self) is type(other) and bool(
            self.n == other.n
            and np.allclose(self.entries, other.entries, rtol=0.0, atol=atol)
        )

    def _same_shape(self, other: "StochasticArray") -> None:
        if type(self) is not type(other):
            raise ShapeError(
                f"can not combine {type(self).__name__} with {type(other).__name__}"
            )
        if self.n != other.n:
            raise ShapeError(f"size mismatch: n={self.n} and n={other.n}")

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, entries={self.to_list()!r})"


@dataclass(frozen=True, eq=False, repr=False)
class StochasticMatrix(StochasticArray):
    """An element of NS(n): a nonnegative n x n matrix whose columns sum to
    one. Entry `[i, j]` is the probability of moving from state `j` to
    state `i`."""

    TYPE = StochasticType.COLUMN

    @classmethod
    def identity(cls, n: int, tol: Optional[Tolerance] = None) -> "StochasticMatrix":
        return cls(np.eye(n), tol or Tolerance())

    def __matmul__(self, other: "StochasticMatrix") -> "StochasticMatrix":
        if not isinstance(other, StochasticMatrix):
            return NotImplemented
        self._same_shape(other)
        return StochasticMatrix(self.entries @ other.entries, self.tol)

    def power(self, m: int) -> "StochasticMatrix":
        """The m-step transition matrix, `power(0)` is the identity.

        Raises:
            DomainError: If m is negative
        """
        if m < 0:
            raise DomainError("m", m, "an integer >= 0")
        return StochasticMatrix(np.linalg.matrix_power(self.entries, m), self.tol)

    def apply(self, x: "SimplexVector") -> "SimplexVector":
        """One step of the Markov chain: the distribution `P x`."""
        if x.n != self.n:
            raise ShapeError(f"size mismatch: matrix n={self.n}, vector n={x.n}")
        return SimplexVector(self.entries @ x.entries, self.tol)


@dataclass(frozen=True, eq=False, repr=False)
class CubicStochastic12(StochasticArray):
    """An element of CS(1,2)(n): a nonnegative n x n x n array `p[i, j, k]`
    where every frontal slice `p[:, :, k]` sums to one.

    In the inheritance reading `p[i, j, k]` is the probability that a child
    of type k has father i and mother j.
    """

    TYPE = StochasticType.TYPE_12

    @classmethod
    def uniform(cls, n: int, tol: Optional[Tolerance] = None) -> "CubicStochastic12":
        return cls(np.full((n, n, n), 1.0 / n**2), tol or Tolerance())

    @classmethod
    def right_identity(
        cls, n: int, tol: Optional[Tolerance] = None
    ) -> "CubicStochastic12":
        """The diagonal unit tensor E, `e[i, j, k] = 1` iff `i == j == k`.

        It is a right identity for every weighted multiplication but not a
        left one.
        """
        entries = np.zeros((n, n, n))
        idx = np.arange(n)
        entries[idx, idx, idx] = 1.0
        return cls(entries, tol or Tolerance())

    @classmethod
    def unit(cls, n: int, i: int, j: int, k: int) -> np.ndarray:
        """The cubic matrix unit `(i, j, k)` (0-based) as a plain array.

        A single unit is not stochastic of type (1,2) for n > 1, hence the
        plain array.
        """
        if not all(0 <= h < n for h in (i, j, k)):
            raise ShapeError(f"unit index {(i, j, k)} out of range for n={n}")
        entries = np.zeros((n, n, n))
        entries[i, j, k] = 1.0
        return entries


@dataclass(frozen=True, eq=False, repr=False)
class Cubic3Stochastic(StochasticArray):
    """A nonnegative n x n x n array whose tubes `p[i, j, :]` sum to one, the
    coefficient array of a quadratic stochastic operator."""

    TYPE = StochasticType.THREE

    @classmethod
    def uniform(cls, n: int, tol: Optional[Tolerance] = None) -> "Cubic3Stochastic":
        return cls(np.full((n, n, n), 1.0 / n), tol or Tolerance())


@dataclass(frozen=True, eq=False, repr=False)
class SimplexVector(StochasticArray):
    """A point of the simplex: nonnegative entries summing to one."""

    TYPE = StochasticType.SIMPLEX

    @classmethod
    def vertex(cls, n: int, m: int, tol: Optional[Tolerance] = None) -> "SimplexVector":
        """The vertex `e_m` (0-based)."""
        if not 0 <= m < n:
            raise ShapeError(f"vertex {m} out of range for n={n}")
        entries = np.zeros(n)
        entries[m] = 1.0
        return cls(entries, tol or Tolerance())

    @classmethod
    def uniform(cls, n: int, tol: Optional[Tolerance] = None) -> "SimplexVector":
        return cls(np.full(n, 1.0 / n), tol or Tolerance())


@dataclass(frozen=True)
class Weights:
    """Segregation coefficients `(lambda1, lambda2)` of the weighted
    multiplication: nonnegative and summing to one.

    `lambda1` weighs the paternal (first index) contribution of the right
    factor, `lambda2` the maternal one.

    Attributes:
        lambda1: Weight of the first accompanying matrix
        lambda2: Weight of the second accompanying matrix
        tol: Tolerance for the checks

    Raises:
        DomainError: If a weight is negative or they do not sum to one
    """

    lambda1: float
    lambda2: float
    tol: Tolerance = field(default_factory=Tolerance, compare=False)

    def __post_init__(self):
        for name in ("lambda1", "lambda2"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or not self.tol.nonnegative(value):
                raise DomainError(name, value, "a nonnegative real")
            object.__setattr__(self, name, max(value, 0.0))

        if not self.tol.sums_to_one(self.lambda1 + self.lambda2):
            raise DomainError(
                "lambda1 + lambda2",
                self.lambda1 + self.lambda2,
                f"1 within {self.tol.eps:g}",
            )

    @classmethod
    def dot(cls) -> "Weights":
        return cls(1.0, 0.0)

    @classmethod
    def star(cls) -> "Weights":
        return cls(0.5, 0.5)

    def as_tuple(self) -> Tuple[float, float]:
        return (self.lambda1, self.lambda2)


def convex_combine(a: T, b: T, lam: float) -> T:
    """The convex combination `lam * a + (1 - lam) * b`.

    Works for any of the stochastic value types, the result is admitted
    as the same type (convex sets).

    Args:
        a: First value
        b: Second value of the same type and size
        lam: Weight of `a`, in [0, 1]

    Returns:
        The combination, with the tolerance of `a`

    Raises:
        DomainError: If `lam` is outside [0, 1]
        ShapeError: If types or sizes differ
    """
    if not (math.isfinite(lam) and 0.0 <= lam <= 1.0):
        raise DomainError("lambda", lam, "a real in [0, 1]")
    a._same_shape(b)

    cls: Type[T] = type(a)
    return cls(lam * a.entries + (1.0 - lam) * b.entries, a.tol)
