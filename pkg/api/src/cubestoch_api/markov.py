"""Multivariate (block) Markov models.

A model over s sequences with n states each is a grid of s x s column
stochastic blocks `P^(jk)` and mixing weights `lambda_jk` (nonnegative,
unit row sums). One step maps the stacked state `X = (X^(1), ..., X^(s))`
to `X'^(j) = sum_k lambda_jk P^(jk) X^(k)`. The assembled sn x sn matrix
need not be column stochastic, but every part of the stepped state stays on
the simplex.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from cubestoch_api.core import (
    ArrayLike,
    CubicStochastic12,
    SimplexVector,
    StochasticMatrix,
    Tolerance,
)
from cubestoch_api.decomp import marginals
from cubestoch_api.error import DomainError, ShapeError

DEFAULT_MAX_STEPS = 10_000
DEFAULT_ITERATE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class MixingWeights:
    """s x s mixing weights, `lambda_jk >= 0` and `sum_k lambda_jk = 1`.

    Attributes:
        entries: Read-only s x s array
        tol: Tolerance for the checks

    Raises:
        DomainError: If a weight is negative or a row does not sum to one
        ShapeError: If the array is not square
    """

    entries: np.ndarray
    tol: Tolerance = field(default_factory=Tolerance)

    def __post_init__(self):
        array = np.array(self.entries, dtype=np.float64, copy=True)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
            raise ShapeError(f"mixing weights must be s x s, got shape {array.shape}")
        if not np.isfinite(array).all():
            raise DomainError("mixing weights", array.tolist(), "finite reals")

        negative = np.argwhere(array < -self.tol.eps)
        if negative.size:
            j, k = (int(i) for i in negative[0])
            raise DomainError(f"lambda_{j + 1}{k + 1}", float(array[j, k]), "a nonnegative real")

        for j, total in enumerate(array.sum(axis=1)):
            if not self.tol.sums_to_one(float(total)):
                raise DomainError(
                    f"row {j + 1} sum of the mixing weights",
                    float(total),
                    f"1 within {self.tol.eps:g}",
                )

        array[array < 0] = 0.0
        array.flags.writeable = False
        object.__setattr__(self, "entries", array)

    @property
    def s(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def from_flat(cls, values: Sequence[float], tol: Optional[Tolerance] = None) -> "MixingWeights":
        """Row-major flat weights, e.g. `l11 l12 l21 l22`."""
        s = math.isqrt(len(values))
        if s * s != len(values) or s < 1:
            raise ShapeError(f"{len(values)} mixing weights do not form a square grid")
        return cls(np.asarray(values, dtype=np.float64).reshape(s, s), tol or Tolerance())


MixingLike = Union[MixingWeights, ArrayLike]


def _as_mixing(mixing: MixingLike, tol: Tolerance) -> MixingWeights:
    if isinstance(mixing, MixingWeights):
        return mixing
    return MixingWeights(np.asarray(mixing, dtype=np.float64), tol)


@dataclass(frozen=True, eq=False)
class StackedState:
    """The stacked distribution `(X^(1), ..., X^(s))`, each part on the
    simplex on its own.

    Attributes:
        parts: The s parts
    """

    parts: Tuple[SimplexVector, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ShapeError("a stacked state needs at least one part")
        if len({x.n for x in parts}) != 1:
            raise ShapeError(f"parts have mixed sizes {[x.n for x in parts]}")
        object.__setattr__(self, "parts", parts)

    @property
    def s(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return self.parts[0].n

    def flat(self) -> np.ndarray:
        return np.concatenate([x.entries for x in self.parts])

    @classmethod
    def from_flat(
        cls, values: ArrayLike, s: int, tol: Optional[Tolerance] = None
    ) -> "StackedState":
        array = np.asarray(values, dtype=np.float64)
        if array.ndim != 1 or s < 1 or array.shape[0] % s:
            raise ShapeError(f"can not split {array.shape} into {s} equal parts")
        return cls(tuple(SimplexVector(part, tol or Tolerance()) for part in np.split(array, s)))

    @classmethod
    def of(cls, *parts: ArrayLike, tol: Optional[Tolerance] = None) -> "StackedState":
        return cls(
            tuple(
                p if isinstance(p, SimplexVector) else SimplexVector(p, tol or Tolerance())
                for p in parts
            )
        )

    def distance(self, other: "StackedState") -> float:
        """L1 distance of the stacked vectors."""
        return float(np.abs(self.flat() - other.flat()).sum())

    def allclose(self, other: "StackedState", atol: float = 1e-12) -> bool:
        return self.s == other.s and all(a.allclose(b, atol) for a, b in zip(self.parts, other.parts))


@dataclass(frozen=True, eq=False)
class BlockModel:
    """A multivariate Markov model.

    Attributes:
        blocks: s x s grid of column stochastic blocks, `blocks[j][k]` is
            `P^(jk)` (0-based)
        weights: The mixing weights
    """

    blocks: Tuple[Tuple[StochasticMatrix, ...], ...]
    weights: MixingWeights

    def __post_init__(self):
        blocks = tuple(tuple(row) for row in self.blocks)
        s = self.weights.s
        if len(blocks) != s or any(len(row) != s for row in blocks):
            raise ShapeError(f"expected a {s} x {s} grid of blocks")
        sizes = {b.n for row in blocks for b in row}
        if len(sizes) != 1:
            raise ShapeError(f"blocks have mixed dimensions {sorted(sizes)}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def s(self) -> int:
        return self.weights.s

    @property
    def n(self) -> int:
        return self.blocks[0][0].n

    @property
    def assembled(self) -> np.ndarray:
        """The sn x sn matrix with block (j, k) equal to `lambda_jk P^(jk)`."""
        lam = self.weights.entries
        return np.block(
            [[lam[j, k] * self.blocks[j][k].entries for k in range(self.s)] for j in range(self.s)]
        )


@dataclass(frozen=True, eq=False)
class BivariateModel(BlockModel):
    """A block model with s = 2, as built from the accompanying matrices of
    a cubic matrix."""

    def __post_init__(self):
        super().__post_init__()
        if self.s != 2:
            raise ShapeError(f"a bivariate model has 2 x 2 blocks, got s={self.s}")


def build_bivariate(p: CubicStochastic12, mixing: MixingLike) -> BivariateModel:
    """The bivariate model of a cubic matrix: `P^(11) = P^(12) = P1` and
    `P^(21) = P^(22) = P2`.

    Args:
        p: The cubic matrix
        mixing: 2 x 2 mixing weights

    Raises:
        DomainError: If the mixing weights are invalid
        ShapeError: If the mixing weights are not 2 x 2
    """
    weights = _as_mixing(mixing, p.tol)
    first, second = marginals(p)
    return BivariateModel(((first, first), (second, second)), weights)


def build_general(
    blocks: Sequence[Sequence[StochasticMatrix]], mixing: MixingLike
) -> BlockModel:
    """A block model from an explicit s x s grid of blocks.

    Raises:
        DomainError: If the mixing weights are invalid
        ShapeError: If the grid is not s x s or the blocks have mixed sizes
    """
    tol = blocks[0][0].tol if blocks and blocks[0] else Tolerance()
    weights = _as_mixing(mixing, tol)
    grid = tuple(tuple(row) for row in blocks)
    if weights.s == 2:
        return BivariateModel(grid, weights)
    return BlockModel(grid, weights)


def premultiply_blocks(
    diagonal: Sequence[StochasticMatrix], model: BlockModel
) -> BlockModel:
    """`diag(D_1, ..., D_s) Q`: block row j gets multiplied by `D_j`.

    Raises:
        ShapeError: If there are not s diagonal blocks of size n
    """
    if len(diagonal) != model.s:
        raise ShapeError(f"expected {model.s} diagonal blocks, got {len(diagonal)}")
    grid = tuple(
        tuple(diagonal[j] @ model.blocks[j][k] for k in range(model.s)) for j in range(model.s)
    )
    return type(model)(grid, model.weights)


def step(model: BlockModel, state: StackedState) -> StackedState:
    """One step `X_{t+1} = Q X_t`.

    Raises:
        ShapeError: If the model and the state do not fit together
    """
    if model.s != state.s or model.n != state.n:
        raise ShapeError(
            f"model has s={model.s}, n={model.n} but state has s={state.s}, n={state.n}"
        )
    return StackedState.from_flat(model.assembled @ state.flat(), model.s, state.parts[0].tol)


@dataclass(frozen=True)
class IterationResult:
    """Outcome of [iterate][cubestoch_api.markov.iterate].

    Attributes:
        state: The last state computed
        steps: Number of steps performed
        converged: Whether the last L1 step distance got below the tolerance
        distance: The last L1 step distance
    """

    state: StackedState
    steps: int
    converged: bool
    distance: float


def iterate(
    model: BlockModel,
    initial: StackedState,
    max_steps: int = DEFAULT_MAX_STEPS,
    tol: float = DEFAULT_ITERATE_TOL,
) -> IterationResult:
    """Step until the L1 distance of successive stacked states is at most
    `tol`, or `max_steps` steps were done. Non-convergence is reported, not
    raised.

    Raises:
        DomainError: If `max_steps < 1` or `tol <= 0`
    """
    if max_steps < 1:
        raise DomainError("max_steps", max_steps, "an integer >= 1")
    if not (tol > 0 and math.isfinite(tol)):
        raise DomainError("tol", tol, "a positive real")

    state = initial
    distance = math.inf
    for steps in range(1, max_steps + 1):
        following = step(model, state)
        distance = following.distance(state)
        state = following
        if distance <= tol:
            return IterationResult(state, steps, True, distance)

    return IterationResult(state, max_steps, False, distance)


def chain_step(p: StochasticMatrix, x: SimplexVector) -> SimplexVector:
    """One step of a single Markov chain, `P x`."""
    return p.apply(x)


def chain_distribution(p: StochasticMatrix, x: SimplexVector, t: int) -> SimplexVector:
    """The distribution after t steps, `P^t x`."""
    return p.power(t).apply(x)
