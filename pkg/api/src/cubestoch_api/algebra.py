"""Multiplication rules on CS(1,2)(n).

All rules are instances of the weighted product

    (A *_(l1, l2) B)[i, j, k] = sum_r a[i, j, r] * (l1 * B1[r, k] + l2 * B2[r, k])

where B1, B2 are the accompanying matrices of the right factor. The
dot product is the weighting `(1, 0)` and the star product the weighting
`(1/2, 1/2)`; both are routed through
[weighted_mul][cubestoch_api.algebra.weighted_mul] so they share one code
path.
"""

from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from cubestoch_api.core import (
    CubicStochastic12,
    Tolerance,
    Weights,
    convex_combine,
)
from cubestoch_api.decomp import accompanying_first, accompanying_second
from cubestoch_api.error import DomainError, ShapeError


@dataclass(frozen=True)
class MulRule:
    """A multiplication rule, always expressed through its segregation
    weights.

    Attributes:
        name: `"dot"`, `"star"` or `"weighted"`
        weights: The segregation coefficients of the rule
    """

    name: str
    weights: Weights

    def __post_init__(self):
        named = {"dot": Weights.dot(), "star": Weights.star()}
        if self.name == "weighted":
            return
        if self.name not in named:
            raise DomainError("name", self.name, "`dot`, `star` or `weighted`")
        if self.weights.as_tuple() != named[self.name].as_tuple():
            raise DomainError(
                "weights", self.weights.as_tuple(), f"{named[self.name].as_tuple()} for `{self.name}`"
            )

    @classmethod
    def dot(cls) -> "MulRule":
        """The dot multiplication, `Weighted(1, 0)`."""
        return cls("dot", Weights.dot())

    @classmethod
    def star(cls) -> "MulRule":
        """The equally weighted multiplication, `Weighted(1/2, 1/2)`."""
        return cls("star", Weights.star())

    @classmethod
    def weighted(
        cls, lambda1: float, lambda2: float, tol: Optional[Tolerance] = None
    ) -> "MulRule":
        return cls("weighted", Weights(lambda1, lambda2, tol or Tolerance()))

    def __str__(self) -> str:
        if self.name == "weighted":
            return f"weighted({self.weights.lambda1!r}, {self.weights.lambda2!r})"
        return self.name


def _check_sizes(a: CubicStochastic12, b: CubicStochastic12) -> None:
    if a.n != b.n:
        raise ShapeError(f"size mismatch: n={a.n} and n={b.n}")


def weighted_mul(
    a: CubicStochastic12, b: CubicStochastic12, w: Weights
) -> CubicStochastic12:
    """The weighted product `a *_(l1, l2) b`.

    The accompanying-matrix columns of `b` are formed once, which makes the
    product a single contraction over the last index of `a`.

    Args:
        a: Left factor
        b: Right factor
        w: Segregation coefficients

    Returns:
        The product, admitted with the tolerance of `a`

    Raises:
        ShapeError: If the sizes differ
    """
    _check_sizes(a, b)
    mixed = w.lambda1 * accompanying_first(b).entries + w.lambda2 * accompanying_second(
        b
    ).entries
    return CubicStochastic12(a.entries @ mixed, a.tol)


def dot_mul(a: CubicStochastic12, b: CubicStochastic12) -> CubicStochastic12:
    """The dot product, `(a . b)[i, j, s] = sum_k a[i, j, k] * b[k, +, s]`."""
    return weighted_mul(a, b, Weights.dot())


def star_mul(a: CubicStochastic12, b: CubicStochastic12) -> CubicStochastic12:
    """The equally weighted product,
    `(a * b)[i, j, k] = 1/2 sum_r a[i, j, r] * (b[r, +, k] + b[+, r, k])`.

    The diagonal unit tensor is a right (not a left) identity for it.
    """
    return weighted_mul(a, b, Weights.star())


def multiply(a: CubicStochastic12, b: CubicStochastic12, rule: MulRule) -> CubicStochastic12:
    return weighted_mul(a, b, rule.weights)


def transpose12(p: CubicStochastic12) -> CubicStochastic12:
    """The (1,2)-transpose, `q[i, j, k] = p[j, i, k]`."""
    return CubicStochastic12(np.swapaxes(p.entries, 0, 1), p.tol)


def is_symmetric12(p: CubicStochastic12, tol: Optional[Tolerance] = None) -> bool:
    """Whether `max |p[i, j, k] - p[j, i, k]| <= eps`.

    Args:
        p: The cubic matrix
        tol: Tolerance, defaults to the one `p` was admitted with
    """
    eps = (tol or p.tol).eps
    return bool(np.max(np.abs(p.entries - np.swapaxes(p.entries, 0, 1))) <= eps)


def symmetrize12(p: CubicStochastic12) -> CubicStochastic12:
    """The (1,2)-symmetric part `1/2 (p + p^T(1,2))`."""
    return convex_combine(p, transpose12(p), 0.5)


def power(
    p: CubicStochastic12,
    m: int,
    rule: MulRule,
    method: Literal["iterated", "squaring"] = "iterated",
) -> CubicStochastic12:
    """The m-th power of `p` under `rule`.

    The default method multiplies from the left m - 1 times,
    `((p p) p) ... p`. `method="squaring"` uses binary exponentiation, which
    relies on associativity of the rule.

    Args:
        p: The cubic matrix
        m: Exponent, at least 1 (the rules have no two-sided identity)
        rule: Multiplication rule
        method: `"iterated"` or `"squaring"`

    Raises:
        DomainError: If `m < 1` or the method is unknown
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError("m", m, "an integer >= 1")

    if method == "iterated":
        result = p
        for _ in range(m - 1):
            result = multiply(result, p, rule)
        return result

    if method == "squaring":
        result: Optional[CubicStochastic12] = None
        base = p
        exponent = int(m)
        while exponent:
            if exponent & 1:
                result = base if result is None else multiply(result, base, rule)
            exponent >>= 1
            if exponent:
                base = multiply(base, base, rule)
        assert result is not None
        return result

    raise DomainError("method", method, "'iterated' or 'squaring'")
