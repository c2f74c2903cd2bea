"""Quadratic stochastic operators and the permutation action on their
frontal slices."""

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from cubestoch_api.core import Cubic3Stochastic, SimplexVector, Tolerance
from cubestoch_api.error import DomainError, ShapeError


@dataclass(frozen=True)
class Permutation:
    """A permutation of `{0, ..., n - 1}`, stored as its images.

    Attributes:
        mapping: `mapping[k]` is the image of k (0-based)

    Raises:
        DomainError: If `mapping` is not a bijection
    """

    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(k) for k in self.mapping)
        if not mapping or sorted(mapping) != list(range(len(mapping))):
            raise DomainError("permutation", list(mapping), "a bijection of 0..n-1")
        object.__setattr__(self, "mapping", mapping)

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, k: int) -> int:
        return self.mapping[k]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> "Permutation":
        """Build from 1-based images, e.g. `[2, 3, 1]` sends 1 to 2."""
        return cls(tuple(int(k) - 1 for k in images))

    def to_one_based(self) -> Tuple[int, ...]:
        return tuple(k + 1 for k in self.mapping)

    def inverse(self) -> "Permutation":
        inverse = [0] * self.n
        for k, image in enumerate(self.mapping):
            inverse[image] = k
        return Permutation(tuple(inverse))

    def compose(self, other: "Permutation") -> "Permutation":
        """`self o other`, i.e. `k -> self(other(k))`."""
        if other.n != self.n:
            raise ShapeError(f"size mismatch: n={self.n} and n={other.n}")
        return Permutation(tuple(self.mapping[k] for k in other.mapping))


def is_qso_symmetric(p: Cubic3Stochastic, tol: Optional[Tolerance] = None) -> bool:
    """Whether `p[i, j, k] == p[j, i, k]` within tolerance (parental order
    does not matter)."""
    eps = (tol or p.tol).eps
    return bool(np.max(np.abs(p.entries - np.swapaxes(p.entries, 0, 1))) <= eps)


def apply_qso(
    p: Cubic3Stochastic, x: SimplexVector, require_symmetric: bool = False
) -> SimplexVector:
    """The quadratic stochastic operator `V(x)_k = sum_ij p[i, j, k] x_i x_j`.

    Args:
        p: Coefficients, 3-stochastic
        x: Point of the simplex
        require_symmetric: Reject coefficients with `p[i, j, k] != p[j, i, k]`

    Returns:
        The image, again on the simplex

    Raises:
        ShapeError: If the sizes differ
        DomainError: If `require_symmetric` is set and `p` is not symmetric
    """
    if p.n != x.n:
        raise ShapeError(f"size mismatch: coefficients n={p.n}, vector n={x.n}")
    if require_symmetric and not is_qso_symmetric(p):
        raise DomainError("coefficients", "asymmetric", "p_ijk = p_jik for all i, j, k")
    return SimplexVector(np.einsum("ijk,i,j->k", p.entries, x.entries, x.entries), x.tol)


def permute_frontal(sigma: Permutation, p: Cubic3Stochastic) -> Cubic3Stochastic:
    """Reorder frontal slices, `(sigma P)[i, j, k] = p[i, j, sigma(k)]`.

    This is a right action:
    `permute_frontal(s, permute_frontal(t, p)) == permute_frontal(t.compose(s), p)`.

    Raises:
        ShapeError: If the sizes differ
    """
    if sigma.n != p.n:
        raise ShapeError(f"size mismatch: permutation n={sigma.n}, cubic matrix n={p.n}")
    return Cubic3Stochastic(p.entries[:, :, list(sigma.mapping)], p.tol)
