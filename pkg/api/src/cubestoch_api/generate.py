"""Seeded random instances of every value type.

All functions take a `numpy.random.Generator`, so a seed reproduces an
instance exactly. Probability vectors are Dirichlet(1, ..., 1) draws, i.e.
uniform on the simplex; `sparsity` zeroes out a share of the entries first
so that boundary cases get exercised as well.
"""

from typing import Optional

import numpy as np

from cubestoch_api.algebra import symmetrize12
from cubestoch_api.core import (
    Cubic3Stochastic,
    CubicStochastic12,
    SimplexVector,
    StochasticMatrix,
    Tolerance,
    Weights,
)
from cubestoch_api.markov import MixingWeights, StackedState
from cubestoch_api.qso import Permutation


def _distributions(
    rng: np.random.Generator, size: int, count: int, sparsity: float
) -> np.ndarray:
    """`count` probability vectors of length `size`, one per row."""
    draws = rng.dirichlet(np.ones(size), size=count)
    if sparsity > 0 and size > 1:
        mask = rng.random(draws.shape) < sparsity
        # keep at least one entry per row alive
        mask[np.arange(count), rng.integers(0, size, count)] = False
        draws = np.where(mask, 0.0, draws)
        draws = draws / draws.sum(axis=1, keepdims=True)
    return draws


def random_stochastic_matrix(
    rng: np.random.Generator,
    n: int,
    sparsity: float = 0.0,
    tol: Optional[Tolerance] = None,
) -> StochasticMatrix:
    return StochasticMatrix(_distributions(rng, n, n, sparsity).T, tol or Tolerance())


def random_cubic12(
    rng: np.random.Generator,
    n: int,
    sparsity: float = 0.0,
    tol: Optional[Tolerance] = None,
) -> CubicStochastic12:
    # one distribution over the n^2 pairs (i, j) per frontal slice k
    slices = _distributions(rng, n * n, n, sparsity).reshape(n, n, n)
    return CubicStochastic12(np.moveaxis(slices, 0, 2), tol or Tolerance())


def random_symmetric12(
    rng: np.random.Generator,
    n: int,
    sparsity: float = 0.0,
    tol: Optional[Tolerance] = None,
) -> CubicStochastic12:
    return symmetrize12(random_cubic12(rng, n, sparsity, tol))


def random_cubic3(
    rng: np.random.Generator,
    n: int,
    sparsity: float = 0.0,
    tol: Optional[Tolerance] = None,
) -> Cubic3Stochastic:
    tubes = _distributions(rng, n, n * n, sparsity).reshape(n, n, n)
    return Cubic3Stochastic(tubes, tol or Tolerance())


def random_simplex(
    rng: np.random.Generator,
    n: int,
    sparsity: float = 0.0,
    tol: Optional[Tolerance] = None,
) -> SimplexVector:
    return SimplexVector(_distributions(rng, n, 1, sparsity)[0], tol or Tolerance())


def random_state(
    rng: np.random.Generator, n: int, s: int = 2, tol: Optional[Tolerance] = None
) -> StackedState:
    return StackedState(tuple(random_simplex(rng, n, tol=tol) for _ in range(s)))


def random_weights(rng: np.random.Generator) -> Weights:
    lambda1 = float(rng.random())
    return Weights(lambda1, 1.0 - lambda1)


def random_mixing(rng: np.random.Generator, s: int = 2) -> MixingWeights:
    return MixingWeights(_distributions(rng, s, s, 0.0))


def random_permutation(rng: np.random.Generator, n: int) -> Permutation:
    return Permutation(tuple(int(k) for k in rng.permutation(n)))
