"""Slices, fibers, frontal matricization and accompanying matrices of cubic
matrices.

Indices passed to [slice][cubestoch_api.decomp.slice] and
[fiber][cubestoch_api.decomp.fiber] are 1-based, like the usual `P_{::h}` notation.
Everything returned is a fresh copy.
"""

import functools
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Tuple, Union

import numpy as np

from cubestoch_api.core import (
    ArrayLike,
    Cubic3Stochastic,
    CubicStochastic12,
    StochasticArray,
    StochasticMatrix,
)
from cubestoch_api.error import ShapeError

CubicLike = Union[StochasticArray, ArrayLike]


class SliceAxis(Enum):
    """Which index is fixed to form a slice.

    Attributes:
        HORIZONTAL: First index fixed, `P[h, :, :]`
        LATERAL: Second index fixed, `P[:, h, :]`
        FRONTAL: Third index fixed, `P[:, :, h]`
    """

    HORIZONTAL = "horizontal"
    LATERAL = "lateral"
    FRONTAL = "frontal"

    def __str__(self) -> str:
        return self.value


class FiberAxis(Enum):
    """Which index runs free along a fiber.

    Attributes:
        COLUMN: `P[:, j, k]`
        ROW: `P[i, :, k]`
        TUBE: `P[i, j, :]`
    """

    COLUMN = "column"
    ROW = "row"
    TUBE = "tube"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SliceFamily:
    """All n slices of a cubic matrix along one axis.

    Attributes:
        axis: The fixed index
        slices: The slices, `slices[h - 1]` is the slice with fixed index h
    """

    axis: SliceAxis
    slices: Tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return len(self.slices)

    def __getitem__(self, h: int) -> np.ndarray:
        return self.slices[h]

    def masses(self) -> List[float]:
        """Total entry sum of every slice."""
        return [float(s.sum()) for s in self.slices]


@dataclass(frozen=True)
class FiberFamily:
    """All n^2 fibers of a cubic matrix along one axis.

    Attributes:
        axis: The free index
        fibers: Mapping from the 1-based pair of fixed indices to the fiber
    """

    axis: FiberAxis
    fibers: Dict[Tuple[int, int], np.ndarray]

    def sums(self) -> Dict[Tuple[int, int], float]:
        return {key: float(f.sum()) for key, f in self.fibers.items()}


def _as_cubic(p: CubicLike) -> np.ndarray:
    array = p.entries if isinstance(p, StochasticArray) else np.asarray(p, dtype=np.float64)
    if array.ndim != 3 or len(set(array.shape)) != 1:
        raise ShapeError(f"expected a cubic n x n x n array, got shape {array.shape}")
    return array


def _check_index(h: int, n: int) -> None:
    if not 1 <= h <= n:
        raise ShapeError(f"index {h} out of range 1..{n}")


def slice(p: CubicLike, axis: Union[SliceAxis, str], h: int) -> np.ndarray:
    """A single slice of a cubic matrix.

    Args:
        p: Cubic matrix (any of the cubic types or a plain array)
        axis: Which index to fix
        h: The 1-based value of the fixed index

    Returns:
        frontal: `(p_ijh)_{i,j}`; horizontal: `(p_hjk)_{j,k}`;
        lateral: `(p_ihk)_{i,k}`

    Raises:
        ShapeError: If `p` is not cubic or `h` is out of range
    """
    array = _as_cubic(p)
    _check_index(h, array.shape[0])
    axis = SliceAxis(axis)
    if axis is SliceAxis.HORIZONTAL:
        return array[h - 1, :, :].copy()
    if axis is SliceAxis.LATERAL:
        return array[:, h - 1, :].copy()
    return array[:, :, h - 1].copy()


def slices(p: CubicLike, axis: Union[SliceAxis, str]) -> SliceFamily:
    """Every slice of `p` along `axis`."""
    array = _as_cubic(p)
    axis = SliceAxis(axis)
    return SliceFamily(
        axis, tuple(slice(array, axis, h) for h in range(1, array.shape[0] + 1))
    )


def fiber(p: CubicLike, axis: Union[FiberAxis, str], first: int, second: int) -> np.ndarray:
    """A single fiber of a cubic matrix.

    Args:
        p: Cubic matrix
        axis: Which index runs free
        first: 1-based value of the first fixed index (j for columns, i
            for rows and tubes)
        second: 1-based value of the second fixed index (k for columns and
            rows, j for tubes)

    Returns:
        column: `P[:, j, k]`; row: `P[i, :, k]`; tube: `P[i, j, :]`

    Raises:
        ShapeError: If `p` is not cubic or an index is out of range
    """
    array = _as_cubic(p)
    n = array.shape[0]
    _check_index(first, n)
    _check_index(second, n)
    axis = FiberAxis(axis)
    if axis is FiberAxis.COLUMN:
        return array[:, first - 1, second - 1].copy()
    if axis is FiberAxis.ROW:
        return array[first - 1, :, second - 1].copy()
    return array[first - 1, second - 1, :].copy()


def fibers(p: CubicLike, axis: Union[FiberAxis, str]) -> FiberFamily:
    """Every fiber of `p` along `axis`, keyed by the 1-based fixed pair."""
    array = _as_cubic(p)
    n = array.shape[0]
    axis = FiberAxis(axis)
    return FiberFamily(
        axis,
        {
            (a, b): fiber(array, axis, a, b)
            for a in range(1, n + 1)
            for b in range(1, n + 1)
        },
    )


def matricize_frontal(p: CubicLike) -> np.ndarray:
    """Unfold a cubic matrix into the n x n^2 matrix
    `(P_{::1} | P_{::2} | ... | P_{::n})`.

    Columns `(k - 1) * n + 1 .. k * n` (1-based) hold frontal slice k. This
    layout is also the CSV interchange format.
    """
    array = _as_cubic(p)
    n = array.shape[0]
    # (i, j, k) -> (i, k, j) -> rows i, columns k*n + j
    return np.ascontiguousarray(array.transpose(0, 2, 1)).reshape(n, n * n).copy()


def dematricize_frontal(matrix: ArrayLike) -> np.ndarray:
    """Inverse of [matricize_frontal][cubestoch_api.decomp.matricize_frontal].

    Raises:
        ShapeError: If `matrix` is not n x n^2
    """
    array = np.asarray(matrix, dtype=np.float64)
    if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] != array.shape[0] ** 2:
        raise ShapeError(f"expected an n x n^2 matrix, got shape {array.shape}")
    n = array.shape[0]
    return array.reshape(n, n, n).transpose(0, 2, 1).copy()


@functools.lru_cache(maxsize=256)
def _accompanying(p: CubicStochastic12, summed_axis: int) -> StochasticMatrix:
    return StochasticMatrix(p.entries.sum(axis=summed_axis), p.tol)


def accompanying_first(p: CubicStochastic12) -> StochasticMatrix:
    """The first accompanying matrix (father marginal) `P1[i, k] = sum_j p[i, j, k]`.

    Example:
        ```python
        from cubestoch_api.core import CubicStochastic12
        from cubestoch_api.decomp import accompanying_first

        p = CubicStochastic12([
            [[0.5, 0.25], [0.1, 0.25]],
            [[0.2, 0.25], [0.2, 0.25]],
        ])
        accompanying_first(p).entries  # [[0.6, 0.5], [0.4, 0.5]]
        ```

    Results are cached per tensor instance, tensors never change so the
    cache can not go stale.
    """
    return _accompanying(p, 1)


def accompanying_second(p: CubicStochastic12) -> StochasticMatrix:
    """The second accompanying matrix (mother marginal) `P2[j, k] = sum_i p[i, j, k]`."""
    return _accompanying(p, 0)


def marginals(p: CubicStochastic12) -> Tuple[StochasticMatrix, StochasticMatrix]:
    """Both accompanying matrices `(P1, P2)`."""
    return accompanying_first(p), accompanying_second(p)


def tube_sums(p: Union[CubicStochastic12, Cubic3Stochastic]) -> np.ndarray:
    """The n x n matrix of tube sums `sum_k p[i, j, k]`."""
    return _as_cubic(p).sum(axis=2)
