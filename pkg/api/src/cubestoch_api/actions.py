"""Actions of the semigroup NS(n) of column stochastic matrices on CS(1,2)(n).

`act(A, P, FIRST)` mixes the paternal (first) index,
`(A (*)1 P)[i, s, t] = sum_r a[i, r] p[r, s, t]`, and `act(A, P, SECOND)`
mixes the maternal (second) index,
`(A (*)2 P)[r, i, t] = sum_s a[i, s] p[r, s, t]`. Both are computed slice
by slice: frontal slice k of the result is `A @ P[:, :, k]` for the first
side and `P[:, :, k] @ A.T` for the second side.
"""

from enum import Enum
from typing import Tuple, Union

import numpy as np

from cubestoch_api.core import CubicStochastic12, StochasticMatrix
from cubestoch_api.decomp import SliceAxis, SliceFamily, marginals
from cubestoch_api.error import DomainError, ShapeError
from cubestoch_api.markov import BivariateModel, MixingLike, build_bivariate


class ActionSide(Enum):
    """Index an action works on.

    Attributes:
        FIRST: The paternal (first) index
        SECOND: The maternal (second) index
    """

    FIRST = 1
    SECOND = 2

    def __str__(self) -> str:
        return str(self.value)

    @classmethod
    def parse(cls, value: Union["ActionSide", int, str]) -> "ActionSide":
        if isinstance(value, ActionSide):
            return value
        try:
            return cls(int(value))
        except ValueError:
            raise DomainError("side", value, "1 (first) or 2 (second)") from None


class ChainVariant(Enum):
    """Which bivariate chain a mutation induces.

    Attributes:
        Q1: `diag(A, I) Q`, the first-side action
        Q2: `diag(I, A) Q`, the second-side action
        Q3: `diag(A, A) Q`, both actions at once
    """

    Q1 = "q1"
    Q2 = "q2"
    Q3 = "q3"

    def __str__(self) -> str:
        return self.value


def _check_sizes(a: StochasticMatrix, p: CubicStochastic12) -> None:
    if a.n != p.n:
        raise ShapeError(f"size mismatch: matrix n={a.n}, cubic matrix n={p.n}")


def act_on_slices(
    a: StochasticMatrix, p: CubicStochastic12, side: Union[ActionSide, int, str]
) -> SliceFamily:
    """The frontal slices of `act(a, p, side)`, computed from the frontal
    slices of `p` by matrix products only.

    Slice k is `A P_::k` for the first side. For the second side it is
    `P_::k A^T`, whose transpose is `A (P_::k)^T`.

    Raises:
        ShapeError: If the sizes differ
    """
    _check_sizes(a, p)
    side = ActionSide.parse(side)
    mat = a.entries
    if side is ActionSide.FIRST:
        acted = tuple(mat @ p.entries[:, :, k] for k in range(p.n))
    else:
        acted = tuple(p.entries[:, :, k] @ mat.T for k in range(p.n))
    return SliceFamily(SliceAxis.FRONTAL, acted)


def act(
    a: StochasticMatrix, p: CubicStochastic12, side: Union[ActionSide, int, str]
) -> CubicStochastic12:
    """Act with a column stochastic matrix on one index of a cubic matrix.

    Example:
        ```python
        from cubestoch_api.actions import ActionSide, act
        from cubestoch_api.core import CubicStochastic12, StochasticMatrix

        mutation = StochasticMatrix([[0.9, 0.3], [0.1, 0.7]])
        p = CubicStochastic12.uniform(2)
        mutated = act(mutation, p, ActionSide.FIRST)  # (1)
        ```

        1. Only the paternal marginal changes, the maternal one stays put.

    Args:
        a: The acting matrix
        p: The cubic matrix
        side: [ActionSide][cubestoch_api.actions.ActionSide] or 1/2

    Returns:
        The acted cubic matrix, admitted with the tolerance of `p`

    Raises:
        ShapeError: If the sizes differ
    """
    family = act_on_slices(a, p, side)
    return CubicStochastic12(np.stack(family.slices, axis=2), p.tol)


def act_both(a: StochasticMatrix, p: CubicStochastic12) -> CubicStochastic12:
    """Act with `a` on both parental indices (the two actions commute)."""
    return act(a, act(a, p, ActionSide.FIRST), ActionSide.SECOND)


def act_on_marginals(
    a: StochasticMatrix, p: CubicStochastic12, side: Union[ActionSide, int, str]
) -> Tuple[StochasticMatrix, StochasticMatrix]:
    """The accompanying matrices of `act(a, p, side)` without forming it.

    The first side yields `(A P1, P2)`, the second side `(P1, A P2)`.

    Raises:
        ShapeError: If the sizes differ
    """
    _check_sizes(a, p)
    side = ActionSide.parse(side)
    first, second = marginals(p)
    if side is ActionSide.FIRST:
        return a @ first, second
    return first, a @ second


def revert_action(
    a: StochasticMatrix,
    a_inverse: StochasticMatrix,
    p: CubicStochastic12,
    side: Union[ActionSide, int, str],
) -> CubicStochastic12:
    """Undo `act(a, ., side)` on `p` with a caller supplied inverse.

    NS(n) elements may be singular, so there is no general inverse action;
    only a matrix that is itself stochastic and satisfies
    `a_inverse @ a == I` (within tolerance) is accepted.

    Raises:
        DomainError: If `a_inverse @ a` is not the identity within `p.tol`
        ShapeError: If the sizes differ
    """
    _check_sizes(a, p)
    _check_sizes(a_inverse, p)
    defect = float(np.max(np.abs(a_inverse.entries @ a.entries - np.eye(a.n))))
    if defect > p.tol.eps:
        raise DomainError(
            "max |A_inv A - I|", defect, f"at most {p.tol.eps:g} (a left inverse of A)"
        )
    return act(a_inverse, p, side)


def induced_chain(
    a: StochasticMatrix,
    p: CubicStochastic12,
    mixing: MixingLike,
    which: Union[ChainVariant, str],
) -> BivariateModel:
    """The bivariate Markov model of the mutated cubic matrix.

    Q1, Q2 and Q3 are the models of `act(a, p, 1)`, `act(a, p, 2)` and
    `act_both(a, p)`; their blocks equal `M P1` (first block row) and `N P2`
    (second block row) with `(M, N)` being `(A, I)`, `(I, A)` and `(A, A)`.

    Args:
        a: The mutation matrix
        p: The cubic matrix
        mixing: 2 x 2 mixing weights, nonnegative with unit row sums
        which: Q1, Q2 or Q3

    Raises:
        DomainError: If the mixing weights are invalid
        ShapeError: If the sizes differ
    """
    _check_sizes(a, p)
    which = ChainVariant(which)
    if which is ChainVariant.Q1:
        mutated = act(a, p, ActionSide.FIRST)
    elif which is ChainVariant.Q2:
        mutated = act(a, p, ActionSide.SECOND)
    else:
        mutated = act_both(a, p)
    return build_bivariate(mutated, mixing)
