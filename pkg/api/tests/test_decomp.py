import numpy as np
import pytest
from hypothesis import given
from numpy.testing import assert_allclose, assert_array_equal

from cubestoch_api.algebra import transpose12
from cubestoch_api.core import CubicStochastic12, validate_type
from cubestoch_api.decomp import (
    FiberAxis,
    SliceAxis,
    accompanying_first,
    accompanying_second,
    dematricize_frontal,
    fiber,
    fibers,
    marginals,
    matricize_frontal,
    slice,
    slices,
    tube_sums,
)
from cubestoch_api.error import ShapeError
from oracles import marginals_naive
from strategies import cubics, small_dims, symmetric_cubics


def test_worked_marginals(worked_p: CubicStochastic12):
    first, second = marginals(worked_p)

    assert_allclose(first.entries, [[0.6, 0.5], [0.4, 0.5]], rtol=0, atol=1e-15)
    assert_allclose(second.entries, [[0.7, 0.5], [0.3, 0.5]], rtol=0, atol=1e-15)


@given(cubics(small_dims))
def test_marginals_match_sums(p: CubicStochastic12):
    first, second = marginals_naive(p.entries)

    assert_allclose(accompanying_first(p).entries, first, rtol=0, atol=1e-14)
    assert_allclose(accompanying_second(p).entries, second, rtol=0, atol=1e-14)
    assert validate_type(first, "ns")
    assert validate_type(second, "ns")


@given(cubics())
def test_second_marginal_is_first_of_transpose(p: CubicStochastic12):
    assert accompanying_second(p).allclose(accompanying_first(transpose12(p)), 1e-14)


@given(symmetric_cubics())
def test_symmetric_marginals_coincide(s: CubicStochastic12):
    assert accompanying_first(s).allclose(accompanying_second(s), 1e-14)


def test_accompanying_matrices_are_cached(worked_p: CubicStochastic12):
    assert accompanying_first(worked_p) is accompanying_first(worked_p)
    assert accompanying_first(worked_p) is not accompanying_second(worked_p)


def test_worked_slices(worked_p: CubicStochastic12):
    assert_allclose(slice(worked_p, SliceAxis.FRONTAL, 1), [[0.5, 0.1], [0.2, 0.2]])
    assert_allclose(slice(worked_p, "frontal", 2), np.full((2, 2), 0.25))
    assert_allclose(slice(worked_p, "horizontal", 1), [[0.5, 0.25], [0.1, 0.25]])
    assert_allclose(slice(worked_p, "lateral", 2), [[0.1, 0.25], [0.2, 0.25]])


@given(cubics())
def test_frontal_slices_have_unit_mass(p: CubicStochastic12):
    family = slices(p, "frontal")

    assert len(family) == p.n
    assert family.axis is SliceAxis.FRONTAL
    assert_allclose(family.masses(), np.ones(p.n), rtol=0, atol=1e-12)


@given(cubics())
def test_transpose_swaps_horizontal_and_lateral_slices(p: CubicStochastic12):
    t = transpose12(p)

    for h in range(1, p.n + 1):
        assert_array_equal(slice(t, "horizontal", h), slice(p, "lateral", h))
        assert_array_equal(slice(t, "lateral", h), slice(p, "horizontal", h))
        assert_array_equal(slice(t, "frontal", h), slice(p, "frontal", h).T)


def test_slices_are_copies(worked_p: CubicStochastic12):
    grid = slice(worked_p, "frontal", 1)
    grid[0, 0] = 9.0

    assert worked_p.entries[0, 0, 0] == 0.5


@pytest.mark.parametrize("h", [0, 3])
def test_slice_index_out_of_range(worked_p: CubicStochastic12, h: int):
    with pytest.raises(ShapeError):
        slice(worked_p, "frontal", h)


def test_fibers(worked_p: CubicStochastic12):
    assert_allclose(fiber(worked_p, FiberAxis.TUBE, 1, 2), [0.1, 0.25])
    assert_allclose(fiber(worked_p, "column", 2, 1), [0.1, 0.2])
    assert_allclose(fiber(worked_p, "row", 2, 1), [0.2, 0.2])

    family = fibers(worked_p, "tube")
    assert len(family.fibers) == 4
    assert family.sums()[(1, 1)] == pytest.approx(0.75)


def test_tube_sums_of_cubic3():
    assert_allclose(tube_sums(np.full((3, 3, 3), 1 / 3)), np.ones((3, 3)))


def test_worked_matricization(worked_p: CubicStochastic12):
    assert_allclose(
        matricize_frontal(worked_p),
        [[0.5, 0.1, 0.25, 0.25], [0.2, 0.2, 0.25, 0.25]],
    )


@given(cubics())
def test_matricization_round_trip(p: CubicStochastic12):
    matrix = matricize_frontal(p)

    assert matrix.shape == (p.n, p.n**2)
    for k in range(p.n):
        assert_array_equal(matrix[:, k * p.n : (k + 1) * p.n], p.entries[:, :, k])
    assert_array_equal(dematricize_frontal(matrix), p.entries)


@pytest.mark.parametrize("shape", [(2, 3), (2, 2), (3, 3, 3), (0, 0)])
def test_dematricize_rejects_shapes(shape: tuple):
    with pytest.raises(ShapeError):
        dematricize_frontal(np.zeros(shape))


def test_non_cubic_input():
    with pytest.raises(ShapeError):
        slices(np.zeros((2, 2, 3)), "frontal")
