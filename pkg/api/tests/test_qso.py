import numpy as np
import pytest
from hypothesis import given
from numpy.testing import assert_allclose, assert_array_equal

from cubestoch_api import generate
from cubestoch_api.core import Cubic3Stochastic, SimplexVector, validate_type
from cubestoch_api.error import DomainError, ShapeError
from cubestoch_api.qso import Permutation, apply_qso, is_qso_symmetric, permute_frontal
from oracles import qso_naive
from strategies import rngs


def _qso_and_point(rng: np.random.Generator):
    n = int(rng.integers(1, 6))
    return generate.random_cubic3(rng, n, 0.3), generate.random_simplex(rng, n, 0.3)


@given(rngs())
def test_image_is_on_the_simplex(rng: np.random.Generator):
    p, x = _qso_and_point(rng)

    image = apply_qso(p, x)

    assert validate_type(image.entries, "simplex")
    assert_allclose(image.entries, qso_naive(p.entries, x.entries), rtol=0, atol=1e-14)


@given(rngs())
def test_vertex_image_is_diagonal_tube(rng: np.random.Generator):
    p, _ = _qso_and_point(rng)
    m = int(rng.integers(0, p.n))

    assert_allclose(apply_qso(p, SimplexVector.vertex(p.n, m)).entries, p.entries[m, m, :])


def test_uniform_coefficients():
    image = apply_qso(Cubic3Stochastic.uniform(2), SimplexVector([0.9, 0.1]))

    assert_allclose(image.entries, [0.5, 0.5], rtol=0, atol=1e-15)


def test_require_symmetric():
    grid = np.zeros((2, 2, 2))
    grid[:, :, 0] = [[1.0, 1.0], [0.0, 0.0]]
    grid[:, :, 1] = [[0.0, 0.0], [1.0, 1.0]]
    p = Cubic3Stochastic(grid)

    assert not is_qso_symmetric(p)
    assert apply_qso(p, SimplexVector.uniform(2)).n == 2
    with pytest.raises(DomainError):
        apply_qso(p, SimplexVector.uniform(2), require_symmetric=True)
    assert is_qso_symmetric(Cubic3Stochastic.uniform(3))


def test_size_mismatch():
    with pytest.raises(ShapeError):
        apply_qso(Cubic3Stochastic.uniform(3), SimplexVector.uniform(2))
    with pytest.raises(ShapeError):
        permute_frontal(Permutation.identity(2), Cubic3Stochastic.uniform(3))


@given(rngs())
def test_permutation_is_a_right_action(rng: np.random.Generator):
    p, _ = _qso_and_point(rng)
    s = generate.random_permutation(rng, p.n)
    t = generate.random_permutation(rng, p.n)

    twice = permute_frontal(s, permute_frontal(t, p))

    assert_array_equal(twice.entries, permute_frontal(t.compose(s), p).entries)
    assert_array_equal(permute_frontal(Permutation.identity(p.n), p).entries, p.entries)


@given(rngs())
def test_permutation_keeps_3_stochastic_and_relabels_images(rng: np.random.Generator):
    p, x = _qso_and_point(rng)
    sigma = generate.random_permutation(rng, p.n)

    permuted = permute_frontal(sigma, p)

    assert validate_type(permuted.entries, "3-stochastic")
    assert_allclose(
        apply_qso(permuted, x).entries,
        apply_qso(p, x).entries[list(sigma.mapping)],
        rtol=0,
        atol=1e-14,
    )


def test_worked_permutation():
    grid = np.zeros((2, 2, 2))
    grid[:, :, 0] = 1.0
    p = Cubic3Stochastic(grid)

    swapped = permute_frontal(Permutation.from_one_based([2, 1]), p)

    assert_array_equal(swapped.entries[:, :, 1], np.ones((2, 2)))
    assert_array_equal(swapped.entries[:, :, 0], np.zeros((2, 2)))


def test_permutation_values():
    sigma = Permutation.from_one_based([2, 3, 1])

    assert sigma.mapping == (1, 2, 0)
    assert sigma(0) == 1
    assert sigma.to_one_based() == (2, 3, 1)
    assert sigma.compose(sigma.inverse()) == Permutation.identity(3)
    assert sigma.inverse().compose(sigma) == Permutation.identity(3)


@pytest.mark.parametrize("mapping", [(), (0, 0), (1, 2), (0, 2, 3)])
def test_permutation_rejects_non_bijections(mapping: tuple):
    with pytest.raises(DomainError):
        Permutation(mapping)


def test_permutation_compose_sizes():
    with pytest.raises(ShapeError):
        Permutation.identity(2).compose(Permutation.identity(3))
