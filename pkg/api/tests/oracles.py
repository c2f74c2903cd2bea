"""Naive summation versions of the library operations, written straight
from the elementwise formulas with plain loops."""

import itertools

import numpy as np


def weighted_mul_naive(a: np.ndarray, b: np.ndarray, lambda1: float, lambda2: float) -> np.ndarray:
    """Sum over the unit-matrix rule
    `e_ijk * e_mrs = (l1 [k == m] + l2 [k == r]) e_ijs`."""
    n = a.shape[0]
    out = np.zeros((n, n, n))
    for i, j, k, m, r, s in itertools.product(range(n), repeat=6):
        coefficient = lambda1 * (k == m) + lambda2 * (k == r)
        if coefficient:
            out[i, j, s] += coefficient * a[i, j, k] * b[m, r, s]
    return out


def dot_mul_naive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return weighted_mul_naive(a, b, 1.0, 0.0)


def star_mul_naive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return weighted_mul_naive(a, b, 0.5, 0.5)


def act_naive(a: np.ndarray, p: np.ndarray, side: int) -> np.ndarray:
    n = p.shape[0]
    out = np.zeros((n, n, n))
    for i, r, s, t in itertools.product(range(n), repeat=4):
        if side == 1:
            out[i, s, t] += a[i, r] * p[r, s, t]
        else:
            # here r plays the first index, i the acted second index
            out[r, i, t] += a[i, s] * p[r, s, t]
    return out


def marginals_naive(p: np.ndarray):
    n = p.shape[0]
    first = np.zeros((n, n))
    second = np.zeros((n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        first[i, k] += p[i, j, k]
        second[j, k] += p[i, j, k]
    return first, second


def qso_naive(p: np.ndarray, x: np.ndarray) -> np.ndarray:
    n = p.shape[0]
    out = np.zeros(n)
    for i, j, k in itertools.product(range(n), repeat=3):
        out[k] += p[i, j, k] * x[i] * x[j]
    return out


def block_step_naive(blocks, weights: np.ndarray, parts):
    s = len(parts)
    return [
        sum(weights[j, k] * (blocks[j][k] @ parts[k]) for k in range(s)) for j in range(s)
    ]
