"""Hypothesis strategies for random valid values.

Values are drawn by `cubestoch_api.generate` from a hypothesis-drawn seed,
so a failing example is reproduced by its seed alone.
"""

import numpy as np
from hypothesis import strategies as st

from cubestoch_api import generate

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=2, max_value=6)
small_dims = st.integers(min_value=1, max_value=4)
sparsities = st.sampled_from([0.0, 0.0, 0.3, 0.7])


@st.composite
def rngs(draw: st.DrawFn) -> np.random.Generator:
    return np.random.default_rng(draw(seeds))


@st.composite
def cubics(draw: st.DrawFn, n: st.SearchStrategy = dims):
    return generate.random_cubic12(draw(rngs()), draw(n), draw(sparsities))


@st.composite
def cubic_sets(draw: st.DrawFn, count: int, n: st.SearchStrategy = dims):
    """`count` cs12 matrices and one column stochastic matrix per cubic,
    all of the same size."""
    rng = draw(rngs())
    size = draw(n)
    sparsity = draw(sparsities)
    tensors = [generate.random_cubic12(rng, size, sparsity) for _ in range(count)]
    matrices = [generate.random_stochastic_matrix(rng, size, sparsity) for _ in range(count)]
    return tensors, matrices


@st.composite
def symmetric_cubics(draw: st.DrawFn, n: st.SearchStrategy = dims):
    return generate.random_symmetric12(draw(rngs()), draw(n))


@st.composite
def weights(draw: st.DrawFn):
    return generate.random_weights(draw(rngs()))
