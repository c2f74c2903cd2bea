import numpy as np
import pytest
from hypothesis import settings

from cubestoch_api.core import CubicStochastic12, StochasticMatrix

settings.register_profile("default", max_examples=200, deadline=None, derandomize=True)
# `poe test` runs the thorough profile, `poe test-quick` the default one
settings.register_profile("thorough", max_examples=1000, deadline=None, derandomize=True)
settings.load_profile("default")

# p[i][j][k], frontal slices [[0.5, 0.1], [0.2, 0.2]] and all 0.25
WORKED_P = [
    [[0.5, 0.25], [0.1, 0.25]],
    [[0.2, 0.25], [0.2, 0.25]],
]
WORKED_A = [[0.9, 0.3], [0.1, 0.7]]


@pytest.fixture
def worked_p() -> CubicStochastic12:
    return CubicStochastic12(np.array(WORKED_P))


@pytest.fixture
def worked_a() -> StochasticMatrix:
    return StochasticMatrix(np.array(WORKED_A))
