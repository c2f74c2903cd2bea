from typing import TYPE_CHECKING, Optional

import numpy as np

import cubestoch_cli.logger as logger
from cubestoch_api.core import StochasticArray
from cubestoch_api.error import DomainError
from cubestoch_api.generate import (
    random_cubic3,
    random_cubic12,
    random_simplex,
    random_stochastic_matrix,
    random_symmetric12,
)
from cubestoch_cli.clis.base_cli import CliBase

if TYPE_CHECKING:
    from cubestoch_cli.arg_parser import CliArgs

GENERATORS = {
    "ns": random_stochastic_matrix,
    "cs12": random_cubic12,
    "cs12sym": random_symmetric12,
    "3stoch": random_cubic3,
    "vec": random_simplex,
}


class GenerateCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.rng: Optional[np.random.Generator] = None
        self.value: Optional[StochasticArray] = None

    def take_input(self):
        if self.options.n < 1:
            raise DomainError("n", self.options.n, "an integer >= 1")
        if not 0.0 <= self.options.sparsity < 1.0:
            raise DomainError("sparsity", self.options.sparsity, "a real in [0, 1)")
        self.rng = np.random.default_rng(self.options.seed)

    def process(self):
        logger.info(
            f"Generating {self.options.generate_kind} with n={self.options.n}, seed={self.options.seed}"
        )
        generator = GENERATORS[self.options.generate_kind]
        self.value = generator(self.rng, self.options.n, self.options.sparsity, self.tol)

    def show(self):
        self.emit(self.value)
