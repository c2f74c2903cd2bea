from typing import TYPE_CHECKING, Optional

import cubestoch_cli.logger as logger
from cubestoch_api.actions import induced_chain
from cubestoch_api.document import load_model, load_state
from cubestoch_api.error import ArgumentError
from cubestoch_api.markov import BlockModel, IterationResult, build_bivariate, iterate
from cubestoch_cli.clis.base_cli import CliBase
from cubestoch_cli.colors import Color
from cubestoch_cli.util import DotSpinner

if TYPE_CHECKING:
    from cubestoch_api.core import CubicStochastic12, StochasticMatrix
    from cubestoch_api.markov import StackedState

    from cubestoch_cli.arg_parser import CliArgs


def mixing_grid(values: list) -> list:
    """Row-major `l11 l12 l21 l22` as a 2 x 2 grid."""
    return [list(values[:2]), list(values[2:])]


class BmcCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.tensor: Optional["CubicStochastic12"] = None
        self.mutation: Optional["StochasticMatrix"] = None
        self.model: Optional[BlockModel] = None

    def take_input(self):
        if (self.options.mutate is None) != (self.options.which is None):
            raise ArgumentError("--mutate and --which have to be given together")

        self.tensor = self.load(self.options.tensor, "cs12")
        if self.options.mutate is not None:
            self.mutation = self.load(self.options.mutate, "ns")

    def process(self):
        mixing = mixing_grid(self.options.mixing)
        if self.mutation is None:
            self.model = build_bivariate(self.tensor, mixing)
        else:
            logger.info(f"Building the {self.options.which} chain of the mutation")
            self.model = induced_chain(self.mutation, self.tensor, mixing, self.options.which)

    def show(self):
        self.emit(self.model, self.options.which)


class IterateCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.model: Optional[BlockModel] = None
        self.initial: Optional["StackedState"] = None
        self.result: Optional[IterationResult] = None

    def take_input(self):
        self.model = load_model(self.options.model, self.tol)
        self.initial = load_state(self.options.x0, self.tol)
        logger.info(f"Loaded a model with s={self.model.s}, n={self.model.n}")

    def process(self):
        max_steps = self.options.max_steps
        if max_steps is None:
            max_steps = self.config.iterate_max_steps
        tol = self.options.tol if self.options.tol is not None else self.config.iterate_tol

        with DotSpinner("Iterating the model...") as s:
            self.result = iterate(self.model, self.initial, max_steps, tol)
            if self.result.converged:
                s.set_text(f"Converged after {self.result.steps} steps", Color.OK)
                s.ok("✔")
            else:
                s.set_text(f"No convergence within {self.result.steps} steps", Color.FAIL)
                s.fail("✘")

        if not self.result.converged:
            logger.warn(
                f"iterate stopped after {self.result.steps} steps at distance {self.result.distance!r}"
            )

    def show(self):
        self.emit(self.result)
