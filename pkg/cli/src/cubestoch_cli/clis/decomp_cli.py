import sys
from typing import TYPE_CHECKING, Optional

import numpy as np

from cubestoch_api.decomp import marginals, matricize_frontal, slice
from cubestoch_api.document import dumps_matricized_csv
from cubestoch_cli.clis.base_cli import CliBase
from cubestoch_cli.util import write_output

if TYPE_CHECKING:
    from cubestoch_api.core import CubicStochastic12

    from cubestoch_cli.arg_parser import CliArgs


class MarginalsCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.tensor: Optional["CubicStochastic12"] = None

    def take_input(self):
        self.tensor = self.load(self.options.tensor, "cs12")

    def process(self):
        pass

    def show(self):
        self.emit(marginals(self.tensor))


class SliceCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.tensor: Optional["CubicStochastic12"] = None
        self.grid: Optional[np.ndarray] = None

    def take_input(self):
        self.tensor = self.load(self.options.tensor, ("cs12", "3stoch"))

    def process(self):
        self.grid = slice(self.tensor, self.options.axis, self.options.index)

    def show(self):
        self.emit(self.grid)


class MatricizeCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.tensor: Optional["CubicStochastic12"] = None

    def take_input(self):
        self.tensor = self.load(self.options.tensor, ("cs12", "3stoch"))

    def process(self):
        pass

    def show(self):
        if self.options.csv:
            write_output(dumps_matricized_csv(self.tensor), self.options.out)
            return

        matrix = matricize_frontal(self.tensor)
        write_output(
            np.array2string(matrix, max_line_width=sys.maxsize, separator=", ") + "\n",
            self.options.out,
        )
