from typing import TYPE_CHECKING, Optional

import cubestoch_cli.logger as logger
from cubestoch_api.actions import act, act_both
from cubestoch_cli.clis.base_cli import CliBase

if TYPE_CHECKING:
    from cubestoch_api.core import CubicStochastic12, StochasticMatrix

    from cubestoch_cli.arg_parser import CliArgs


class ActCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.matrix: Optional["StochasticMatrix"] = None
        self.tensor: Optional["CubicStochastic12"] = None

    def take_input(self):
        self.matrix = self.load(self.options.matrix, "ns")
        self.tensor = self.load(self.options.tensor, "cs12")

    def process(self):
        logger.info(f"Acting on side {self.options.side}")
        if self.options.side == "both":
            self.tensor = act_both(self.matrix, self.tensor)
        else:
            self.tensor = act(self.matrix, self.tensor, self.options.side)

    def show(self):
        self.emit(self.tensor)
