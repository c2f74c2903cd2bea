from typing import TYPE_CHECKING, Optional

from cubestoch_api.core import SimplexVector
from cubestoch_api.qso import Permutation, apply_qso, permute_frontal
from cubestoch_cli.clis.base_cli import CliBase

if TYPE_CHECKING:
    from cubestoch_api.core import Cubic3Stochastic

    from cubestoch_cli.arg_parser import CliArgs


class QsoApplyCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.coefficients: Optional["Cubic3Stochastic"] = None
        self.point: Optional[SimplexVector] = None

    def take_input(self):
        self.coefficients = self.load(self.options.tensor, "3stoch")
        self.point = self.load(self.options.x, "vec")

    def process(self):
        self.point = apply_qso(self.coefficients, self.point, self.options.require_symmetric)

    def show(self):
        self.emit(self.point)


class QsoPermuteCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.coefficients: Optional["Cubic3Stochastic"] = None
        self.sigma: Optional[Permutation] = None

    def take_input(self):
        self.sigma = Permutation.from_one_based(self.options.sigma)
        self.coefficients = self.load(self.options.tensor, "3stoch")

    def process(self):
        self.coefficients = permute_frontal(self.sigma, self.coefficients)

    def show(self):
        self.emit(self.coefficients)
