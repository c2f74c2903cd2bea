from typing import TYPE_CHECKING, Optional

import cubestoch_cli.logger as logger
from cubestoch_api.algebra import MulRule, multiply, power, transpose12
from cubestoch_cli.clis.base_cli import CliBase
from cubestoch_cli.util import parse_rule

if TYPE_CHECKING:
    from cubestoch_api.core import CubicStochastic12

    from cubestoch_cli.arg_parser import CliArgs


class MulCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.lhs: Optional["CubicStochastic12"] = None
        self.rhs: Optional["CubicStochastic12"] = None
        self.rule: Optional[MulRule] = None
        self.result: Optional["CubicStochastic12"] = None

    def take_input(self):
        self.rule = parse_rule(self.options.rule, self.tol)
        self.lhs = self.load(self.options.lhs, "cs12")
        self.rhs = self.load(self.options.rhs, "cs12")

    def process(self):
        logger.info(f"Multiplying with rule {self.rule}")
        self.result = multiply(self.lhs, self.rhs, self.rule)

    def show(self):
        self.emit(self.result)


class PowerCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.tensor: Optional["CubicStochastic12"] = None
        self.rule: Optional[MulRule] = None
        self.result: Optional["CubicStochastic12"] = None

    def take_input(self):
        self.rule = parse_rule(self.options.rule, self.tol)
        self.tensor = self.load(self.options.tensor, "cs12")

    def process(self):
        logger.info(f"Power m={self.options.m} with rule {self.rule} ({self.options.method})")
        self.result = power(self.tensor, self.options.m, self.rule, self.options.method)

    def show(self):
        self.emit(self.result)


class TransposeCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.tensor: Optional["CubicStochastic12"] = None

    def take_input(self):
        self.tensor = self.load(self.options.tensor, "cs12")

    def process(self):
        self.tensor = transpose12(self.tensor)

    def show(self):
        self.emit(self.tensor)
