from abc import ABC, abstractmethod
from pathlib import Path
from typing import TYPE_CHECKING, Optional, Sequence, Union

import cubestoch_cli.logger as logger
from cubestoch_api.core import StochasticArray, Tolerance
from cubestoch_api.document import Value, dumps
from cubestoch_cli.config import Config
from cubestoch_cli.util import load_input, resolve_tolerance, write_output

if TYPE_CHECKING:
    from cubestoch_cli.arg_parser import CliArgs


class CliBase(ABC):
    def __init__(self, options: "CliArgs"):
        self.options = options
        self.config = Config()
        self.tol: Tolerance = resolve_tolerance(options.eps)
        self.exit_code = 0

    @abstractmethod
    def take_input(self) -> Optional[bool]: ...

    @abstractmethod
    def process(self) -> Optional[bool]: ...

    @abstractmethod
    def show(self) -> Optional[bool]: ...

    def run(self) -> int:
        """Run the stages in order, a stage returning `False` ends the run."""
        for stage in (self.take_input, self.process, self.show):
            if stage() is False:
                logger.debug(f"{self.options.command}: stopped after {stage.__name__}")
                break

        return self.exit_code

    def load(self, path: Path, kind: Union[str, Sequence[str]]) -> StochasticArray:
        return load_input(path, kind, self.tol)

    def emit(self, value: Value, variant: Optional[str] = None):
        """Write the document of `value` to `--out` or stdout."""
        write_output(dumps(value, self.config.json_indent, variant), self.options.out)
        logger.info(f"{self.options.command}: produced {type(value).__name__}")
