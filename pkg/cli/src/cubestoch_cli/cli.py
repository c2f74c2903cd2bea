import sys
from pathlib import Path
from types import TracebackType
from typing import Dict, List, Optional, Type

import cubestoch_cli.logger as logger
from cubestoch_api.error import (
    ArgumentError,
    DocumentParseError,
    DomainError,
    KindMismatchError,
    ShapeError,
    StochasticityError,
)
from cubestoch_cli.arg_parser import USAGE_EXIT_CODE, CliArgs, parse_args
from cubestoch_cli.clis import *
from cubestoch_cli.clis.base_cli import CliBase
from cubestoch_cli.colors import Color, paint
from cubestoch_cli.config import Config
from cubestoch_cli.util import error

FATAL_EXIT_CODE = 1

EXIT_CODES: Dict[Type[Exception], int] = {
    StochasticityError: 2,
    DomainError: 2,
    ShapeError: 3,
    DocumentParseError: 3,
    KindMismatchError: 3,
    ArgumentError: USAGE_EXIT_CODE,
}

COMMANDS: Dict[str, Type[CliBase]] = {
    "mul": MulCli,
    "act": ActCli,
    "power": PowerCli,
    "transpose": TransposeCli,
    "marginals": MarginalsCli,
    "slice": SliceCli,
    "matricize": MatricizeCli,
    "bmc": BmcCli,
    "iterate": IterateCli,
    "qso-apply": QsoApplyCli,
    "qso-permute": QsoPermuteCli,
    "validate": ValidateCli,
    "scenario": ScenarioCli,
    "generate": GenerateCli,
}


def run_cli(override_args: Optional[List[str]] = None) -> int:
    """Entry point of the `cubestoch` command.

    Returns:
        The exit code: 0 on success, 2 for validation and domain failures,
        3 for shape and parse failures, 4 for usage errors and 1 for
        anything unexpected
    """
    args = parse_args(override_args)

    logger.set_cli_verbosity(args.verbosity)
    logger.set_stack_always(args.stack_always)

    def fatal_handler(exc_val: BaseException, exc_tb: TracebackType, logs_location: Path):
        message = f"cubestoch: fatal {type(exc_val).__name__}: {exc_val} (logs in {logs_location})"
        sys.stderr.write(paint(message, Color.FAIL, sys.stderr) + "\n")

    exit_code = FATAL_EXIT_CODE
    with logger.safe(fatal_handler):
        exit_code = _safe_cli(args)

    return exit_code


def _safe_cli(args: CliArgs) -> int:
    config = Config()
    # rewrite the file so options added since it was written show up
    config._create_config()

    if args.config:
        print(config._config_file)
        return 0

    logger.info(f"Running `{args.command}`")
    try:
        return COMMANDS[args.command](options=args).run()
    except tuple(EXIT_CODES) as e:
        code = next(c for t, c in EXIT_CODES.items() if isinstance(e, t))
        error(str(e))
        return code
    except KeyboardInterrupt:
        error("interrupted")
        return FATAL_EXIT_CODE


if __name__ == "__main__":
    raise SystemExit(run_cli())
