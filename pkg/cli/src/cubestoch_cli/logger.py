"""Logging for the `cubestoch` command.

Every run writes a log file into `<user_files_path>/logs`, only the newest
`KEPT_LOG_FILES` are kept. The console shows nothing unless `-V` asks for it:
`-V` fatal errors, `-VV` warnings, `-VVV` info, more for debug output.
"""

from __future__ import annotations

import datetime
import logging
import sys
from pathlib import Path
from types import TracebackType
from typing import Protocol

from appdirs import user_data_dir

from cubestoch_cli import __appname__
from cubestoch_cli.config import Config

LOGGER_NAME = "cubestoch"
KEPT_LOG_FILES = 5
SILENT = logging.CRITICAL + 10

VERBOSITY_LEVELS = {0: SILENT, 1: logging.CRITICAL, 2: logging.WARNING, 3: logging.INFO}

_logger = logging.getLogger(LOGGER_NAME)
_logger.setLevel(logging.DEBUG)

_console = logging.StreamHandler()
_console.setFormatter(logging.Formatter("{levelname} -> {message}", style="{"))
_console.setLevel(SILENT)
_logger.addHandler(_console)

# attached by safe(), once the config (and with it the logs folder) is known
_log_file: logging.FileHandler | None = None
_stack_always = False


class FatalHandler(Protocol):
    def __call__(
        self, exc_val: BaseException, exc_tb: TracebackType, logs_location: Path
    ): ...


class FatalCatcher:
    """Wraps a whole command run. An exception escaping the run is logged with
    its traceback, handed to `fatal_handler` and swallowed; `SystemExit`
    passes through.

    Attributes:
        logs_location: Folder of the log files
        failed: Whether the run ended in a fatal error
    """

    def __init__(self, logs_location: Path, fatal_handler: FatalHandler | None = None):
        self._fatal_handler = fatal_handler

        self.logs_location = logs_location
        self.failed = False

    def __enter__(self) -> "FatalCatcher":
        debug("Run started")
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc_val: BaseException | None,
        exc_tb: TracebackType | None,
    ) -> bool:
        if exc_val is None:
            debug("Run finished")
            return False
        if isinstance(exc_val, SystemExit):
            return False

        self.failed = True
        critical(
            f"Fatal {type(exc_val).__name__}: {exc_val}", exc_info=(exc_type, exc_val, exc_tb)
        )
        if self._fatal_handler is not None:
            try:
                self._fatal_handler(exc_val, exc_tb, self.logs_location)
            except Exception:
                sys.stderr.write("cubestoch: the fatal error could not be reported\n")
        return True


def logs_location() -> Path:
    try:
        return Config().user_files_path / "logs"
    except Exception:
        return Path(user_data_dir(__appname__, appauthor=False)) / "logs"


def _prune(log_dir: Path) -> None:
    old = sorted(log_dir.glob("*.log"), key=lambda p: p.stat().st_mtime)[:-KEPT_LOG_FILES]
    for path in old:
        path.unlink(missing_ok=True)


def _open_log_file(log_dir: Path) -> None:
    global _log_file

    if _log_file is not None:
        if Path(_log_file.baseFilename).parent == log_dir.resolve():
            return
        _logger.removeHandler(_log_file)
        _log_file.close()

    log_dir.mkdir(parents=True, exist_ok=True)
    stamp = datetime.datetime.now().strftime("%Y-%m-%dT%H.%M.%S.%f")
    _log_file = logging.FileHandler(log_dir / f"{stamp}.log", encoding="utf-8")
    _log_file.setFormatter(
        logging.Formatter(
            "{asctime} {levelname:<8} {message}", style="{", datefmt="%Y-%m-%d %H:%M:%S"
        )
    )
    _log_file.setLevel(logging.DEBUG)
    _logger.addHandler(_log_file)
    _prune(log_dir)


def safe(fatal_handler: FatalHandler | None = None) -> FatalCatcher:
    """Open the log file of this run and return the catcher to run under."""
    location = logs_location()
    _open_log_file(location)
    return FatalCatcher(location, fatal_handler)


def set_cli_verbosity(level: int) -> None:
    _console.setLevel(VERBOSITY_LEVELS.get(level, logging.DEBUG))


def set_stack_always(value: bool) -> None:
    """Attach the stack to every record, not only to errors."""
    global _stack_always

    _stack_always = value


def _emit(
    level: int,
    content: str,
    exc_info: logging._ExcInfoType = None,
    stack_info: bool = False,
) -> None:
    _logger.log(level, content, exc_info=exc_info, stack_info=stack_info or _stack_always)


def debug(content: str, exc_info: logging._ExcInfoType = None) -> None:
    _emit(logging.DEBUG, content, exc_info)


def info(content: str, exc_info: logging._ExcInfoType = None) -> None:
    _emit(logging.INFO, content, exc_info)


def warn(content: str, exc_info: logging._ExcInfoType = None) -> None:
    _emit(logging.WARNING, content, exc_info)


def critical(content: str, exc_info: logging._ExcInfoType = None) -> None:
    _emit(logging.CRITICAL, content, exc_info, stack_info=True)


def log(level: int, content: str, exc_info: logging._ExcInfoType = None) -> None:
    _emit(level, content, exc_info)
