import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from yaspin.core import Yaspin
from yaspin.spinners import Spinners

import cubestoch_cli.logger as logger
from cubestoch_api.algebra import MulRule
from cubestoch_api.core import StochasticArray, Tolerance
from cubestoch_api.document import load, load_matricized_csv
from cubestoch_api.error import ArgumentError
from cubestoch_cli.colors import Color, paint
from cubestoch_cli.config import Config


class DotSpinner(Yaspin):
    """Spinner for long running commands, silent unless stdout is a
    terminal so that piped documents stay clean."""

    def __init__(self, text: str, **spinner_args: Any):
        enabled = sys.stdout.isatty()
        if enabled:
            spinner_args.setdefault("color", "cyan")
        super().__init__(text=text, spinner=Spinners.dots, **spinner_args)
        self.enabled = enabled

    def __enter__(self) -> "DotSpinner":
        if self.enabled:
            self.start()
        return self

    def __exit__(self, *exc: Any):
        if self.enabled:
            self.stop()
        return False

    def set_text(self, text: str, color: Optional[Color] = None):
        self.text = paint(text, color)

    def ok(self, text: str = "OK"):
        if self.enabled:
            super().ok(text)

    def fail(self, text: str = "FAIL"):
        if self.enabled:
            super().fail(text)


def error(error: str, log_level: int = logging.WARNING):
    sys.stderr.write(paint("cubestoch: error: ", Color.FAIL, sys.stderr) + f"{error}\n")
    logger.log(log_level, error)


def resolve_tolerance(eps: Optional[float]) -> Tolerance:
    """`--eps` if given, the configured default otherwise."""
    return Tolerance(eps if eps is not None else Config().default_eps)


def parse_rule(words: Sequence[str], tol: Optional[Tolerance] = None) -> MulRule:
    """Parse `dot`, `star` or `w <l1> <l2>`.

    Raises:
        ArgumentError: If the words are not one of the three forms
        DomainError: If the weights are invalid
    """
    words = list(words)
    if words == ["dot"]:
        return MulRule.dot()
    if words == ["star"]:
        return MulRule.star()
    if len(words) == 3 and words[0] in ("w", "weighted"):
        try:
            lambda1, lambda2 = float(words[1]), float(words[2])
        except ValueError:
            raise ArgumentError(f"weights must be decimals, got {words[1:]}") from None
        return MulRule.weighted(lambda1, lambda2, tol)
    raise ArgumentError(f"unknown rule {' '.join(words)!r}, expected dot, star or w <l1> <l2>")


def load_input(
    path: Path, kind: Union[str, Sequence[str]], tol: Tolerance
) -> Union[StochasticArray, Any]:
    """Load a JSON document, or a CSV matricization for cubic kinds."""
    kinds = (kind,) if isinstance(kind, str) else tuple(kind)
    if path.suffix.lower() == ".csv":
        cubic = [k for k in kinds if k in ("cs12", "3stoch")]
        if not cubic:
            raise ArgumentError(f"{path} is a CSV file, expected a {'/'.join(kinds)} document")
        value = load_matricized_csv(path, kind=cubic[0], tol=tol)
    else:
        value = load(path, kinds, tol)
    logger.info(f"Loaded {type(value).__name__} (n={value.n}) from {path}")
    return value


def write_output(text: str, out: Optional[Path]) -> None:
    """Write `text` to `out`, or to stdout if no output path was given."""
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    logger.info(f"Wrote {out}")

