"""ANSI styling, only applied when the stream is a terminal so that piped
documents and redirected messages stay plain text."""

import sys
from enum import Enum
from typing import Optional, TextIO


class Color(Enum):
    OK = "\033[92m"
    FAIL = "\033[31m"
    RESET = "\033[0m"


def paint(text: str, color: Optional[Color], stream: Optional[TextIO] = None) -> str:
    """`text` in `color` if `stream` (stdout by default) is a terminal."""
    stream = stream or sys.stdout
    if color is None or not stream.isatty():
        return text
    return f"{color.value}{text}{Color.RESET.value}"
