"""Comparison of produced documents with the golden ones."""

import json
import math
from pathlib import Path
from typing import Any


def read_json(path: Path) -> Any:
    return json.loads(path.read_text())


def assert_documents_close(actual: Any, expected: Any, atol: float = 1e-12, where: str = "$"):
    """Structural equality, floats compared within `atol`."""
    if isinstance(expected, dict):
        assert isinstance(actual, dict), where
        assert actual.keys() == expected.keys(), where
        for key in expected:
            assert_documents_close(actual[key], expected[key], atol, f"{where}.{key}")
    elif isinstance(expected, list):
        assert isinstance(actual, list) and len(actual) == len(expected), where
        for i, (a, e) in enumerate(zip(actual, expected)):
            assert_documents_close(a, e, atol, f"{where}[{i}]")
    elif isinstance(expected, float) and not isinstance(expected, bool):
        assert math.isclose(actual, expected, rel_tol=0.0, abs_tol=atol), f"{where}: {actual} != {expected}"
    else:
        assert actual == expected, where
