"""The `config.yaml` of the `cubestoch` command.

Options are the documented properties of [Config][cubestoch_cli.config.Config];
the file is (re)written with each property's docstring as a comment above
its current value. Values of the wrong type fall back to the default.
"""

import functools
import inspect
import os
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, Tuple, TypeVar

import yaml
from appdirs import user_config_dir, user_data_dir

from cubestoch_cli import __appname__

T = TypeVar("T")


def _as_float(value: Any) -> float:
    # `1e-9` without a dot is a string to yaml
    if isinstance(value, bool):
        raise TypeError(value)
    return float(value)


def _as_int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(value)
    return value


def _as_path(value: Any) -> Path:
    if not isinstance(value, (str, Path)):
        raise TypeError(value)
    return Path(os.path.expandvars(str(value))).expanduser()


class Config:
    def __init__(self):
        self._config_file, self._yaml_conf = Config._read_config()

        if not self._yaml_conf:
            self._yaml_conf = {}
            self._create_config()

    @property
    def user_files_path(self) -> Path:
        """Folder for files cubestoch keeps for itself, the `logs` folder
        lives here. `~` and environment variables are expanded.
        """
        return self._option(
            "user_files_path", Path(user_data_dir(__appname__, appauthor=False)), _as_path
        )

    @property
    def default_eps(self) -> float:
        """Tolerance used for every "nonnegative" and "sums to one" check
        when neither `--eps` is passed nor the document carries its own `eps`.

        Examples:
            default_eps: 1.0e-09
            default_eps: 1.0e-06 # more forgiving, e.g. for hand typed documents
        """
        return self._option("default_eps", 1e-9, _as_float)

    @property
    def iterate_max_steps(self) -> int:
        """Default number of steps after which `iterate` (and the iterate
        report of scenarios) gives up.

        Examples:
            iterate_max_steps: 10000
        """
        return self._option("iterate_max_steps", 10000, _as_int)

    @property
    def iterate_tol(self) -> float:
        """Default L1 distance of two successive states below which
        `iterate` counts as converged.

        Examples:
            iterate_tol: 1.0e-10
        """
        return self._option("iterate_tol", 1e-10, _as_float)

    @property
    def json_indent(self) -> int:
        """Indentation of the JSON documents cubestoch writes.

        Examples:
            json_indent: 2
            json_indent: 4
        """
        return self._option("json_indent", 2, _as_int)

    def _option(self, key: str, fallback: T, parse: Callable[[Any], T]) -> T:
        if key not in self._yaml_conf:
            return fallback
        try:
            return parse(self._yaml_conf[key])
        except (TypeError, ValueError, RuntimeError):
            return fallback

    @classmethod
    def _options(cls) -> Iterator[Tuple[str, property]]:
        for name, member in vars(cls).items():
            if isinstance(member, property) and not name.startswith("_"):
                yield name, member

    def _create_config(self):
        self._get_config_path().mkdir(exist_ok=True, parents=True)

        sections = []
        for name, option in self._options():
            comment = "\n".join(f"# {line}" for line in (inspect.getdoc(option) or "").splitlines())
            value = getattr(self, name)
            value = str(value) if isinstance(value, Path) else value
            sections.append(f"{comment}\n{yaml.safe_dump({name: value}, default_flow_style=False)}")

        self._config_file.write_text("\n".join(sections))

    @staticmethod
    @functools.lru_cache
    def _read_config() -> Tuple[Path, Dict[str, Any]]:
        config_file = Config._get_config_path() / "config.yaml"
        try:
            yaml_conf = yaml.safe_load(config_file.read_text())
        except FileNotFoundError:
            yaml_conf = None

        return config_file, yaml_conf if isinstance(yaml_conf, dict) else {}

    @staticmethod
    def _get_config_path() -> Path:
        return Path(user_config_dir(__appname__, appauthor=False))
