"""
Switch the sibling dependencies of a distribution (`cubestoch-api` for the
cli) between path requirements for development and version requirements for
publishing. Adapted from https://github.com/mrijken/poetry-dev
"""

import os
import pathlib
import subprocess
from typing import Dict, Union

import tomlkit
import typer

app = typer.Typer()

PREFIX = "cubestoch-"

Requirement = Union[str, Dict[str, str]]
Dependencies = Dict[str, Requirement]


def pyproject_of(base_dir: pathlib.Path = pathlib.Path(".")) -> pathlib.Path:
    return base_dir / "pyproject.toml"


def sibling_dir(name: str) -> pathlib.Path:
    """`cubestoch-api` lives in `../api`."""
    return pathlib.Path("..") / name.removeprefix(PREFIX)


def read_version(base_dir: pathlib.Path) -> str:
    pyproject = tomlkit.parse(pyproject_of(base_dir).read_text())
    return pyproject["tool"]["poetry"]["version"]


def read_dependencies() -> Dependencies:
    pyproject = tomlkit.parse(pyproject_of().read_text())
    return pyproject["tool"]["poetry"]["dependencies"]


def write_dependencies(changed: Dependencies) -> None:
    """Replace the requirements in `changed`, removing them first so that the
    lock file forgets the old source."""
    if not changed:
        return

    path = pyproject_of()
    pyproject = tomlkit.parse(path.read_text())
    for name in changed:
        del pyproject["tool"]["poetry"]["dependencies"][name]
    path.write_text(tomlkit.dumps(pyproject))
    subprocess.call(["poetry", "update"])

    pyproject = tomlkit.parse(path.read_text())
    dependencies = pyproject["tool"]["poetry"]["dependencies"]
    for name, req in changed.items():
        if isinstance(req, dict):
            table = tomlkit.inline_table()
            table.update(req)
            req = table
        dependencies[name] = req
    path.write_text(tomlkit.dumps(pyproject))
    subprocess.call(["poetry", "update"])


def siblings(dependencies: Dependencies) -> Dict[str, Requirement]:
    return {
        name: req
        for name, req in dependencies.items()
        if name.startswith(PREFIX) and pyproject_of(sibling_dir(name)).exists()
    }


@app.command()
def version(working_dir: str = typer.Option(".", help="Set working directory")):
    """Replace sibling path requirements with version requirements."""
    previous_dir = os.getcwd()
    os.chdir(pathlib.Path(working_dir))

    changed: Dependencies = {}
    for name, req in siblings(read_dependencies()).items():
        if isinstance(req, dict) and "path" in req:
            changed[name] = "^" + read_version(sibling_dir(name))
            typer.echo(f"{name}: path requirement -> version requirement {changed[name]}")

    write_dependencies(changed)
    os.chdir(previous_dir)


@app.command()
def path(
    working_dir: str = typer.Option(".", help="Set working directory"),
    develop: bool = typer.Option(True, help="Install path dependencies in develop mode"),
):
    """Replace sibling version requirements with path requirements."""
    previous_dir = os.getcwd()
    os.chdir(pathlib.Path(working_dir))

    changed: Dependencies = {}
    for name, req in siblings(read_dependencies()).items():
        if isinstance(req, str) or "path" not in req:
            changed[name] = {"path": sibling_dir(name).as_posix(), "develop": develop}
            typer.echo(f"{name}: version requirement -> path requirement {sibling_dir(name)}")

    write_dependencies(changed)
    os.chdir(previous_dir)


if __name__ == "__main__":
    app()
