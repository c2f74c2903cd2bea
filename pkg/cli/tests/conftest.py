import shutil
from pathlib import Path
from typing import Iterator

import pytest
import yaml

from cubestoch_cli.config import Config

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Iterator[Path]:
    """Point the config and the logs folder into the test's tmp folder."""
    config_dir = tmp_path / "config"
    config_dir.mkdir()
    (config_dir / "config.yaml").write_text(
        yaml.dump({"user_files_path": str(tmp_path / "data")})
    )

    monkeypatch.setattr(Config, "_get_config_path", staticmethod(lambda: config_dir))
    Config._read_config.cache_clear()
    yield config_dir
    Config._read_config.cache_clear()


@pytest.fixture
def golden(tmp_path: Path) -> Path:
    """A writable copy of the golden folder, outputs can go next to the
    inputs without touching the checked in files."""
    work = tmp_path / "golden"
    shutil.copytree(GOLDEN, work)
    return work
