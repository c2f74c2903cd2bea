import json
import warnings
from pathlib import Path

import pytest
import yaml

from cubestoch_cli.cli import run_cli
from cubestoch_cli.colors import Color
from cubestoch_cli.config import Config
from cubestoch_cli.util import DotSpinner
from helpers import assert_documents_close, read_json


def _document(path: Path, kind: str, order: int, values: list) -> Path:
    n = round(len(values) ** (1 / order))
    path.write_text(
        json.dumps({"kind": kind, "n": n, "order": order, "layout": "frontal-major", "values": values})
    )
    return path


@pytest.mark.parametrize("kind", ["ns", "cs12", "cs12sym", "3stoch", "vec"])
def test_generate_is_seeded(tmp_path: Path, kind: str):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"

    args = ["generate", kind, "-n", "3", "--seed", "7", "--sparsity", "0.3"]

    assert run_cli([*args, "-o", str(first)]) == 0
    assert run_cli([*args, "-o", str(second)]) == 0

    assert first.read_text() == second.read_text()
    assert run_cli(["validate", str(first)]) == 0


@pytest.mark.parametrize("args", [["-n", "0"], ["-n", "2", "--sparsity", "1.0"]])
def test_generate_rejects_bad_parameters(args: list):
    assert run_cli(["generate", "cs12", *args]) == 2


def test_qso_on_uniform_coefficients(tmp_path: Path, capsys: pytest.CaptureFixture):
    coefficients = _document(tmp_path / "p.json", "3stoch", 3, [0.5] * 8)
    x = _document(tmp_path / "x.json", "vec", 1, [0.3, 0.7])

    assert run_cli(["qso-apply", str(coefficients), "--x", str(x), "--require-symmetric"]) == 0

    document = json.loads(capsys.readouterr().out)
    assert document["kind"] == "vec"
    assert_documents_close(document["values"], [0.5, 0.5])


def test_qso_symmetry_is_checked_on_request(tmp_path: Path):
    coefficients = _document(
        tmp_path / "p.json", "3stoch", 3, [1.0, 0.0, 0.5, 0.5, 0.0, 1.0, 0.5, 0.5]
    )
    x = _document(tmp_path / "x.json", "vec", 1, [0.5, 0.5])

    assert run_cli(["qso-apply", str(coefficients), "--x", str(x)]) == 0
    assert run_cli(["qso-apply", str(coefficients), "--x", str(x), "--require-symmetric"]) == 2


def test_qso_vector_size_mismatch(tmp_path: Path):
    coefficients = _document(tmp_path / "p.json", "3stoch", 3, [0.5] * 8)
    x = _document(tmp_path / "x.json", "vec", 1, [0.2, 0.3, 0.5])

    assert run_cli(["qso-apply", str(coefficients), "--x", str(x)]) == 3


def test_qso_permute_swaps_frontal_slices(tmp_path: Path):
    coefficients = _document(
        tmp_path / "p.json", "3stoch", 3, [1.0, 0.0, 0.5, 0.5, 0.0, 1.0, 0.5, 0.5]
    )
    out = tmp_path / "permuted.json"

    assert run_cli(["qso-permute", str(coefficients), "--sigma", "2", "1", "-o", str(out)]) == 0

    assert read_json(out)["values"] == [0.0, 1.0, 0.5, 0.5, 1.0, 0.0, 0.5, 0.5]
    assert run_cli(["qso-permute", str(coefficients), "--sigma", "1", "1"]) == 2
    assert run_cli(["qso-permute", str(coefficients), "--sigma", "1", "2", "3"]) == 3


def test_slice(golden: Path):
    out = golden / "slice.json"

    args = ["slice", str(golden / "P.json"), "--axis", "frontal", "--index", "1"]

    assert run_cli([*args, "-o", str(out)]) == 0
    assert read_json(out) == {
        "kind": "raw",
        "n": 2,
        "order": 2,
        "layout": "frontal-major",
        "values": [0.5, 0.1, 0.2, 0.2],
    }


def test_slice_index_out_of_range(golden: Path):
    assert run_cli(["slice", str(golden / "P.json"), "--axis", "lateral", "--index", "3"]) == 3


def test_matricize(golden: Path, capsys: pytest.CaptureFixture):
    assert run_cli(["matricize", str(golden / "P.json"), "--csv"]) == 0
    assert capsys.readouterr().out == "0.5,0.1,0.25,0.25\n0.2,0.2,0.25,0.25\n"

    assert run_cli(["matricize", str(golden / "P.json")]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_config_path(isolated_config: Path, capsys: pytest.CaptureFixture):
    assert run_cli(["--config-path"]) == 0
    assert capsys.readouterr().out.strip() == str(isolated_config / "config.yaml")


def test_config_is_rewritten_with_every_option(isolated_config: Path):
    assert run_cli(["--config-path"]) == 0

    written = yaml.safe_load((isolated_config / "config.yaml").read_text())
    assert set(written) == {
        "user_files_path",
        "default_eps",
        "iterate_max_steps",
        "iterate_tol",
        "json_indent",
    }
    assert written["json_indent"] == 2
    assert "# Indentation of the JSON documents" in (isolated_config / "config.yaml").read_text()


def test_config_bad_values_fall_back(isolated_config: Path):
    (isolated_config / "config.yaml").write_text(
        yaml.safe_dump({"default_eps": "loose", "json_indent": True, "iterate_tol": "1e-6"})
    )
    Config._read_config.cache_clear()

    config = Config()
    assert config.default_eps == 1e-9
    assert config.json_indent == 2
    assert config.iterate_tol == 1e-6


@pytest.mark.parametrize("args", [[], ["histogram"], ["mul", "only-one.json", "-r", "dot"]])
def test_usage_errors(args: list):
    with pytest.raises(SystemExit) as e:
        run_cli(args)

    assert e.value.code == 4


def test_spinner_stays_quiet_off_a_terminal(capsys: pytest.CaptureFixture):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        with DotSpinner("Working...") as s:
            s.set_text("Done", Color.OK)
            s.ok("✔")

    assert not s.enabled
    assert capsys.readouterr().out == ""
