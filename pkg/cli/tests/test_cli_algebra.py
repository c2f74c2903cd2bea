import json
from pathlib import Path

import numpy as np
import pytest

from cubestoch_api.document import save
from cubestoch_api.generate import random_cubic12
from cubestoch_cli.cli import run_cli
from helpers import assert_documents_close, read_json


def test_star_with_diagonal_unit_gives_back_the_left_factor(golden: Path):
    out = golden / "PE.json"

    args = ["mul", str(golden / "P.json"), str(golden / "E.json"), "--rule", "star"]

    assert run_cli([*args, "-o", str(out)]) == 0
    assert out.read_text() == (golden / "P.json").read_text()


def test_product_goes_to_stdout(golden: Path, capsys: pytest.CaptureFixture):
    assert run_cli(["mul", str(golden / "P.json"), str(golden / "U.json"), "-r", "star"]) == 0

    document = capsys.readouterr().out
    assert_documents_close(
        json.loads(document),
        {
            "kind": "cs12",
            "n": 2,
            "order": 3,
            "layout": "frontal-major",
            "values": [0.375, 0.175, 0.225, 0.225, 0.375, 0.175, 0.225, 0.225],
        },
    )


def test_weighted_one_zero_is_dot(golden: Path):
    dot = golden / "dot.json"
    weighted = golden / "weighted.json"

    factors = [str(golden / "P.json"), str(golden / "P_act1_A.json")]

    assert run_cli(["mul", *factors, "-r", "dot", "-o", str(dot)]) == 0
    assert run_cli(["mul", *factors, "-r", "w", "1", "0", "-o", str(weighted)]) == 0

    assert dot.read_text() == weighted.read_text()


def test_weights_off_the_simplex(golden: Path, capsys: pytest.CaptureFixture):
    p = str(golden / "P.json")

    code = run_cli(["mul", p, p, "--rule", "w", "0.6", "0.5"])

    assert code == 2
    assert "lambda1 + lambda2" in capsys.readouterr().err


@pytest.mark.parametrize("rule", [["square"], ["w", "0.5"], ["w", "a", "b"], ["dot", "star"]])
def test_unknown_rules(golden: Path, rule: list):
    assert run_cli(["mul", str(golden / "P.json"), str(golden / "P.json"), "-r", *rule]) == 4


def test_size_mismatch(golden: Path, tmp_path: Path):
    other = save(random_cubic12(np.random.default_rng(0), 3), tmp_path / "Q.json")

    assert run_cli(["mul", str(golden / "P.json"), str(other), "-r", "dot"]) == 3


def test_transpose(golden: Path):
    out = golden / "PT.json"

    assert run_cli(["transpose", str(golden / "P.json"), "-o", str(out)]) == 0
    assert out.read_text() == (golden / "P_transposed.json").read_text()


def test_power_methods_agree(golden: Path):
    iterated = golden / "iterated.json"
    squared = golden / "squared.json"

    args = ["power", str(golden / "P.json"), "-m", "5", "-r", "star"]

    assert run_cli([*args, "-o", str(iterated)]) == 0
    assert run_cli([*args, "--method", "squaring", "-o", str(squared)]) == 0
    assert_documents_close(read_json(squared), read_json(iterated))


def test_power_zero(golden: Path):
    assert run_cli(["power", str(golden / "P.json"), "-m", "0", "-r", "dot"]) == 2


def test_invalid_input_document(golden: Path, tmp_path: Path, capsys: pytest.CaptureFixture):
    bad = tmp_path / "bad.json"
    bad.write_text((golden / "P.json").read_text().replace("0.1,", "0.2,", 1))

    assert run_cli(["transpose", str(bad)]) == 2
    assert "frontal slice k=1" in capsys.readouterr().err


def test_wrong_kind(golden: Path):
    assert run_cli(["transpose", str(golden / "A.json")]) == 3


def test_missing_file(tmp_path: Path):
    assert run_cli(["transpose", str(tmp_path / "nothing.json")]) == 3
