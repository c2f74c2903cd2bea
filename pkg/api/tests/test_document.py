import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from numpy.testing import assert_array_equal

from cubestoch_api import generate
from cubestoch_api.actions import induced_chain
from cubestoch_api.core import (
    Cubic3Stochastic,
    CubicStochastic12,
    SimplexVector,
    StochasticMatrix,
)
from cubestoch_api.decomp import marginals, slices
from cubestoch_api.document import (
    document_kind,
    dumps,
    dumps_matricized_csv,
    load,
    load_array,
    load_iteration,
    load_marginals,
    load_matricized_csv,
    load_model,
    load_slices,
    load_state,
    save,
    save_matricized_csv,
)
from cubestoch_api.error import (
    DocumentParseError,
    KindMismatchError,
    ShapeError,
    StochasticityError,
)
from cubestoch_api.markov import BivariateModel, StackedState, build_bivariate, iterate
from strategies import rngs


def _write(path: Path, data: dict) -> Path:
    path.write_text(json.dumps(data))
    return path


def test_minimal_document(tmp_path: Path):
    path = _write(
        tmp_path / "one.json",
        {"kind": "cs12", "n": 1, "order": 3, "layout": "frontal-major", "values": [1.0]},
    )

    p = load(path, "cs12")

    assert isinstance(p, CubicStochastic12)
    assert p.n == 1


def test_values_are_frontal_major(tmp_path: Path, worked_p: CubicStochastic12):
    data = json.loads(dumps(worked_p))

    assert data == {
        "kind": "cs12",
        "n": 2,
        "order": 3,
        "layout": "frontal-major",
        "values": [0.5, 0.1, 0.2, 0.2, 0.25, 0.25, 0.25, 0.25],
    }
    assert "eps" not in data
    assert dumps(worked_p).endswith("}\n")


def test_failing_slice_is_named(tmp_path: Path):
    path = _write(
        tmp_path / "bad.json",
        {
            "kind": "cs12",
            "n": 2,
            "order": 3,
            "layout": "frontal-major",
            "values": [0.5, 0.1, 0.2, 0.2, 0.25, 0.25, 0.25, 0.15],
        },
    )

    with pytest.raises(StochasticityError) as e:
        load(path, "cs12")

    assert e.value.report.index == (2,)
    assert "k=2" in str(e.value)


def test_document_eps_takes_precedence(tmp_path: Path):
    values = [0.5, 0.5, 0.5 + 1e-7, 0.5]
    strict = _write(
        tmp_path / "strict.json",
        {"kind": "ns", "n": 2, "order": 2, "layout": "frontal-major", "values": values},
    )
    loose = _write(
        tmp_path / "loose.json",
        {"kind": "ns", "n": 2, "order": 2, "layout": "frontal-major", "values": values, "eps": 1e-6},
    )

    with pytest.raises(StochasticityError):
        load(strict)
    assert isinstance(load(loose), StochasticMatrix)


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(rngs())
def test_saved_values_load_exactly(tmp_path: Path, rng: np.random.Generator):
    n = int(rng.integers(1, 6))
    values = [
        generate.random_cubic12(rng, n, 0.3),
        generate.random_cubic3(rng, n, 0.3),
        generate.random_stochastic_matrix(rng, n, 0.3),
        generate.random_simplex(rng, n, 0.3),
    ]

    for value in values:
        loaded = load(save(value, tmp_path / "value.json"))
        assert type(loaded) is type(value)
        assert_array_equal(loaded.entries, value.entries)


def test_kind_mismatch(tmp_path: Path, worked_a: StochasticMatrix):
    path = save(worked_a, tmp_path / "a.json")

    with pytest.raises(KindMismatchError):
        load(path, "cs12")
    with pytest.raises(KindMismatchError):
        load_model(path)


@pytest.mark.parametrize(
    "data, error",
    [
        ({"kind": "cs21", "n": 1, "order": 3, "layout": "frontal-major", "values": [1.0]}, DocumentParseError),
        ({"kind": "cs12", "n": 1, "order": 3, "layout": "row-major", "values": [1.0]}, DocumentParseError),
        ({"kind": "cs12", "n": 1, "order": 3, "layout": "frontal-major"}, DocumentParseError),
        ({"kind": "cs12", "n": 1, "order": 3, "layout": "frontal-major", "values": ["x"]}, DocumentParseError),
        ({"kind": "cs12", "n": 2, "order": 3, "layout": "frontal-major", "values": [1.0]}, ShapeError),
        ({"kind": "cs12", "n": 0, "order": 3, "layout": "frontal-major", "values": []}, ShapeError),
        ({"kind": "cs12", "n": 1, "order": 2, "layout": "frontal-major", "values": [1.0]}, ShapeError),
    ],
)
def test_malformed_documents(tmp_path: Path, data: dict, error: type):
    with pytest.raises(error):
        load(_write(tmp_path / "doc.json", data))


def test_unreadable_files(tmp_path: Path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")

    with pytest.raises(DocumentParseError):
        load(broken)
    with pytest.raises(DocumentParseError):
        load(tmp_path / "missing.json")
    with pytest.raises(DocumentParseError):
        load(_write(tmp_path / "list.json", [1, 2]))  # type: ignore[arg-type]


def test_raw_documents(tmp_path: Path):
    raw = np.full((2, 2, 2), 0.5)

    loaded = load(save(raw, tmp_path / "raw.json"))

    assert isinstance(loaded, np.ndarray)
    assert_array_equal(loaded, raw)
    with pytest.raises(ShapeError):
        dumps(np.ones((2, 3)))


def test_load_array_skips_validation(tmp_path: Path):
    path = _write(
        tmp_path / "any.json",
        {"kind": "cs12", "n": 2, "order": 3, "layout": "frontal-major", "values": [0.5] * 8},
    )

    document, array = load_array(path)

    assert document.kind == "cs12"
    assert array.shape == (2, 2, 2)
    with pytest.raises(StochasticityError):
        load(path)


def test_marginals_documents(tmp_path: Path, worked_p: CubicStochastic12):
    path = save(marginals(worked_p), tmp_path / "m.json")

    first, second = load_marginals(path)

    assert document_kind(path) == "marginals"
    assert first.allclose(marginals(worked_p)[0], 0.0)
    assert second.allclose(marginals(worked_p)[1], 0.0)
    with pytest.raises(KindMismatchError):
        load(path)


def test_model_documents(tmp_path: Path, worked_p: CubicStochastic12, worked_a: StochasticMatrix):
    model = induced_chain(worked_a, worked_p, [[0.5, 0.5], [0.25, 0.75]], "q1")
    path = save(model, tmp_path / "bmc.json", variant="q1")

    loaded = load_model(path)
    data = json.loads(path.read_text())

    assert isinstance(loaded, BivariateModel)
    assert data["variant"] == "q1"
    assert_array_equal(loaded.assembled, model.assembled)
    assert data["assembled"] == model.assembled.tolist()


def test_state_and_iteration_documents(tmp_path: Path, worked_p: CubicStochastic12):
    model = build_bivariate(worked_p, [[0.5, 0.5], [0.5, 0.5]])
    state = StackedState.of([1.0, 0.0], [0.0, 1.0])
    result = iterate(model, state)

    assert load_state(save(state, tmp_path / "x0.json")).allclose(state, 0.0)

    loaded = load_iteration(save(result, tmp_path / "it.json"))
    assert loaded.steps == result.steps
    assert loaded.converged == result.converged
    assert loaded.state.allclose(result.state, 0.0)

    with pytest.raises(KindMismatchError):
        load_state(tmp_path / "it.json")


def test_state_shape_is_checked(tmp_path: Path):
    path = _write(tmp_path / "x.json", {"kind": "state", "s": 2, "n": 2, "parts": [[1.0, 0.0]]})

    with pytest.raises(ShapeError):
        load_state(path)


def test_slices_documents(worked_p: CubicStochastic12):
    data = json.loads(dumps(slices(worked_p, "frontal")))

    assert data["kind"] == "slices"
    assert data["axis"] == "frontal"
    assert data["slices"][0] == [[0.5, 0.1], [0.2, 0.2]]


@pytest.mark.parametrize("axis", ["horizontal", "lateral", "frontal"])
def test_slices_load_back(tmp_path: Path, worked_p: CubicStochastic12, axis: str):
    family = slices(worked_p, axis)

    loaded = load_slices(save(family, tmp_path / "slices.json"))

    assert loaded.axis == family.axis
    for got, expected in zip(loaded.slices, family.slices):
        assert_array_equal(got, expected)


def test_frontal_slices_need_unit_mass(tmp_path: Path):
    grids = [[[0.5, 0.5], [0.5, 0.5]], [[0.25, 0.25], [0.25, 0.25]]]

    with pytest.raises(StochasticityError, match="frontal slice k=1"):
        load_slices(_write(tmp_path / "f.json", {"kind": "slices", "axis": "frontal", "n": 2, "slices": grids}))

    lateral = load_slices(
        _write(tmp_path / "l.json", {"kind": "slices", "axis": "lateral", "n": 2, "slices": grids})
    )
    assert lateral.masses() == [2.0, 1.0]

    with pytest.raises(ShapeError):
        load_slices(_write(tmp_path / "s.json", {"kind": "slices", "axis": "lateral", "n": 3, "slices": grids}))
    with pytest.raises(KindMismatchError):
        load_slices(_write(tmp_path / "k.json", {"kind": "state", "axis": "lateral", "n": 2, "slices": grids}))


def test_matricized_csv(tmp_path: Path):
    text = dumps_matricized_csv(CubicStochastic12.uniform(2))

    assert text == "0.25,0.25,0.25,0.25\n0.25,0.25,0.25,0.25\n"

    path = save_matricized_csv(CubicStochastic12.uniform(2), tmp_path / "p.csv")
    assert isinstance(load_matricized_csv(path), CubicStochastic12)
    assert isinstance(load_matricized_csv(path, kind="raw"), np.ndarray)
    with pytest.raises(StochasticityError):
        load_matricized_csv(path, kind="3stoch")


@settings(suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(rngs())
def test_matricized_csv_loads_exactly(tmp_path: Path, rng: np.random.Generator):
    p = generate.random_cubic12(rng, int(rng.integers(1, 6)), 0.3)

    loaded = load_matricized_csv(save_matricized_csv(p, tmp_path / "p.csv"))

    assert_array_equal(loaded.entries, p.entries)


@pytest.mark.parametrize(
    "text, error",
    [
        ("0.25,0.25,0.25\n0.25,0.25,0.25,0.25\n", ShapeError),
        ("0.5,0.5\n0.5,0.5\n", ShapeError),
        ("", ShapeError),
        ("a,0.25,0.25,0.25\n0.25,0.25,0.25,0.25\n", DocumentParseError),
    ],
)
def test_malformed_csv(tmp_path: Path, text: str, error: type):
    path = tmp_path / "p.csv"
    path.write_text(text)

    with pytest.raises(error):
        load_matricized_csv(path)


def test_csv_dimension_and_kind(tmp_path: Path):
    path = save_matricized_csv(Cubic3Stochastic.uniform(2), tmp_path / "q.csv")

    assert isinstance(load_matricized_csv(path, kind="3stoch"), Cubic3Stochastic)
    with pytest.raises(ShapeError):
        load_matricized_csv(path, n=3)
    with pytest.raises(DocumentParseError):
        load_matricized_csv(path, kind="ns")


def test_vector_documents(tmp_path: Path):
    x = SimplexVector([0.25, 0.75])

    assert json.loads(dumps(x))["order"] == 1
    assert load(save(x, tmp_path / "x.json"), "vec").allclose(x, 0.0)
