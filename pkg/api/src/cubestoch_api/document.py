"""JSON and CSV documents for every value type.

A tensor document looks like this:

```json
{
  "kind": "cs12",
  "n": 2,
  "order": 3,
  "layout": "frontal-major",
  "values": [0.5, 0.1, 0.2, 0.2, 0.25, 0.25, 0.25, 0.25]
}
```

`values` lists order 3 grids frontal slice after frontal slice, each slice
row-major, i.e. in `(k, i, j)` order. Order 2 grids are row-major `(i, j)`
and order 1 grids are plain vectors. Floats are written in their shortest
round-trip form, so loading a saved document gives back the exact same
values.

Kinds:

| kind     | order | type                                          |
|----------|-------|-----------------------------------------------|
| `ns`     | 2     | [StochasticMatrix][cubestoch_api.core.StochasticMatrix]   |
| `cs12`   | 3     | [CubicStochastic12][cubestoch_api.core.CubicStochastic12] |
| `3stoch` | 3     | [Cubic3Stochastic][cubestoch_api.core.Cubic3Stochastic]   |
| `vec`    | 1     | [SimplexVector][cubestoch_api.core.SimplexVector]         |
| `raw`    | 1-3   | unchecked `numpy.ndarray`                     |
"""

import csv
import io
import json
from dataclasses import MISSING, dataclass, field, fields, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Type, TypeVar, Union

import numpy as np
from dataclasses_json import DataClassJsonMixin, config

from cubestoch_api.core import (
    Cubic3Stochastic,
    CubicStochastic12,
    SimplexVector,
    StochasticArray,
    StochasticMatrix,
    StochasticType,
    Tolerance,
    validate_type,
)
from cubestoch_api.decomp import SliceAxis, SliceFamily, dematricize_frontal, matricize_frontal
from cubestoch_api.error import (
    DocumentParseError,
    KindMismatchError,
    ShapeError,
    StochasticityError,
)
from cubestoch_api.markov import (
    BivariateModel,
    BlockModel,
    IterationResult,
    MixingWeights,
    StackedState,
)

LAYOUT = "frontal-major"

KIND_TYPES: Dict[str, Type[StochasticArray]] = {
    "ns": StochasticMatrix,
    "cs12": CubicStochastic12,
    "3stoch": Cubic3Stochastic,
    "vec": SimplexVector,
}
KIND_ORDERS = {"ns": 2, "cs12": 3, "3stoch": 3, "vec": 1}
KINDS = (*KIND_TYPES.keys(), "raw")

Value = Union[
    StochasticArray,
    np.ndarray,
    Tuple[StochasticMatrix, StochasticMatrix],
    BlockModel,
    StackedState,
    IterationResult,
    SliceFamily,
]

_skip_none = config(exclude=lambda value: value is None)


@dataclass
class TensorDocument(DataClassJsonMixin):
    """A serialized matrix, cubic matrix or vector.

    Attributes:
        kind: One of `ns`, `cs12`, `3stoch`, `vec` or `raw`
        n: The dimension
        order: Number of indices (1, 2 or 3)
        layout: Always `frontal-major`
        values: `n ** order` reals, see the module description for the order
        eps: Optional admission tolerance for this document only
    """

    kind: str
    n: int
    order: int
    layout: str
    values: List[float]
    eps: Optional[float] = field(default=None, metadata=_skip_none)


@dataclass
class MarginalsDocument(DataClassJsonMixin):
    """Both accompanying matrices of a cubic matrix.

    Attributes:
        kind: Always `marginals`
        first: The father marginal `P1`
        second: The mother marginal `P2`
    """

    kind: str
    first: TensorDocument
    second: TensorDocument


@dataclass
class ModelDocument(DataClassJsonMixin):
    """A block Markov model.

    Attributes:
        kind: Always `bmc`
        s: Number of sequences
        n: Number of states
        weights: s x s mixing weights, row-major
        blocks: s x s grid of `ns` documents, `blocks[j][k]` is `P^(jk)`
        assembled: The assembled sn x sn matrix, informational only
        variant: `q1`, `q2` or `q3` for models induced by a mutation
    """

    kind: str
    s: int
    n: int
    weights: List[List[float]]
    blocks: List[List[TensorDocument]]
    assembled: List[List[float]]
    variant: Optional[str] = field(default=None, metadata=_skip_none)


@dataclass
class StateDocument(DataClassJsonMixin):
    """A stacked state `(X^(1), ..., X^(s))`.

    Attributes:
        kind: Always `state`
        s: Number of parts
        n: Length of every part
        parts: The parts
    """

    kind: str
    s: int
    n: int
    parts: List[List[float]]


@dataclass
class IterationDocument(DataClassJsonMixin):
    """The outcome of iterating a block model.

    Attributes:
        kind: Always `iteration`
        steps: Number of steps performed
        converged: Whether the step distance got below the tolerance
        distance: The last L1 step distance
        state: The last state
    """

    kind: str
    steps: int
    converged: bool
    distance: float
    state: StateDocument


@dataclass
class SlicesDocument(DataClassJsonMixin):
    """A family of slices, each an n x n grid (row-major nested lists).

    Attributes:
        kind: Always `slices`
        axis: `horizontal`, `lateral` or `frontal`
        n: The dimension
        slices: `slices[h - 1]` is slice h
    """

    kind: str
    axis: str
    n: int
    slices: List[List[List[float]]]


D = TypeVar("D", bound=DataClassJsonMixin)

# kinds of the documents that are not tensor documents
DOCUMENT_KINDS = ("marginals", "bmc", "state", "iteration", "slices")


def _accepted(expected_kind: Union[None, str, Sequence[str]]) -> Tuple[str, ...]:
    if expected_kind is None:
        return KINDS
    if isinstance(expected_kind, str):
        return (expected_kind,)
    return tuple(expected_kind)


def _flatten(array: np.ndarray) -> List[float]:
    if array.ndim == 3:
        array = np.moveaxis(array, 2, 0)
    return array.ravel().tolist()


def tensor_document(
    value: Union[StochasticArray, np.ndarray], eps: Optional[float] = None
) -> TensorDocument:
    """Describe a value (or a raw numpy array) as a
    [TensorDocument][cubestoch_api.document.TensorDocument].

    Raises:
        ShapeError: If a raw array is not square/cubical or of order > 3
    """
    if isinstance(value, StochasticArray):
        kind = next(k for k, t in KIND_TYPES.items() if type(value) is t)
        array = value.entries
    else:
        kind = "raw"
        array = np.asarray(value, dtype=np.float64)
        if array.ndim not in (1, 2, 3) or len(set(array.shape)) != 1:
            raise ShapeError(f"can not store an array of shape {array.shape}")
    return TensorDocument(
        kind, int(array.shape[0]), int(array.ndim), LAYOUT, _flatten(array), eps
    )


def from_tensor_document(
    document: TensorDocument,
    source: str = "<document>",
    expected_kind: Union[None, str, Sequence[str]] = None,
    tol: Optional[Tolerance] = None,
) -> Union[StochasticArray, np.ndarray]:
    """Turn a [TensorDocument][cubestoch_api.document.TensorDocument] back
    into a validated value.

    Args:
        document: The document
        source: Name used in error messages
        expected_kind: Kind (or kinds) the caller accepts, any if omitted
        tol: Tolerance, the `eps` of the document takes precedence

    Raises:
        DocumentParseError: If the kind or layout is unknown
        KindMismatchError: If the kind is not one of `expected_kind`
        ShapeError: If the number of values does not match `n` and `order`
        StochasticityError: If the values fail the check of their kind
    """
    if document.kind not in KINDS:
        raise DocumentParseError(
            source, f"unknown kind `{document.kind}`, expected one of {', '.join(KINDS)}"
        )
    accepted = _accepted(expected_kind)
    if document.kind not in accepted:
        raise KindMismatchError(source, document.kind, accepted)
    if document.layout != LAYOUT:
        raise DocumentParseError(
            source, f"unknown layout `{document.layout}`, expected `{LAYOUT}`"
        )

    n, order = document.n, document.order
    if not isinstance(n, int) or not isinstance(order, int):
        raise DocumentParseError(source, "`n` and `order` must be integers")
    if not isinstance(document.values, list):
        raise DocumentParseError(source, "`values` must be a list of numbers")
    if n < 1:
        raise ShapeError(f"{source}: n must be at least 1, got {n}")
    if document.kind != "raw" and order != KIND_ORDERS[document.kind]:
        raise ShapeError(
            f"{source}: kind `{document.kind}` has order "
            f"{KIND_ORDERS[document.kind]}, document says {order}"
        )
    if order not in (1, 2, 3):
        raise ShapeError(f"{source}: order must be 1, 2 or 3, got {order}")
    if len(document.values) != n**order:
        raise ShapeError(
            f"{source}: expected n^{order} = {n**order} values, got {len(document.values)}"
        )

    try:
        array = np.asarray(document.values, dtype=np.float64).reshape((n,) * order)
    except (TypeError, ValueError) as e:
        raise DocumentParseError(source, f"values must be numbers ({e})") from e
    if order == 3:
        array = np.moveaxis(array, 0, 2)

    if document.kind == "raw":
        return array.copy()
    if document.eps is not None:
        tol = Tolerance(document.eps)
    return KIND_TYPES[document.kind](array, tol or Tolerance())


def _stacked_document(state: StackedState) -> StateDocument:
    return StateDocument("state", state.s, state.n, [x.entries.tolist() for x in state.parts])


def to_document(value: Value, variant: Optional[str] = None) -> DataClassJsonMixin:
    """The document for any value the library produces.

    Args:
        value: A stochastic value, a raw array, a `(P1, P2)` marginal pair,
            a block model, a stacked state, an iteration result or a slice
            family
        variant: Chain variant recorded in model documents

    Raises:
        ShapeError: If a raw array can not be stored
    """
    if isinstance(value, BlockModel):
        return ModelDocument(
            "bmc",
            value.s,
            value.n,
            value.weights.entries.tolist(),
            [[tensor_document(b) for b in row] for row in value.blocks],
            value.assembled.tolist(),
            variant,
        )
    if isinstance(value, StackedState):
        return _stacked_document(value)
    if isinstance(value, IterationResult):
        return IterationDocument(
            "iteration",
            value.steps,
            value.converged,
            value.distance,
            _stacked_document(value.state),
        )
    if isinstance(value, SliceFamily):
        return SlicesDocument(
            "slices", str(value.axis), len(value), [s.tolist() for s in value.slices]
        )
    if isinstance(value, tuple):
        first, second = value
        return MarginalsDocument("marginals", tensor_document(first), tensor_document(second))
    return tensor_document(value)


def dumps(value: Value, indent: int = 2, variant: Optional[str] = None) -> str:
    """Serialize a value to JSON text (with a trailing newline)."""
    return to_document(value, variant).to_json(indent=indent) + "\n"


def save(value: Value, path: Path, indent: int = 2, variant: Optional[str] = None) -> Path:
    """Write a value to a JSON file, creating parent directories.

    Returns:
        The path written to
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(value, indent, variant))
    return path


def _read_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text())
    except OSError as e:
        raise DocumentParseError(str(path), e.strerror or str(e)) from e
    except json.JSONDecodeError as e:
        raise DocumentParseError(str(path), f"malformed JSON ({e})") from e
    if not isinstance(data, dict):
        raise DocumentParseError(str(path), "top level must be an object")
    return data


def _decode(cls: Type[D], data: dict, source: str) -> D:
    missing = [f.name for f in fields(cls) if f.name not in data and f.default is MISSING]
    if missing:
        raise DocumentParseError(source, f"missing {', '.join(f'`{m}`' for m in missing)}")
    try:
        return cls.from_dict(data)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise DocumentParseError(source, f"not a valid {cls.__name__} ({e!r})") from e


def document_kind(path: Path) -> str:
    """The `kind` field of a JSON document.

    Raises:
        DocumentParseError: If the file is not a JSON document with a kind
    """
    kind = _read_json(path).get("kind")
    if not isinstance(kind, str):
        raise DocumentParseError(str(path), "missing `kind`")
    return kind


def load(
    path: Path,
    expected_kind: Union[None, str, Sequence[str]] = None,
    tol: Optional[Tolerance] = None,
) -> Union[StochasticArray, np.ndarray]:
    """Load and validate a tensor document.

    Example:
        ```python
        from pathlib import Path
        from cubestoch_api.document import load

        p = load(Path("P.json"), "cs12")
        ```

    Args:
        path: The JSON file
        expected_kind: Kind (or kinds) the caller accepts, any if omitted
        tol: Tolerance, the `eps` of the document takes precedence

    Returns:
        A validated value of the type that belongs to the kind, or a plain
        array for `raw` documents

    Raises:
        DocumentParseError: If the file is malformed
        KindMismatchError: If the kind is not one of `expected_kind`
        ShapeError: If the number of values does not match
        StochasticityError: If the values fail the check of their kind
    """
    source = str(path)
    data = _read_json(path)
    if data.get("kind") in DOCUMENT_KINDS:
        raise KindMismatchError(source, data["kind"], _accepted(expected_kind))
    document = _decode(TensorDocument, data, source)
    return from_tensor_document(document, source, expected_kind, tol)


def _expect_kind(data: dict, source: str, kind: str) -> None:
    if data.get("kind") != kind:
        raise KindMismatchError(source, str(data.get("kind")), (kind,))


def load_marginals(
    path: Path, tol: Optional[Tolerance] = None
) -> Tuple[StochasticMatrix, StochasticMatrix]:
    """Load a marginals document as the pair `(P1, P2)`."""
    data = _read_json(path)
    _expect_kind(data, str(path), "marginals")
    document = _decode(MarginalsDocument, data, str(path))
    first = from_tensor_document(document.first, str(path), "ns", tol)
    second = from_tensor_document(document.second, str(path), "ns", tol)
    return first, second  # type: ignore[return-value]


def load_model(path: Path, tol: Optional[Tolerance] = None) -> BlockModel:
    """Load a block Markov model.

    Raises:
        DocumentParseError: If the file is malformed
        KindMismatchError: If it is not a `bmc` document
        DomainError: If the mixing weights are invalid
        ShapeError: If the grid does not fit `s`
        StochasticityError: If a block is not column stochastic
    """
    source = str(path)
    data = _read_json(path)
    _expect_kind(data, source, "bmc")
    document = _decode(ModelDocument, data, source)
    tol = tol or Tolerance()
    weights = MixingWeights(np.asarray(document.weights, dtype=np.float64), tol)
    grid = tuple(
        tuple(from_tensor_document(b, source, "ns", tol) for b in row) for row in document.blocks
    )
    if weights.s == 2:
        return BivariateModel(grid, weights)  # type: ignore[arg-type]
    return BlockModel(grid, weights)  # type: ignore[arg-type]


def _state_from(document: StateDocument, source: str, tol: Optional[Tolerance]) -> StackedState:
    if len(document.parts) != document.s or any(len(x) != document.n for x in document.parts):
        raise ShapeError(f"{source}: expected {document.s} parts of length {document.n}")
    return StackedState.of(*document.parts, tol=tol or Tolerance())


def load_state(path: Path, tol: Optional[Tolerance] = None) -> StackedState:
    """Load a stacked state.

    Raises:
        DocumentParseError: If the file is malformed
        KindMismatchError: If it is not a `state` document
        ShapeError: If the parts do not match `s` and `n`
        StochasticityError: If a part is off the simplex
    """
    source = str(path)
    data = _read_json(path)
    _expect_kind(data, source, "state")
    return _state_from(_decode(StateDocument, data, source), source, tol)


def load_iteration(path: Path, tol: Optional[Tolerance] = None) -> IterationResult:
    """Load the outcome of an iteration, the state gets validated again."""
    source = str(path)
    data = _read_json(path)
    _expect_kind(data, source, "iteration")
    document = _decode(IterationDocument, data, source)
    return IterationResult(
        _state_from(document.state, source, tol),
        document.steps,
        document.converged,
        document.distance,
    )


# where the slice index goes when a family is stacked back into a cube
_SLICE_POSITION = {SliceAxis.HORIZONTAL: 0, SliceAxis.LATERAL: 1, SliceAxis.FRONTAL: 2}


def load_slices(path: Path, tol: Optional[Tolerance] = None) -> SliceFamily:
    """Load a slice family.

    Every slice must be a finite, nonnegative n x n grid. Frontal slices of a
    (1,2)-stochastic matrix are the only families written by cubestoch, so a
    frontal family must also have mass 1 in every slice.

    Raises:
        DocumentParseError: If the file is malformed or the axis unknown
        KindMismatchError: If it is not a `slices` document
        ShapeError: If there are not `n` slices of shape n x n
        StochasticityError: If an entry is negative or not finite, or a
            frontal slice does not sum to one
    """
    source = str(path)
    data = _read_json(path)
    _expect_kind(data, source, "slices")
    document = _decode(SlicesDocument, data, source)

    try:
        axis = SliceAxis(document.axis)
    except ValueError:
        raise DocumentParseError(
            source, f"unknown axis `{document.axis}`, expected horizontal, lateral or frontal"
        ) from None
    try:
        stacked = np.asarray(document.slices, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise DocumentParseError(source, f"slices must be grids of numbers ({e})") from e

    n = document.n
    if not isinstance(n, int) or n < 1 or stacked.shape != (n, n, n):
        raise ShapeError(f"{source}: expected {n} slices of shape {n} x {n}, got {stacked.shape}")

    cube = np.moveaxis(stacked, 0, _SLICE_POSITION[axis])
    report = validate_type(cube, StochasticType.TYPE_12, tol or Tolerance())
    if not report and (axis is SliceAxis.FRONTAL or report.problem != "sum"):
        raise StochasticityError(report)

    return SliceFamily(axis, tuple(grid.copy() for grid in stacked))


def load_array(path: Path) -> Tuple[TensorDocument, np.ndarray]:
    """Read a tensor document without checking its kind.

    Returns:
        The document and its values as an array of shape `(n,) * order`

    Raises:
        DocumentParseError: If the file is malformed or the kind unknown
        KindMismatchError: If it is not a tensor document
        ShapeError: If the number of values does not match
    """
    source = str(path)
    data = _read_json(path)
    if data.get("kind") in DOCUMENT_KINDS:
        raise KindMismatchError(source, data["kind"], KINDS)
    document = _decode(TensorDocument, data, source)
    if document.kind not in KINDS:
        raise DocumentParseError(
            source, f"unknown kind `{document.kind}`, expected one of {', '.join(KINDS)}"
        )
    array = from_tensor_document(replace(document, kind="raw"), source)
    return document, array  # type: ignore[return-value]


def dumps_matricized_csv(p: Union[StochasticArray, np.ndarray]) -> str:
    """The frontal matricization `(P_{::1} | ... | P_{::n})` as CSV text,
    n rows of n^2 values each."""
    array = p.entries if isinstance(p, StochasticArray) else np.asarray(p, dtype=np.float64)
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(matricize_frontal(array).tolist())
    return buffer.getvalue()


def save_matricized_csv(p: Union[StochasticArray, np.ndarray], path: Path) -> Path:
    """Write [dumps_matricized_csv][cubestoch_api.document.dumps_matricized_csv]
    to a file.

    Returns:
        The path written to
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_matricized_csv(p))
    return path


def load_matricized_csv(
    path: Path,
    n: Optional[int] = None,
    kind: str = "cs12",
    tol: Optional[Tolerance] = None,
) -> Union[StochasticArray, np.ndarray]:
    """Read a CSV frontal matricization back into a cubic matrix.

    Columns `(k - 1) * n + 1 .. k * n` form frontal slice k.

    Args:
        path: The CSV file
        n: Expected dimension, taken from the row count if omitted
        kind: `cs12`, `3stoch` or `raw`
        tol: Tolerance for the check of `kind`

    Raises:
        DocumentParseError: If the file can not be read or holds a non-number
        ShapeError: If rows are ragged or the grid is not n x n^2
        StochasticityError: If the grid fails the check of `kind`
    """
    source = str(path)
    if kind not in ("cs12", "3stoch", "raw"):
        raise DocumentParseError(source, f"can not read a `{kind}` grid from CSV")
    try:
        with path.open(newline="") as f:
            rows = [row for row in csv.reader(f) if row]
    except OSError as e:
        raise DocumentParseError(source, e.strerror or str(e)) from e

    if not rows:
        raise ShapeError(f"{source}: empty CSV")
    if len({len(row) for row in rows}) != 1:
        raise ShapeError(f"{source}: ragged rows with lengths {sorted({len(r) for r in rows})}")
    expected = n if n is not None else len(rows)
    if len(rows) != expected or len(rows[0]) != expected * expected:
        raise ShapeError(
            f"{source}: expected {expected} x {expected * expected} values, "
            f"got {len(rows)} x {len(rows[0])}"
        )

    try:
        matrix = np.array([[float(cell) for cell in row] for row in rows], dtype=np.float64)
    except ValueError as e:
        raise DocumentParseError(source, str(e)) from e

    array = dematricize_frontal(matrix)
    if kind == "raw":
        return array
    return KIND_TYPES[kind](array, tol or Tolerance())
