"""Scenario files: a cs12 matrix, a list of operations applied to it from
left to right and the reports to write about the result.

```yaml
tensor: P.json            # relative to the scenario file
operations:
  - act: {matrix: A.json, side: 1}
  - mul: {rule: star, operand: E.json}   # rule: dot | star | [l1, l2]
  - power: {m: 3, rule: dot}
  - transpose: {}
outputs:
  - result
  - marginals
  - slices
  - matricization
  - bmc: {lambda: [0.5, 0.5, 0.5, 0.5], mutate: A.json, which: q1}
  - iterate: {lambda: [0.5, 0.5, 0.5, 0.5], x0: [[1, 0], [0, 1]]}
```
"""

from dataclasses import MISSING, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, Union

import yaml
from dataclasses_json import DataClassJsonMixin, config

import cubestoch_cli.logger as logger
from cubestoch_api.actions import ActionSide, act, act_both, induced_chain
from cubestoch_api.algebra import MulRule, multiply, power, transpose12
from cubestoch_api.core import CubicStochastic12, Tolerance
from cubestoch_api.decomp import SliceAxis, marginals, slices
from cubestoch_api.document import save, save_matricized_csv
from cubestoch_api.error import DocumentParseError
from cubestoch_api.markov import BlockModel, StackedState, build_bivariate, iterate
from cubestoch_cli.util import load_input

RuleValue = Union[str, List[float]]


def rule_from_value(value: RuleValue, tol: Optional[Tolerance] = None) -> MulRule:
    """`dot`, `star` or `[l1, l2]` as a [MulRule][cubestoch_api.algebra.MulRule]."""
    if value == "dot":
        return MulRule.dot()
    if value == "star":
        return MulRule.star()
    if isinstance(value, list) and len(value) == 2:
        return MulRule.weighted(float(value[0]), float(value[1]), tol)
    raise DocumentParseError("scenario", f"unknown rule {value!r}, expected dot, star or [l1, l2]")


@dataclass
class ActStep(DataClassJsonMixin):
    matrix: str
    side: Union[int, str]


@dataclass
class MulStep(DataClassJsonMixin):
    operand: str
    rule: RuleValue = "dot"


@dataclass
class PowerStep(DataClassJsonMixin):
    m: int
    rule: RuleValue = "dot"
    method: str = "iterated"


@dataclass
class TransposeStep(DataClassJsonMixin):
    pass


@dataclass
class BmcReport(DataClassJsonMixin):
    mixing: List[float] = field(metadata=config(field_name="lambda"))
    mutate: Optional[str] = None
    which: Optional[str] = None


@dataclass
class IterateReport(DataClassJsonMixin):
    mixing: List[float] = field(metadata=config(field_name="lambda"))
    x0: List[List[float]] = field(default_factory=list)
    mutate: Optional[str] = None
    which: Optional[str] = None
    tol: Optional[float] = None
    max_steps: Optional[int] = None


Step = Union[ActStep, MulStep, PowerStep, TransposeStep]
Report = Union[str, BmcReport, IterateReport]

STEPS: Dict[str, Type[DataClassJsonMixin]] = {
    "act": ActStep,
    "mul": MulStep,
    "power": PowerStep,
    "transpose": TransposeStep,
}
PLAIN_REPORTS = ("result", "marginals", "slices", "matricization")
REPORTS: Dict[str, Type[DataClassJsonMixin]] = {"bmc": BmcReport, "iterate": IterateReport}

# one file per report
REPORT_FILES = {
    "result": "result.json",
    "marginals": "marginals.json",
    "slices": "slices.json",
    "matricization": "matricized.csv",
    "bmc": "bmc.json",
    "iterate": "iterate.json",
}


def _single_entry(entry: Any, source: str) -> tuple:
    if isinstance(entry, dict) and len(entry) == 1:
        name, body = next(iter(entry.items()))
        return name, body or {}
    raise DocumentParseError(source, f"expected a single `name: {{...}}` entry, got {entry!r}")


def _decode(cls: Type[DataClassJsonMixin], body: Any, source: str) -> Any:
    if not isinstance(body, dict):
        raise DocumentParseError(source, f"expected a mapping for {cls.__name__}, got {body!r}")
    try:
        decoded = cls.from_dict(body)
    except (KeyError, TypeError, ValueError) as e:
        raise DocumentParseError(source, f"invalid {cls.__name__} ({e!r})") from e

    # dataclasses-json fills missing required fields with None
    missing = [
        f.name
        for f in fields(decoded)
        if f.default is MISSING and f.default_factory is MISSING and getattr(decoded, f.name) is None
    ]
    if missing:
        raise DocumentParseError(source, f"{cls.__name__} is missing {', '.join(missing)}")
    if isinstance(decoded, (BmcReport, IterateReport)) and len(decoded.mixing) != 4:
        raise DocumentParseError(source, f"`lambda` needs 4 weights, got {decoded.mixing!r}")
    return decoded


@dataclass
class ScenarioConfig:
    """A parsed scenario file.

    Attributes:
        tensor: Path of the cs12 matrix, relative to `base`
        operations: Steps applied from left to right
        outputs: Reports to write, plain names or `bmc`/`iterate` settings
        base: Directory relative paths are resolved against
    """

    tensor: str
    operations: List[Step]
    outputs: List[Report]
    base: Path = Path(".")

    @classmethod
    def from_yaml(cls, path: Path) -> "ScenarioConfig":
        """Read a scenario file.

        Raises:
            DocumentParseError: If the file is not a valid scenario
        """
        source = str(path)
        try:
            data = yaml.safe_load(path.read_text())
        except OSError as e:
            raise DocumentParseError(source, e.strerror or str(e)) from e
        except yaml.YAMLError as e:
            raise DocumentParseError(source, f"malformed YAML ({e})") from e

        if not isinstance(data, dict) or not isinstance(data.get("tensor"), str):
            raise DocumentParseError(source, "a scenario needs a `tensor` path")

        operations: List[Step] = []
        for entry in data.get("operations") or []:
            name, body = _single_entry(entry, source)
            if name not in STEPS:
                raise DocumentParseError(
                    source, f"unknown operation `{name}`, expected one of {', '.join(STEPS)}"
                )
            operations.append(_decode(STEPS[name], body, source))

        outputs: List[Report] = []
        for entry in data.get("outputs") or ["result"]:
            if entry in PLAIN_REPORTS:
                outputs.append(entry)
                continue
            name, body = _single_entry(entry, source)
            if name not in REPORTS:
                raise DocumentParseError(
                    source,
                    f"unknown output `{name}`, expected one of "
                    f"{', '.join((*PLAIN_REPORTS, *REPORTS))}",
                )
            outputs.append(_decode(REPORTS[name], body, source))

        return cls(data["tensor"], operations, outputs, path.parent)

    def resolve(self, relative: str) -> Path:
        return self.base / relative


def apply_step(
    scenario: ScenarioConfig, step: Step, p: CubicStochastic12, tol: Tolerance
) -> CubicStochastic12:
    """Apply one operation, the result is validated by construction."""
    if isinstance(step, ActStep):
        matrix = load_input(scenario.resolve(step.matrix), "ns", tol)
        if str(step.side) == "both":
            return act_both(matrix, p)
        return act(matrix, p, ActionSide.parse(step.side))
    if isinstance(step, MulStep):
        operand = load_input(scenario.resolve(step.operand), "cs12", tol)
        return multiply(p, operand, rule_from_value(step.rule, tol))
    if isinstance(step, PowerStep):
        return power(p, step.m, rule_from_value(step.rule, tol), step.method)
    return transpose12(p)


def run_operations(
    scenario: ScenarioConfig, tol: Tolerance
) -> CubicStochastic12:
    p = load_input(scenario.resolve(scenario.tensor), "cs12", tol)
    for number, step in enumerate(scenario.operations, start=1):
        p = apply_step(scenario, step, p, tol)
        logger.info(f"Scenario step {number} ({type(step).__name__}) done")
    return p


def _model(
    scenario: ScenarioConfig,
    report: Union[BmcReport, IterateReport],
    p: CubicStochastic12,
    tol: Tolerance,
) -> BlockModel:
    mixing = [list(report.mixing[:2]), list(report.mixing[2:])]
    if report.mutate is None:
        return build_bivariate(p, mixing)
    mutation = load_input(scenario.resolve(report.mutate), "ns", tol)
    return induced_chain(mutation, p, mixing, report.which or "q3")


def write_reports(
    scenario: ScenarioConfig,
    p: CubicStochastic12,
    out_dir: Path,
    tol: Tolerance,
    indent: int = 2,
    max_steps: int = 10000,
    iterate_tol: float = 1e-10,
) -> List[Path]:
    """Write every requested report into `out_dir`.

    Returns:
        The files written, in the order of the outputs
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for report in scenario.outputs:
        if report == "result":
            written.append(save(p, out_dir / REPORT_FILES["result"], indent))
        elif report == "marginals":
            written.append(save(marginals(p), out_dir / REPORT_FILES["marginals"], indent))
        elif report == "slices":
            family = slices(p, SliceAxis.FRONTAL)
            written.append(save(family, out_dir / REPORT_FILES["slices"], indent))
        elif report == "matricization":
            written.append(save_matricized_csv(p, out_dir / REPORT_FILES["matricization"]))
        elif isinstance(report, BmcReport):
            model = _model(scenario, report, p, tol)
            written.append(save(model, out_dir / REPORT_FILES["bmc"], indent, report.which))
        elif isinstance(report, IterateReport):
            model = _model(scenario, report, p, tol)
            initial = StackedState.of(*report.x0, tol=tol)
            result = iterate(
                model,
                initial,
                max_steps if report.max_steps is None else report.max_steps,
                iterate_tol if report.tol is None else report.tol,
            )
            if not result.converged:
                logger.warn(f"Scenario iterate report did not converge in {result.steps} steps")
            written.append(save(result, out_dir / REPORT_FILES["iterate"], indent))

    for path in written:
        logger.info(f"Wrote {path}")
    return written
