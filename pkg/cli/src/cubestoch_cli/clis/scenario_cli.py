from pathlib import Path
from typing import TYPE_CHECKING, List, Optional

from cubestoch_cli.clis.base_cli import CliBase
from cubestoch_cli.colors import Color
from cubestoch_cli.scenario import ScenarioConfig, run_operations, write_reports
from cubestoch_cli.util import DotSpinner

if TYPE_CHECKING:
    from cubestoch_api.core import CubicStochastic12

    from cubestoch_cli.arg_parser import CliArgs


class ScenarioCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.scenario: Optional[ScenarioConfig] = None
        self.result: Optional["CubicStochastic12"] = None
        self.written: List[Path] = []

    @property
    def out_dir(self) -> Path:
        path = self.options.scenario
        return self.options.out or path.parent / f"{path.stem}_out"

    def take_input(self):
        self.scenario = ScenarioConfig.from_yaml(self.options.scenario)

    def process(self):
        with DotSpinner("Running scenario...") as s:
            self.result = run_operations(self.scenario, self.tol)
            self.written = write_reports(
                self.scenario,
                self.result,
                self.out_dir,
                self.tol,
                self.config.json_indent,
                self.config.iterate_max_steps,
                self.config.iterate_tol,
            )
            s.set_text(f"Wrote {len(self.written)} reports to {self.out_dir}", Color.OK)
            s.ok("✔")

    def show(self):
        for path in self.written:
            print(path)
