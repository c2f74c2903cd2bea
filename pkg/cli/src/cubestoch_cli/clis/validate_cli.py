from typing import TYPE_CHECKING, Optional

import numpy as np

import cubestoch_cli.logger as logger
from cubestoch_api.core import StochasticType, Tolerance, ValidationReport, validate_type
from cubestoch_api.document import (
    DOCUMENT_KINDS,
    document_kind,
    load_array,
    load_iteration,
    load_marginals,
    load_matricized_csv,
    load_model,
    load_slices,
    load_state,
)
from cubestoch_api.error import KindMismatchError
from cubestoch_cli.clis.base_cli import CliBase
from cubestoch_cli.colors import Color, paint
from cubestoch_cli.util import error

if TYPE_CHECKING:
    from cubestoch_cli.arg_parser import CliArgs

TENSOR_TYPES = {
    "ns": StochasticType.COLUMN,
    "cs12": StochasticType.TYPE_12,
    "cs23": StochasticType.TYPE_23,
    "cs13": StochasticType.TYPE_13,
    "3stoch": StochasticType.THREE,
    "vec": StochasticType.SIMPLEX,
}

DOCUMENT_LOADERS = {
    "marginals": load_marginals,
    "bmc": load_model,
    "state": load_state,
    "iteration": load_iteration,
    "slices": load_slices,
}

VALIDATION_EXIT_CODE = 2


class ValidateCli(CliBase):
    def __init__(self, options: "CliArgs"):
        super().__init__(options)

        self.kind: Optional[str] = self.options.kind
        self.array: Optional[np.ndarray] = None
        self.report: Optional[ValidationReport] = None
        self.non_finite: Optional[tuple] = None

    def take_input(self):
        path = self.options.file
        if path.suffix.lower() == ".csv":
            self.array = load_matricized_csv(path, kind="raw")
            if self.kind is None:
                self.kind = "cs12"
            return

        stored = document_kind(path)
        if stored in DOCUMENT_KINDS:
            self.kind = self.kind or stored
            if self.kind != stored:
                raise KindMismatchError(str(path), stored, (self.kind,))
            return

        document, self.array = load_array(path)
        if document.eps is not None:
            self.tol = Tolerance(document.eps)
        self.kind = self.kind or document.kind
        if self.kind != "raw" and self.kind not in TENSOR_TYPES:
            raise KindMismatchError(str(path), document.kind, (self.kind,))

    def process(self):
        if self.array is None:
            # the loaders validate every part and raise on the first failure
            DOCUMENT_LOADERS[self.kind](self.options.file, self.tol)
            return

        if self.kind == "raw":
            # shape and length were checked on loading
            bad = np.argwhere(~np.isfinite(self.array))
            if len(bad):
                self.non_finite = tuple(int(i) + 1 for i in bad[0])
            return

        self.report = validate_type(self.array, TENSOR_TYPES[self.kind], self.tol)

    def show(self):
        path = self.options.file
        if self.non_finite is not None:
            where = "(" + ",".join(str(i) for i in self.non_finite) + ")"
            logger.warn(f"{path} failed validation: entry {where} is not finite")
            error(f"{path}: entry {where} is not finite")
            self.exit_code = VALIDATION_EXIT_CODE
            return

        if self.report is None and self.kind == "raw":
            shape = " x ".join(str(s) for s in self.array.shape)
            print(paint(f"{path}: valid raw {shape} grid", Color.OK))
            return

        if self.report is None:
            print(paint(f"{path}: valid {self.kind} document", Color.OK))
            return

        if self.report:
            print(paint(f"{path}: {self.report.describe()}", Color.OK))
            return

        logger.warn(f"{path} failed validation: {self.report.describe()}")
        error(f"{path}: {self.report.describe()}")
        self.exit_code = VALIDATION_EXIT_CODE
