import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, NoReturn, Optional

from cubestoch_cli import __version__

USAGE_EXIT_CODE = 4


@dataclass()
class CliArgs:
    command: Optional[str] = None
    verbosity: int = 0
    stack_always: bool = False
    eps: Optional[float] = None
    config: bool = False
    out: Optional[Path] = None
    lhs: Optional[Path] = None
    rhs: Optional[Path] = None
    rule: Optional[List[str]] = None
    matrix: Optional[Path] = None
    tensor: Optional[Path] = None
    side: Optional[str] = None
    m: Optional[int] = None
    method: str = "iterated"
    axis: Optional[str] = None
    index: Optional[int] = None
    csv: bool = False
    mixing: Optional[List[float]] = None
    mutate: Optional[Path] = None
    which: Optional[str] = None
    model: Optional[Path] = None
    x0: Optional[Path] = None
    tol: Optional[float] = None
    max_steps: Optional[int] = None
    x: Optional[Path] = None
    sigma: Optional[List[int]] = None
    require_symmetric: bool = False
    file: Optional[Path] = None
    kind: Optional[str] = None
    scenario: Optional[Path] = None
    generate_kind: Optional[str] = None
    n: Optional[int] = None
    seed: Optional[int] = None
    sparsity: float = 0.0


class ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors with exit code 4."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT_CODE, f"{self.prog}: error: {message}\n")


def _add_tensor(
    parser: argparse.ArgumentParser,
    description: str = "cs12 document (.json) or matricization (.csv)",
):
    parser.add_argument("tensor", type=Path, help=description)


def _add_rule(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-r",
        "--rule",
        nargs="+",
        metavar="RULE",
        required=True,
        help="Multiplication rule: `dot`, `star` or `w <l1> <l2>` (weighted, l1 + l2 = 1)",
    )


def _add_mixing(parser: argparse.ArgumentParser):
    parser.add_argument(
        "-l",
        "--lambda",
        dest="mixing",
        nargs=4,
        type=float,
        required=True,
        metavar=("L11", "L12", "L21", "L22"),
        help="Mixing weights, row-major, nonnegative with unit row sums",
    )


def parse_args(override_args: Optional[List[str]] = None) -> CliArgs:
    parser = ArgumentParser(
        prog="cubestoch",
        description="Compute with cubic stochastic matrices of type (1,2): "
        "multiplications, actions of column stochastic matrices, marginals and "
        "the induced bivariate Markov chains.",
        add_help=False,
    )

    options_group = parser.add_argument_group(
        "Options", "Options to change the behaviour of cubestoch (put them before the command)"
    )
    info_group = parser.add_argument_group("Info", "Info about the current cubestoch installation")

    options_group.add_argument(
        "--eps",
        required=False,
        dest="eps",
        type=float,
        default=None,
        help="Admission tolerance for all stochasticity checks (overrides `default_eps` from the config)",
    )

    options_group.add_argument(
        "-V",
        "--verbose",
        required=False,
        dest="verbosity",
        action="count",
        default=0,
        help="Verbosity levels in the console: -V = 'fatal' -VV = 'warnings' -VVV = 'info'",
    )

    options_group.add_argument(
        "--stack-always",
        required=False,
        dest="stack_always",
        action="store_true",
        help="Always show the stack trace on any log outputs.",
    )

    info_group.add_argument("-h", "--help", action="help", help="show this help message and exit")

    info_group.add_argument("-v", "--version", action="version", version=__version__)

    info_group.add_argument(
        "--config-path",
        required=False,
        dest="config",
        action="store_true",
        help="Print path to the config file.",
    )

    output_parent = ArgumentParser(add_help=False)
    output_parent.add_argument(
        "-o",
        "--out",
        type=Path,
        default=None,
        help="Output file (a directory for `scenario`), stdout if omitted",
    )

    commands = parser.add_subparsers(dest="command", metavar="COMMAND", title="Commands")

    mul = commands.add_parser("mul", parents=[output_parent], help="Multiply two cs12 matrices")
    mul.add_argument("lhs", type=Path, help="Left factor")
    mul.add_argument("rhs", type=Path, help="Right factor")
    _add_rule(mul)

    act = commands.add_parser(
        "act",
        parents=[output_parent],
        help="Act with a column stochastic matrix on the first or second index",
    )
    act.add_argument("matrix", type=Path, help="ns document of the acting matrix")
    _add_tensor(act)
    act.add_argument(
        "-s",
        "--side",
        choices=["1", "2", "both"],
        required=True,
        help="1 = paternal (first) index, 2 = maternal (second) index, both = both at once",
    )

    power = commands.add_parser("power", parents=[output_parent], help="m-th power under a rule")
    _add_tensor(power)
    power.add_argument("-m", type=int, required=True, help="Exponent, at least 1")
    _add_rule(power)
    power.add_argument(
        "--method",
        choices=["iterated", "squaring"],
        default="iterated",
        help="Repeated multiplication from the left or binary exponentiation",
    )

    transpose = commands.add_parser("transpose", parents=[output_parent], help="(1,2)-transpose")
    _add_tensor(transpose)

    marginals = commands.add_parser(
        "marginals", parents=[output_parent], help="Both accompanying matrices (P1, P2)"
    )
    _add_tensor(marginals)

    slice_ = commands.add_parser("slice", parents=[output_parent], help="One slice as a raw n x n grid")
    _add_tensor(slice_)
    slice_.add_argument(
        "--axis", choices=["horizontal", "lateral", "frontal"], required=True, help="Fixed index"
    )
    slice_.add_argument("--index", type=int, required=True, help="1-based value of the fixed index")

    matricize = commands.add_parser(
        "matricize", parents=[output_parent], help="Frontal unfolding (P_::1 | ... | P_::n)"
    )
    _add_tensor(matricize)
    matricize.add_argument(
        "--csv", action="store_true", help="Write CSV (the interchange format) instead of a text table"
    )

    bmc = commands.add_parser(
        "bmc", parents=[output_parent], help="Bivariate Markov model of a cs12 matrix"
    )
    _add_tensor(bmc)
    _add_mixing(bmc)
    bmc.add_argument("--mutate", type=Path, default=None, help="ns document of a mutation matrix")
    bmc.add_argument(
        "--which",
        choices=["q1", "q2", "q3"],
        default=None,
        help="Chain induced by the mutation: q1 = first index, q2 = second index, q3 = both",
    )

    iterate = commands.add_parser(
        "iterate", parents=[output_parent], help="Iterate a block Markov model until it settles"
    )
    iterate.add_argument("model", type=Path, help="bmc document")
    iterate.add_argument("--x0", type=Path, required=True, help="state document to start from")
    iterate.add_argument("--tol", type=float, default=None, help="L1 step distance counted as converged")
    iterate.add_argument("--max-steps", dest="max_steps", type=int, default=None, help="Step limit")

    qso_apply = commands.add_parser(
        "qso-apply", parents=[output_parent], help="Apply the quadratic stochastic operator"
    )
    _add_tensor(qso_apply, "3stoch document (.json) or matricization (.csv)")
    qso_apply.add_argument("--x", type=Path, required=True, help="vec document of the point")
    qso_apply.add_argument(
        "--require-symmetric",
        dest="require_symmetric",
        action="store_true",
        help="Reject coefficients with p_ijk != p_jik",
    )

    qso_permute = commands.add_parser(
        "qso-permute", parents=[output_parent], help="Permute the frontal slices of a 3stoch matrix"
    )
    _add_tensor(qso_permute, "3stoch document (.json) or matricization (.csv)")
    qso_permute.add_argument(
        "--sigma", nargs="+", type=int, required=True, help="1-based images, e.g. `2 3 1`"
    )

    validate = commands.add_parser("validate", help="Check a document against a stochastic kind")
    validate.add_argument("file", type=Path, help="JSON document or CSV matricization")
    validate.add_argument(
        "--kind",
        choices=[
            "ns", "cs12", "cs23", "cs13", "3stoch", "vec", "raw",
            "marginals", "bmc", "state", "iteration", "slices",
        ],
        default=None,
        help="Kind to check against, the kind stored in the document if omitted",
    )

    scenario = commands.add_parser(
        "scenario", parents=[output_parent], help="Run a YAML scenario file end-to-end"
    )
    scenario.add_argument("scenario", type=Path, help="Scenario file")

    generate = commands.add_parser(
        "generate", parents=[output_parent], help="Write a random valid document"
    )
    generate.add_argument(
        "generate_kind",
        metavar="KIND",
        choices=["ns", "cs12", "cs12sym", "3stoch", "vec"],
        help="ns, cs12, cs12sym, 3stoch or vec",
    )
    generate.add_argument("-n", type=int, required=True, help="Dimension")
    generate.add_argument("--seed", type=int, default=None, help="Seed of the random generator")
    generate.add_argument(
        "--sparsity", type=float, default=0.0, help="Share of entries set to zero before normalizing"
    )

    args = parser.parse_args(args=override_args)
    if args.command is None and not args.config:
        parser.error("a command is required")
    return CliArgs(**vars(args))
