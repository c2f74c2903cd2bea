from cubestoch_cli.clis.action_cli import ActCli
from cubestoch_cli.clis.algebra_cli import MulCli, PowerCli, TransposeCli
from cubestoch_cli.clis.decomp_cli import MarginalsCli, MatricizeCli, SliceCli
from cubestoch_cli.clis.generate_cli import GenerateCli
from cubestoch_cli.clis.markov_cli import BmcCli, IterateCli
from cubestoch_cli.clis.qso_cli import QsoApplyCli, QsoPermuteCli
from cubestoch_cli.clis.scenario_cli import ScenarioCli
from cubestoch_cli.clis.validate_cli import ValidateCli

__all__ = [
    "ActCli",
    "MulCli",
    "PowerCli",
    "TransposeCli",
    "MarginalsCli",
    "MatricizeCli",
    "SliceCli",
    "GenerateCli",
    "BmcCli",
    "IterateCli",
    "QsoApplyCli",
    "QsoPermuteCli",
    "ScenarioCli",
    "ValidateCli",
]
