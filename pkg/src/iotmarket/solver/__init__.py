# iotmarket/solver/__init__.py

from .cutoffs import build_rule, reciprocity_errors, solve_kappa, solve_threshold
from .patterns import PatternLabel, PatternReport, classify, rule_pattern
from .regularity import RegularityReport, RegularityWitness, check_regularity
from .solution import MechanismSolution, SolutionDiagnostics, solve_mechanism
from .solver_exceptions import SolverError, ThresholdError

__all__ = [
    "PatternLabel",
    "PatternReport",
    "classify",
    "rule_pattern",
    "solve_kappa",
    "solve_threshold",
    "build_rule",
    "reciprocity_errors",
    "RegularityReport",
    "RegularityWitness",
    "check_regularity",
    "MechanismSolution",
    "SolutionDiagnostics",
    "solve_mechanism",
    "SolverError",
    "ThresholdError",
]
