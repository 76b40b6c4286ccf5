# iotmarket/solver/solver_exceptions.py
"""
Solver Exceptions
-----------------

Errors raised while building an optimal cut-off rule.
"""


class SolverError(Exception):
    """Base solver exception."""


class ThresholdError(SolverError):
    """Raised when the threshold boundary condition contradicts the pattern classification."""
