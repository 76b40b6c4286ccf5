# iotmarket/market/market_exceptions.py
"""
Market Exceptions
-----------------

Errors raised by distributions, market specs and kernel evaluation.
"""

from typing import Dict


class MarketError(Exception):
    """Base market-model error."""


class MarketSpecError(MarketError):
    """Raised when a market description violates a structural invariant."""


class OutOfSupportError(MarketError):
    """Raised when a type (or probability) lies outside its domain."""


class ZeroDensityError(MarketError):
    """Raised when a formula divides by a vanishing density."""


class KernelEvaluationError(MarketError):
    """Raised when a reward kernel fails to evaluate at a point."""

    def __init__(self, side: str, point: Dict[str, float], cause: Exception):
        self.side = side
        self.point = dict(point)
        self.cause = cause
        where = ", ".join(f"{k}={v!r}" for k, v in self.point.items())
        super().__init__(f"R^{side} at ({where}): {cause}")
