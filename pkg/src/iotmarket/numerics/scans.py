# iotmarket/numerics/scans.py
"""
Monotonicity scans on uniform grids.
"""

from __future__ import annotations
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Tuple
import math

from .numerics_exceptions import NonFiniteValueError, NumericsError

STRICT_MARGIN = 1e-12


class Monotonicity(str, Enum):
    INCREASING = "increasing"
    NONINCREASING = "nonincreasing"
    NONDECREASING = "nondecreasing"


@dataclass(frozen=True)
class ScanResult:
    passed: bool
    witness: Optional[Tuple[float, float, float, float]] = None  # (x0, f0, x1, f1)

    def __bool__(self) -> bool:
        return self.passed


def scan_values(
    xs: Sequence[float],
    ys: Sequence[float],
    direction: Monotonicity,
    slack: float = 0.0,
) -> ScanResult:
    """
    First adjacent pair of samples violating `direction`, if any.

    `slack` tolerates steps of that size against a non-strict direction.
    """
    direction = Monotonicity(direction)
    for x, y in zip(xs, ys):
        if not math.isfinite(y):
            raise NonFiniteValueError(x, y, "monotone_scan")
    for x0, y0, x1, y1 in zip(xs[:-1], ys[:-1], xs[1:], ys[1:]):
        step = y1 - y0
        if direction is Monotonicity.INCREASING:
            bad = step < STRICT_MARGIN
        elif direction is Monotonicity.NONDECREASING:
            bad = step < -slack
        else:
            bad = step > slack
        if bad:
            return ScanResult(False, (x0, y0, x1, y1))
    return ScanResult(True)


def monotone_scan(
    f: Callable[[float], float],
    a: float,
    b: float,
    n: int,
    direction: Monotonicity,
) -> ScanResult:
    """Evaluate f on n+1 uniform points of [a, b] and check `direction`."""
    if n < 8:
        raise NumericsError(f"monotone_scan: n must be at least 8, got {n}")
    xs = [a + (b - a) * i / n for i in range(n + 1)]
    return scan_values(xs, [f(x) for x in xs], direction)
