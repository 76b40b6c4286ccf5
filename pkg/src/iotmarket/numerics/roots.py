# iotmarket/numerics/roots.py
"""
Bracketed root finding (Brent: bisection + secant + inverse quadratic
interpolation). The bracket is preserved at every step, so a flat function
near the root slows convergence but never loses the root.
"""

from __future__ import annotations
from typing import Callable
import logging
import math
import sys

from .numerics_config import DEFAULT_TOLERANCES, Tolerances
from .numerics_exceptions import NonFiniteValueError, NoSignChangeError, NumericsError

logger = logging.getLogger("iotmarket.numerics")

EPS = sys.float_info.epsilon
MAX_ITER = 500


def find_root(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Return x in [a, b] with f(x) ≈ 0, bracket width ≤ tol.root_x."""

    def eval_f(x: float) -> float:
        y = f(x)
        if not math.isfinite(y):
            raise NonFiniteValueError(x, y, "find_root")
        return y

    fa = eval_f(a)
    if fa == 0.0:
        return a
    fb = eval_f(b)
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise NoSignChangeError(a, b, fa, fb)

    # b is the best estimate, c the counterpoint keeping the bracket
    if abs(fa) < abs(fb):
        a, b, fa, fb = b, a, fb, fa
    c, fc = a, fa
    d = e = b - a

    for iteration in range(MAX_ITER):
        xtol = max(0.5 * tol.root_x, 2.0 * EPS * abs(b))
        m = 0.5 * (c - b)
        if abs(m) <= xtol or fb == 0.0:
            logger.debug({"event": "find_root.converged", "root": b, "iterations": iteration})
            return b

        if abs(e) >= xtol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            else:
                p = -p
            if 2.0 * p < min(3.0 * m * q - abs(xtol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        else:
            d = e = m

        a, fa = b, fb
        if abs(d) > xtol:
            b = b + d
        else:
            b = b + (xtol if m > 0 else -xtol)
        fb = eval_f(b)

        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        elif abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb

    raise NumericsError(f"find_root: no convergence after {MAX_ITER} iterations")
