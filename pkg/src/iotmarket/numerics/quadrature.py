# iotmarket/numerics/quadrature.py
"""
Adaptive Simpson quadrature.

Every integral of the mechanism layer goes through `integrate`; integrals
of functions built from sampled (piecewise-linear) curves go through
`integrate_piecewise` so each smooth piece is handled separately.
"""

from __future__ import annotations
from typing import Callable, Sequence
import math

from .numerics_config import DEFAULT_TOLERANCES, Tolerances
from .numerics_exceptions import NonFiniteValueError, QuadratureDepthError


def _checked(f: Callable[[float], float]) -> Callable[[float], float]:
    def g(x: float) -> float:
        y = f(x)
        if not math.isfinite(y):
            raise NonFiniteValueError(x, y, "integrate")
        return y
    return g


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Adaptive Simpson estimate of ∫_a^b f.

    A panel is accepted when |S(left)+S(right) − S(whole)|/15 is below
    max(abs share, quad_rel·|panel estimate|); the absolute share halves
    with every subdivision.
    """
    if a == b:
        return 0.0
    if a > b:
        return -integrate(f, b, a, tol)

    g = _checked(f)
    rel = tol.quad_rel
    max_depth = tol.max_depth

    def simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 6.0 * (fa + 4.0 * fm + fb)

    def adaptive(lo, hi, flo, fmid, fhi, whole, abs_tol, depth):
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = g(lm)
        frm = g(rm)
        left = simpson(flo, flm, fmid, mid - lo)
        right = simpson(fmid, frm, fhi, hi - mid)
        combined = left + right
        err = (combined - whole) / 15.0
        if abs(err) <= max(abs_tol, rel * abs(combined)):
            return combined + err
        if depth >= max_depth:
            raise QuadratureDepthError(lo, hi, max_depth)
        return (
            adaptive(lo, mid, flo, flm, fmid, left, 0.5 * abs_tol, depth + 1)
            + adaptive(mid, hi, fmid, frm, fhi, right, 0.5 * abs_tol, depth + 1)
        )

    fa = g(a)
    fb = g(b)
    fm = g(0.5 * (a + b))
    whole = simpson(fa, fm, fb, b - a)
    return adaptive(a, b, fa, fm, fb, whole, tol.quad_abs, 0)


def integrate_piecewise(
    f: Callable[[float], float],
    knots: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Sum of `integrate` over consecutive knots (ascending)."""
    parts = [integrate(f, lo, hi, tol) for lo, hi in zip(knots[:-1], knots[1:]) if hi > lo]
    return math.fsum(parts)
