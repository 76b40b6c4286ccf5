# iotmarket/mechanism/formulas.py
"""
Mechanism Formulas
------------------

Pointwise quantities of a cut-off mechanism:
  • utility u^K(λ, t)         = ∫_t^{hi} R^K(λ, x) f^K̄(x) dx
  • marginal_D D^K(λ, t)      = ∫_t^{hi} ∂R^K/∂λ(λ, x) f^K̄(x) dx
  • virtual_surplus U^K_Y     (U_W = u, U_R = u − D·(1−F)/f)
  • omega ω^K̄(λ)              = γ^K(λ) f^K(λ)
  • theta θ^K_Y(λ, x)         (closed form, no quadrature)
  • eta η_Y(λ_S, λ_B)         = θ^S(λ_S, λ_B) + θ^B(λ_B, λ_S)

t is the lowest matched opponent type; t = hi^K̄ is the empty matched set.
"""

from __future__ import annotations
from typing import Callable, Sequence
import math

from ..market import MarketSpec, Side, TypeDistribution, kernel_derivative, reward_kernel
from ..numerics import DEFAULT_TOLERANCES, Tolerances, integrate
from .mechanism_types import Objective


# ---------------------------------------------------------------------------
# Type-space integrals
# ---------------------------------------------------------------------------

def integrate_types(
    dist: TypeDistribution,
    g: Callable[[float], float],
    knots: Sequence[float],
    tol: Tolerances = DEFAULT_TOLERANCES,
    weighted: bool = True,
) -> float:
    """
    ∫ g(λ) f(λ) dλ (weighted) or ∫ g(λ) dλ over consecutive knots.

    With an infinite density at lo the integral is taken in u = F(λ), where
    the weighted integrand is g(F⁻¹(u)) and the unweighted one g/f.
    """
    parts = []
    if dist.singular_lo:
        def h(u: float) -> float:
            lam = dist.inverse_cdf(min(1.0, max(0.0, u)))
            return g(lam) if weighted else g(lam) / dist.density_open(lam)
        for a, b in zip(knots[:-1], knots[1:]):
            if b > a:
                parts.append(integrate(h, dist.cdf(a), dist.cdf(b), tol))
    else:
        def h(lam: float) -> float:
            return g(lam) * dist.density(lam) if weighted else g(lam)
        for a, b in zip(knots[:-1], knots[1:]):
            if b > a:
                parts.append(integrate(h, a, b, tol))
    return math.fsum(parts)


def _tail(spec: MarketSpec, side: Side, t: float, g, tol: Tolerances) -> float:
    opp = spec.distribution(Side(side).opposite)
    t = min(max(t, opp.lo), opp.hi)
    if t >= opp.hi:
        return 0.0
    return integrate_types(opp, g, (t, opp.hi), tol)


def utility(spec: MarketSpec, side: Side, lam: float, t: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return _tail(spec, side, t, lambda x: reward_kernel(spec, side, lam, x), tol)


def marginal_D(spec: MarketSpec, side: Side, lam: float, t: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    return _tail(spec, side, t, lambda x: kernel_derivative(spec, side, lam, x), tol)


def virtual_surplus(
    spec: MarketSpec,
    obj: Objective,
    side: Side,
    lam: float,
    t: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    u = utility(spec, side, lam, t, tol)
    if Objective(obj) is Objective.WELFARE:
        return u
    hc = spec.distribution(side).hazard_complement(lam)
    if hc == 0.0:
        return u
    return u - marginal_D(spec, side, lam, t, tol) * hc


def omega(spec: MarketSpec, side: Side, lam: float) -> float:
    """γ^K(λ)·f^K(λ) for K = side (the weight ω^K̄ of the regularity ratio)."""
    return spec.gamma(side).evaluate(lam=lam) * spec.distribution(side).density_open(lam)


def theta(spec: MarketSpec, obj: Objective, side: Side, lam: float, x_opp: float) -> float:
    side = Side(side)
    own = spec.distribution(side)
    f_opp = spec.distribution(side.opposite).density_open(x_opp)
    if f_opp == 0.0:
        return 0.0
    r = reward_kernel(spec, side, lam, x_opp)
    f_own = own.density_open(lam)
    if Objective(obj) is Objective.WELFARE:
        return r * f_opp * f_own
    tail = 1.0 - own.cdf(lam)
    dr = kernel_derivative(spec, side, lam, x_opp) if tail > 0.0 else 0.0
    return f_opp * (r * f_own - tail * dr)


def eta(spec: MarketSpec, obj: Objective, lam_s: float, lam_b: float) -> float:
    return theta(spec, obj, Side.SELLER, lam_s, lam_b) + theta(spec, obj, Side.BUYER, lam_b, lam_s)


def eta_oriented(spec: MarketSpec, obj: Objective, side: Side, lam_own: float, lam_opp: float) -> float:
    """η^K(λ_own, λ_opp): the joint marginal seen from `side`."""
    if Side(side) is Side.SELLER:
        return eta(spec, obj, lam_own, lam_opp)
    return eta(spec, obj, lam_opp, lam_own)
