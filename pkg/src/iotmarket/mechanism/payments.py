# iotmarket/mechanism/payments.py
"""
Payments
--------

Envelope-formula payments for a cut-off rule:

    φ^K(λ) = u^K(λ, τ(λ)) − Q^K(λ),   Q^K(λ) = ∫_δ^λ D^K(x, τ(x)) dx

with the payoff of the lowest matched type fixed at 0. Unmatched types pay 0.
"""

from __future__ import annotations
from typing import List
import logging

from ..market import MarketSpec, Side
from ..numerics import DEFAULT_TOLERANCES, Tolerances, integrate, integrate_piecewise
from ..telemetry import span
from .formulas import marginal_D, utility
from .mechanism_types import CutoffRule, PaymentSchedule, SideCutoff, SidePayments

logger = logging.getLogger("iotmarket.mechanism")


def _rent_integrand(spec: MarketSpec, cutoff: SideCutoff, tol: Tolerances):
    side = cutoff.side
    return lambda x: marginal_D(spec, side, x, cutoff.tau_at(x), tol)


def information_rent(
    spec: MarketSpec,
    side: Side,
    rule: CutoffRule,
    lam: float,
    base: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Q^K between `base` and `lam` along the rule's cut-offs."""
    cutoff = rule.side(side)
    if lam == base:
        return 0.0
    a, b = (base, lam) if base < lam else (lam, base)
    value = integrate_piecewise(_rent_integrand(spec, cutoff, tol), cutoff.knots(a, b), tol)
    return value if base < lam else -value


def payment(
    spec: MarketSpec,
    side: Side,
    rule: CutoffRule,
    lam: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    cutoff = rule.side(side)
    if not cutoff.matched(lam):
        return 0.0
    u = utility(spec, side, lam, cutoff.tau_at(lam), tol)
    return u - information_rent(spec, side, rule, lam, cutoff.delta, tol)


def _side_payments(spec: MarketSpec, cutoff: SideCutoff, tol: Tolerances) -> SidePayments:
    side = cutoff.side
    rent_at = _rent_integrand(spec, cutoff, tol)
    rent: List[float] = [0.0]
    for a, b in zip(cutoff.lam[:-1], cutoff.lam[1:]):
        rent.append(rent[-1] + integrate(rent_at, a, b, tol))
    util = [utility(spec, side, lam, tau, tol) for lam, tau in zip(cutoff.lam, cutoff.tau)]
    phi = [u - q for u, q in zip(util, rent)]
    return SidePayments(side=side, lam=list(cutoff.lam), phi=phi, rent=rent, utility=util)


def build_payments(
    spec: MarketSpec,
    rule: CutoffRule,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> PaymentSchedule:
    """Payments at every rule sample, rents accumulated segment by segment."""
    with span("mechanism.build_payments") as result:
        schedule = PaymentSchedule(
            seller=_side_payments(spec, rule.seller, tol),
            buyer=_side_payments(spec, rule.buyer, tol),
        )
        result.update({
            "phi_S_delta": schedule.seller.phi[0],
            "phi_B_delta": schedule.buyer.phi[0],
        })
    return schedule


def payment_at(
    spec: MarketSpec,
    rule: CutoffRule,
    payments: PaymentSchedule,
    side: Side,
    lam: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    φ^K(λ) anywhere on the support.

    The rent is anchored at the last sample at or below λ and extended over
    the partial segment, so the schedule stays an exact envelope between
    samples.
    """
    cutoff = rule.side(side)
    if not cutoff.matched(lam):
        return 0.0
    sp = payments.side(side)
    if sp.formula is not None:
        return sp.formula.evaluate(lam=lam)
    i = sp.segment(lam)
    anchor = sp.lam[i]
    q = sp.rent[i]
    if lam != anchor:
        q += integrate(_rent_integrand(spec, cutoff, tol), anchor, lam, tol)
    u = utility(spec, side, lam, cutoff.tau_at(lam), tol)
    return sp.scale * (u - sp.rent_weight * q)
