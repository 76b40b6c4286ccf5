# iotmarket/mechanism/objective.py
"""
Objective Evaluation
--------------------

  • objective_breakdown      - Z_W, Z_R through payments, Z_R through virtual surplus
  • matched_pairs_objective  - Z_Y as the η-integral over matched (seller, buyer) pairs
  • threshold_sweep          - Z_Y over block rules δ^K = lo + q·(hi − lo)
  • marginal_profile         - ∫_{τ(λ)}^{hi} η dx for each matched type
"""

from __future__ import annotations
from typing import List, Tuple
import logging
import math

import numpy as np

from ..market import MarketSpec, Side
from ..numerics import DEFAULT_TOLERANCES, Tolerances
from ..telemetry import span
from .formulas import eta_oriented, integrate_types, utility, virtual_surplus
from .mechanism_types import CutoffRule, Objective, ObjectiveBreakdown, PaymentSchedule, SideCutoff
from .payments import payment_at

logger = logging.getLogger("iotmarket.mechanism")


def _side_integral(spec: MarketSpec, cutoff: SideCutoff, g, tol: Tolerances) -> float:
    own = spec.distribution(cutoff.side)
    if cutoff.delta >= own.hi:
        return 0.0
    knots = cutoff.knots(cutoff.delta, own.hi)
    return integrate_types(own, g, knots, tol)


def _welfare(spec: MarketSpec, rule: CutoffRule, tol: Tolerances) -> float:
    parts = []
    for side in Side:
        cutoff = rule.side(side)
        parts.append(_side_integral(
            spec, cutoff, lambda x, c=cutoff: utility(spec, c.side, x, c.tau_at(x), tol), tol,
        ))
    return math.fsum(parts)


def _virtual(spec: MarketSpec, obj: Objective, rule: CutoffRule, tol: Tolerances) -> float:
    parts = []
    for side in Side:
        cutoff = rule.side(side)
        parts.append(_side_integral(
            spec, cutoff, lambda x, c=cutoff: virtual_surplus(spec, obj, c.side, x, c.tau_at(x), tol), tol,
        ))
    return math.fsum(parts)


def _revenue(spec: MarketSpec, rule: CutoffRule, payments: PaymentSchedule, tol: Tolerances) -> float:
    parts = []
    for side in Side:
        cutoff = rule.side(side)
        parts.append(_side_integral(
            spec, cutoff, lambda x, s=side: payment_at(spec, rule, payments, s, x, tol), tol,
        ))
    return math.fsum(parts)


def objective_breakdown(
    spec: MarketSpec,
    obj: Objective,
    rule: CutoffRule,
    payments: PaymentSchedule,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> ObjectiveBreakdown:
    with span("mechanism.objective", objective=Objective(obj).value) as result:
        breakdown = ObjectiveBreakdown(
            objective=Objective(obj),
            welfare=_welfare(spec, rule, tol),
            revenue=_revenue(spec, rule, payments, tol),
            revenue_virtual=_virtual(spec, Objective.REVENUE, rule, tol),
        )
        result.update(breakdown.as_dict())
    return breakdown


def objective_value(
    spec: MarketSpec,
    obj: Objective,
    rule: CutoffRule,
    payments: PaymentSchedule,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    return objective_breakdown(spec, obj, rule, payments, tol).value


# ---------------------------------------------------------------------------
# Pairwise form
# ---------------------------------------------------------------------------

def _eta_tail(spec: MarketSpec, obj: Objective, side: Side, lam: float, t: float, tol: Tolerances) -> float:
    opp = spec.distribution(Side(side).opposite)
    if t >= opp.hi:
        return 0.0
    return integrate_types(opp, lambda x: eta_oriented(spec, obj, side, lam, x), (t, opp.hi), tol, weighted=False)


def matched_pairs_objective(
    spec: MarketSpec,
    obj: Objective,
    rule: CutoffRule,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """∫_{δ^S}^{hi^S} ∫_{τ^S(λ)}^{hi^B} η_Y(λ, x) dx dλ."""
    cutoff = rule.seller
    hi = spec.distribution(Side.SELLER).hi
    if cutoff.delta >= hi:
        return 0.0
    return integrate_types(
        spec.distribution(Side.SELLER),
        lambda lam: _eta_tail(spec, obj, Side.SELLER, lam, cutoff.tau_at(lam), tol),
        cutoff.knots(cutoff.delta, hi),
        tol,
        weighted=False,
    )


def marginal_profile(
    spec: MarketSpec,
    obj: Objective,
    rule: CutoffRule,
    side: Side,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> List[Tuple[float, float]]:
    cutoff = rule.side(side)
    return [
        (lam, _eta_tail(spec, obj, cutoff.side, lam, tau, tol))
        for lam, tau in zip(cutoff.lam, cutoff.tau)
    ]


# ---------------------------------------------------------------------------
# Block rules
# ---------------------------------------------------------------------------

def uniform_threshold_rule(spec: MarketSpec, q: float, n: int = 2) -> CutoffRule:
    """Types ≥ δ^K are matched to every opponent ≥ δ^K̄, δ^K = lo^K + q·(hi^K − lo^K)."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"threshold quantile must lie in [0, 1], got {q}")
    deltas = {}
    for side in Side:
        d = spec.distribution(side)
        deltas[side] = d.hi if q == 1.0 else d.lo + q * d.width
    cutoffs = {}
    for side in Side:
        opp = spec.distribution(side.opposite)
        lam = np.linspace(deltas[side], spec.distribution(side).hi, n).tolist()
        cutoffs[side] = SideCutoff(
            side=side,
            delta=lam[0],
            lam=lam,
            tau=[deltas[side.opposite]] * n,
            lo_opp=opp.lo,
            hi_opp=opp.hi,
        )
    return CutoffRule(seller=cutoffs[Side.SELLER], buyer=cutoffs[Side.BUYER])


def threshold_sweep(
    spec: MarketSpec,
    obj: Objective,
    n: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> List[Tuple[float, float, float, float]]:
    """Rows (q, δ^S, δ^B, Z_Y) over n evenly spaced block rules."""
    if n < 2:
        raise ValueError("threshold_sweep needs at least two points")
    rows = []
    with span("mechanism.threshold_sweep", objective=Objective(obj).value, n=n):
        for q in np.linspace(0.0, 1.0, n).tolist():
            rule = uniform_threshold_rule(spec, q)
            value = _welfare(spec, rule, tol) if Objective(obj) is Objective.WELFARE else _virtual(spec, obj, rule, tol)
            rows.append((q, rule.seller.delta, rule.buyer.delta, value))
    return rows
