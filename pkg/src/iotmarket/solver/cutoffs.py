# iotmarket/solver/cutoffs.py
"""
Cut-off Construction
--------------------

Threshold first, curve second:
  1. δ^K from the boundary condition η^K(δ^K, hi^K̄) = 0 (lo^K on a
     complete-matched side, hi^K when even the top pair has η < 0)
  2. τ^K(λ) pointwise as the zero of x ↦ η^K(λ, x) on Λ^K̄

Feasibility (monotone τ, reciprocity across sides) is audited on the
sampled rule; failures become flags on the rule and are never repaired.
"""

from __future__ import annotations
from typing import Dict, List, Optional
import logging

import numpy as np

from ..constants import MIN_GRID_N, RECIPROCITY_TOL
from ..market import MarketSpec, Side
from ..mechanism import CutoffRule, Objective, SideCutoff, eta_oriented
from ..numerics import DEFAULT_TOLERANCES, Monotonicity, NumericsError, Tolerances, find_root, scan_values
from ..telemetry import span
from .patterns import PatternLabel, PatternReport, classify
from .solver_exceptions import SolverError, ThresholdError

logger = logging.getLogger("iotmarket.solver")


def solve_kappa(
    spec: MarketSpec,
    obj: Objective,
    side: Side,
    lam: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Optional[float]:
    """
    Lowest opponent type matched to `lam`.

    Returns lo^K̄ when η is non-negative already at the bottom opponent and
    None when even the top opponent has η < 0 (type unmatched).
    """
    side = Side(side)
    opp = spec.distribution(side.opposite)

    def h(x: float) -> float:
        return eta_oriented(spec, obj, side, lam, x)

    if h(opp.lo) >= 0.0:
        return opp.lo
    if h(opp.hi) < 0.0:
        return None
    return find_root(h, opp.lo, opp.hi, tol)


def solve_threshold(
    spec: MarketSpec,
    obj: Objective,
    side: Side,
    report: Optional[PatternReport] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    side = Side(side)
    report = report or classify(spec, obj)
    own = spec.distribution(side)
    if report.label(side) is PatternLabel.COMPLETE_MATCHED:
        return own.lo
    top_opp = spec.distribution(side.opposite).hi

    def g(lam: float) -> float:
        return eta_oriented(spec, obj, side, lam, top_opp)

    g_lo = g(own.lo)
    g_hi = g(own.hi)
    if g_lo >= 0.0:
        raise ThresholdError(
            f"{side.value}: bottom-eliminated by classification but η(lo, hi) = {g_lo:.6g} ≥ 0"
        )
    if g_hi < 0.0:
        logger.warning({"event": "solver.no_trade", "side": side.value, "eta_hi_hi": g_hi})
        return own.hi
    try:
        return find_root(g, own.lo, own.hi, tol)
    except NumericsError as exc:
        raise ThresholdError(f"{side.value}: {exc}") from exc


# ---------------------------------------------------------------------------
# Rule assembly
# ---------------------------------------------------------------------------

def _side_curve(
    spec: MarketSpec,
    obj: Objective,
    side: Side,
    delta: float,
    grid_n: int,
    eliminated: bool,
    tol: Tolerances,
    flags: List[str],
) -> SideCutoff:
    own = spec.distribution(side)
    opp = spec.distribution(side.opposite)
    lam = np.linspace(delta, own.hi, grid_n).tolist()
    tau: List[float] = []
    failures = 0
    for x in lam:
        try:
            k = solve_kappa(spec, obj, side, x, tol)
        except NumericsError as exc:
            failures += 1
            logger.warning({"event": "solver.kappa_failed", "side": side.value, "lam": x, "error": str(exc)})
            k = None
        tau.append(opp.hi if k is None else k)
    if failures:
        flags.append(f"kappa-failure:{side.value}:{failures}")
    if eliminated or delta >= own.hi:
        # the threshold type is matched to the top opponent only
        tau[0] = opp.hi
    return SideCutoff(side=side, delta=lam[0], lam=lam, tau=tau, lo_opp=opp.lo, hi_opp=opp.hi)


def reciprocity_errors(spec: MarketSpec, cutoffs: Dict[Side, SideCutoff], points: Optional[int] = None) -> Dict[str, float]:
    """
    max |τ^K̄(τ^K(λ)) − λ| / width^K over λ whose τ lies strictly inside Λ^K̄.

    `points` resamples each curve uniformly on [δ^K, hi^K]; by default the
    rule samples themselves are used.
    """
    out: Dict[str, float] = {}
    for side in Side:
        cut = cutoffs[side]
        back = cutoffs[side.opposite]
        width = spec.distribution(side).width
        if points is None:
            pairs = list(zip(cut.lam, cut.tau))
        else:
            xs = np.linspace(cut.delta, spec.distribution(side).hi, points).tolist()
            pairs = [(x, cut.tau_at(x)) for x in xs]
        worst = 0.0
        for lam, t in pairs:
            if not (cut.lo_opp < t < cut.hi_opp):
                continue
            worst = max(worst, abs(back.tau_at(t) - lam) / width)
        out[side.value] = worst
    return out


def build_rule(
    spec: MarketSpec,
    obj: Objective,
    grid_n: int,
    tol: Tolerances = DEFAULT_TOLERANCES,
    report: Optional[PatternReport] = None,
) -> CutoffRule:
    if grid_n < MIN_GRID_N:
        raise SolverError(f"grid_n must be at least {MIN_GRID_N}, got {grid_n}")
    report = report or classify(spec, obj)
    flags: List[str] = []
    with span("solver.build_rule", objective=Objective(obj).value, grid_n=grid_n) as result:
        deltas = {side: solve_threshold(spec, obj, side, report, tol) for side in Side}
        cutoffs = {
            side: _side_curve(
                spec, obj, side, deltas[side], grid_n,
                report.label(side) is PatternLabel.BOTTOM_ELIMINATED,
                tol, flags,
            )
            for side in Side
        }

        monotone = {}
        for side, cut in cutoffs.items():
            scan = scan_values(cut.lam, cut.tau, Monotonicity.NONINCREASING)
            monotone[side.value] = scan.passed
            if not scan.passed:
                flags.append(f"tau-not-monotone:{side.value}")
                logger.warning({"event": "solver.tau_not_monotone", "side": side.value, "witness": scan.witness})

        reciprocity = reciprocity_errors(spec, cutoffs)
        for name, err in reciprocity.items():
            if err > RECIPROCITY_TOL:
                flags.append(f"reciprocity:{name}")
                logger.warning({"event": "solver.reciprocity_failed", "side": name, "error": err})

        result.update({"delta_S": deltas[Side.SELLER], "delta_B": deltas[Side.BUYER], "flags": list(flags)})

    return CutoffRule(
        seller=cutoffs[Side.SELLER],
        buyer=cutoffs[Side.BUYER],
        monotone=monotone,
        reciprocity_err=reciprocity,
        flags=flags,
    )
