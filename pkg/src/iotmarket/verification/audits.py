# iotmarket/verification/audits.py
"""
Solution Audits
---------------

Numerical checks of a solved mechanism, each independent of how the
solution was built:
  • ic_audit               - brute-force misreporting on true × report grids
  • ir_audit               - participation payoffs, and the payoff of the lowest matched type
  • icfoc_audit            - dJ/dλ by central differences against D(λ, τ(λ))
  • reciprocity_audit      - τ^K̄(τ^K(λ)) = λ, and τ^K(δ^K) = hi^K̄ on eliminated sides
  • objective_cross_check  - revenue through payments vs through virtual surplus

All audits return data; a failure is a metric above its tolerance.
"""

from __future__ import annotations
from typing import Dict, List, Optional, Tuple
import logging

import numpy as np

from ..constants import DEFAULT_AUDIT_N, MIN_AUDIT_N, MIN_GRID_N
from ..market import MarketSpec, Side
from ..mechanism import marginal_D, objective_breakdown, payment_at, utility
from ..numerics import DEFAULT_TOLERANCES, Tolerances
from ..solver import MechanismSolution, reciprocity_errors
from ..telemetry import span
from .audit_report import AuditReport
from .verification_exceptions import VerificationError

logger = logging.getLogger("iotmarket.verification")

# Finite-difference step of the ICFOC audit, relative to the support width.
FD_STEP = 1e-4


def _require(n: int, minimum: int, name: str) -> None:
    if n < minimum:
        raise VerificationError(f"{name} must be at least {minimum}, got {n}")


def _payoff(spec: MarketSpec, solution: MechanismSolution, side: Side, lam: float, tol: Tolerances) -> float:
    """J(λ) = u(λ, τ(λ)) − φ(λ); 0 for unmatched types."""
    cutoff = solution.rule.side(side)
    if not cutoff.matched(lam):
        return 0.0
    u = utility(spec, side, lam, cutoff.tau_at(lam), tol)
    return u - payment_at(spec, solution.rule, solution.payments, side, lam, tol)


# ---------------------------------------------------------------------------
# IC
# ---------------------------------------------------------------------------

def ic_audit(
    spec: MarketSpec,
    solution: MechanismSolution,
    n_true: int = DEFAULT_AUDIT_N,
    n_report: int = DEFAULT_AUDIT_N,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Dict[str, float]:
    """Per side, max over (λ, λ̂) of [u(λ, τ(λ̂)) − φ(λ̂)] − J(λ)."""
    _require(n_true, MIN_AUDIT_N, "n_true")
    _require(n_report, MIN_AUDIT_N, "n_report")
    gains: Dict[str, float] = {}
    with span("verification.ic", objective=solution.objective.value, n_true=n_true, n_report=n_report):
        for side in Side:
            d = spec.distribution(side)
            cutoff = solution.rule.side(side)
            hi_opp = spec.distribution(side.opposite).hi

            reports: List[Tuple[float, float]] = []
            for rep in np.linspace(d.lo, d.hi, n_report).tolist():
                if not cutoff.matched(rep):
                    continue
                t = cutoff.tau_at(rep)
                reports.append((t, payment_at(spec, solution.rule, solution.payments, side, rep, tol)))

            worst = -np.inf
            cache: Dict[Tuple[float, float], float] = {}
            for lam in np.linspace(d.lo, d.hi, n_true).tolist():
                truthful = _payoff(spec, solution, side, lam, tol)
                best = 0.0  # stay out: report below δ
                for t, phi in reports:
                    key = (lam, t)
                    if key not in cache:
                        cache[key] = utility(spec, side, lam, t, tol) if t < hi_opp else 0.0
                    best = max(best, cache[key] - phi)
                worst = max(worst, best - truthful)
            gains[side.value] = float(worst)
    logger.info({"event": "verification.ic", **{f"gain_{k}": v for k, v in gains.items()}})
    return gains


# ---------------------------------------------------------------------------
# IR
# ---------------------------------------------------------------------------

def ir_audit(
    spec: MarketSpec,
    solution: MechanismSolution,
    n: int = DEFAULT_AUDIT_N,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[Dict[str, float], Dict[str, float]]:
    """(min payoff over matched grid types, payoff of the lowest matched type) per side."""
    _require(n, MIN_AUDIT_N, "n")
    mins: Dict[str, float] = {}
    lowest: Dict[str, float] = {}
    for side in Side:
        d = spec.distribution(side)
        cutoff = solution.rule.side(side)
        payoffs = [
            _payoff(spec, solution, side, lam, tol)
            for lam in np.linspace(d.lo, d.hi, n).tolist()
            if cutoff.matched(lam)
        ]
        lowest[side.value] = _payoff(spec, solution, side, cutoff.delta, tol)
        mins[side.value] = min(payoffs + [lowest[side.value]])
    return mins, lowest


# ---------------------------------------------------------------------------
# ICFOC
# ---------------------------------------------------------------------------

def _floor_start(solution: MechanismSolution, side: Side) -> Optional[float]:
    """First type whose cut-off sits on the bottom of the opposite support, past δ."""
    cutoff = solution.rule.side(side)
    for lam, t in zip(cutoff.lam[1:], cutoff.tau[1:]):
        if t <= cutoff.lo_opp:
            return lam
    return None


def icfoc_audit(
    spec: MarketSpec,
    solution: MechanismSolution,
    n: int = DEFAULT_AUDIT_N,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Dict[str, float]:
    """
    Per side, max |ΔJ/Δλ − D(λ, τ(λ))| over interior matched grid points,
    relative to the largest |D| on the side.
    """
    _require(n, MIN_AUDIT_N, "n")
    errors: Dict[str, float] = {}
    for side in Side:
        d = spec.distribution(side)
        cutoff = solution.rule.side(side)
        step = d.width / (n - 1)
        h = FD_STEP * d.width
        floor = _floor_start(solution, side)

        rows = []
        for lam in np.linspace(d.lo, d.hi, n).tolist():
            if not cutoff.matched(lam) or lam - h < d.lo or lam + h > d.hi:
                continue
            if abs(lam - cutoff.delta) <= step:
                continue
            if floor is not None and abs(lam - floor) <= step:
                continue
            fd = (_payoff(spec, solution, side, lam + h, tol) - _payoff(spec, solution, side, lam - h, tol)) / (2 * h)
            D = marginal_D(spec, side, lam, cutoff.tau_at(lam), tol)
            rows.append((fd, D))

        if not rows:
            errors[side.value] = 0.0
            continue
        scale = max(abs(D) for _, D in rows)
        scale = scale if scale > 0.0 else 1.0
        errors[side.value] = max(abs(fd - D) for fd, D in rows) / scale
    return errors


# ---------------------------------------------------------------------------
# Reciprocity and objectives
# ---------------------------------------------------------------------------

def reciprocity_audit(spec: MarketSpec, solution: MechanismSolution, n: int = DEFAULT_AUDIT_N) -> Dict[str, float]:
    _require(n, MIN_GRID_N, "n")
    rule = solution.rule
    errors = reciprocity_errors(spec, {side: rule.side(side) for side in Side}, points=n)
    for side in Side:
        d = spec.distribution(side)
        cutoff = rule.side(side)
        if cutoff.delta > d.lo:
            opp = spec.distribution(side.opposite)
            end = abs(cutoff.tau_at(cutoff.delta) - opp.hi) / opp.width
            errors[side.value] = max(errors[side.value], end)
    return errors


def objective_cross_check(
    spec: MarketSpec,
    solution: MechanismSolution,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    breakdown = objective_breakdown(spec, solution.objective, solution.rule, solution.payments, tol)
    return breakdown.cross_err


def audit(
    spec: MarketSpec,
    solution: MechanismSolution,
    n_true: int = DEFAULT_AUDIT_N,
    n_report: int = DEFAULT_AUDIT_N,
    n: int = DEFAULT_AUDIT_N,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> AuditReport:
    with span("verification.audit", objective=solution.objective.value) as result:
        ir_min, ir_low = ir_audit(spec, solution, n, tol)
        report = AuditReport(
            objective=solution.objective.value,
            ic_max_gain=ic_audit(spec, solution, n_true, n_report, tol),
            ir_min_payoff=ir_min,
            ir_lowest_payoff=ir_low,
            icfoc_max_err=icfoc_audit(spec, solution, n, tol),
            reciprocity_max_err=reciprocity_audit(spec, solution, n),
            objective_cross_err=objective_cross_check(spec, solution, tol),
            grids={"n_true": n_true, "n_report": n_report, "n": n},
        )
        result.update({"verdict": report.verdict, "failures": report.failures()})
    return report
