# iotmarket/market/market_validation.py
"""
Market Validation
-----------------

Grid checks of the standing assumptions on a market:
  • attractiveness order: R^K non-decreasing in the opponent type
  • reward-cost bound (primitive mode): γ^B(λ^B) ≤ M^S(γ^B(λ^B), λ^S)
  • positive density on the open support
  • every formula evaluates on the lattice

Violations are returned as data with a witness point; nothing here raises
for a failed predicate.
"""

from __future__ import annotations
from typing import Dict, List, Optional
import logging

import numpy as np
from pydantic import BaseModel, Field

from ..constants import MIN_VALIDATION_GRID
from ..exprlang import Expr, ExprEvalError
from .market_exceptions import MarketSpecError
from .market_spec import MarketSpec, Side

logger = logging.getLogger("iotmarket.market")

# Relative slack for the monotonicity predicate (rounding in the kernel).
MONOTONE_SLACK = 1e-12


class Violation(BaseModel):
    predicate: str
    side: Optional[Side] = None
    witness: Dict[str, float] = Field(default_factory=dict)
    detail: str = ""

    def describe(self) -> str:
        where = ", ".join(f"{k}={v:.9g}" for k, v in self.witness.items())
        side = f" [{self.side.value}]" if self.side is not None else ""
        return f"{self.predicate}{side} at ({where}): {self.detail}"


class ValidationReport(BaseModel):
    grid_n: int
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def predicates(self) -> List[str]:
        return [v.predicate for v in self.violations]


def _first_scalar_failure(e: Expr, bindings: Dict[str, np.ndarray]):
    """Locate the first lattice point where `e` fails to evaluate."""
    names = list(bindings)
    arrays = np.broadcast_arrays(*(bindings[n] for n in names))
    for idx in np.ndindex(arrays[0].shape):
        point = {n: float(a[idx]) for n, a in zip(names, arrays)}
        try:
            e.root.evaluate(point)
        except ExprEvalError as exc:
            return point, exc
    return {}, None


def _lattice(e: Expr, bindings: Dict[str, np.ndarray], side: Optional[Side], label: str, out: List[Violation]):
    try:
        return e.evaluate_array(bindings)
    except ExprEvalError:
        point, exc = _first_scalar_failure(e, bindings)
        out.append(Violation(
            predicate="evaluable",
            side=side,
            witness=point,
            detail=f"{label}: {exc}",
        ))
        return None


def validate_spec(spec: MarketSpec, grid_n: int) -> ValidationReport:
    if grid_n < MIN_VALIDATION_GRID:
        raise MarketSpecError(f"validation grid must have at least {MIN_VALIDATION_GRID} points, got {grid_n}")

    violations: List[Violation] = []
    grids = {side: spec.distribution(side).grid(grid_n) for side in Side}

    # positive density on the open support
    for side in Side:
        dist = spec.distribution(side)
        for lam in grids[side][1:-1]:
            f = dist.density(float(lam))
            if not f > 0.0:
                violations.append(Violation(
                    predicate="positive-density",
                    side=side,
                    witness={"lam": float(lam)},
                    detail=f"f = {f}",
                ))
                break

    # attractiveness order: R^K(lam, ·) non-decreasing
    for side in Side:
        own = grids[side][:, None]
        opp = grids[side.opposite][None, :]
        values = _lattice(spec.kernel(side), {"lam": own, "x": opp}, side, f"R_{side.short}", violations)
        if values is None:
            continue
        steps = np.diff(values, axis=1)
        slack = MONOTONE_SLACK * (1.0 + np.abs(values[:, :-1]))
        bad = np.argwhere(steps < -slack)
        if bad.size:
            i, j = (int(v) for v in bad[0])
            violations.append(Violation(
                predicate="attractiveness-order",
                side=side,
                witness={"lam": float(own[i, 0]), "x": float(opp[0, j]), "x_next": float(opp[0, j + 1])},
                detail=f"R_{side.short} drops from {values[i, j]:.9g} to {values[i, j + 1]:.9g}",
            ))

    # reward-cost bound, primitive mode only
    if spec.mode == "primitive":
        lam_s = grids[Side.SELLER][:, None]
        lam_b = grids[Side.BUYER][None, :]
        g_b = _lattice(spec.gamma(Side.BUYER), {"lam": lam_b}, Side.BUYER, "gamma_B", violations)
        if g_b is not None:
            m_s = _lattice(spec.M_S, {"r": g_b, "lam": lam_s}, Side.SELLER, "M_S", violations)
            if m_s is not None:
                bad = np.argwhere(np.broadcast_to(g_b, m_s.shape) > m_s)
                if bad.size:
                    i, j = (int(v) for v in bad[0])
                    violations.append(Violation(
                        predicate="reward-cost-bound",
                        side=Side.SELLER,
                        witness={"lam_S": float(lam_s[i, 0]), "lam_B": float(lam_b[0, j])},
                        detail=f"gamma_B = {g_b[0, j]:.9g} exceeds M_S = {m_s[i, j]:.9g}",
                    ))

    report = ValidationReport(grid_n=grid_n, violations=violations)
    logger.info({
        "event": "market.validated",
        "market": spec.name,
        "grid_n": grid_n,
        "violations": report.predicates(),
    })
    return report


