# iotmarket/solver/patterns.py
"""
Matching Patterns
-----------------

Classification of the optimal matching pattern from the signs of the joint
marginal η at the corners of the type space.

Per orientation K (with a = η^K(lo^K, lo^K̄), b = η^K(hi^K, lo^K̄)):
  • a ≥ 0          → complete-matched on both sides
  • a < 0, b > 0   → top-reserved on K, complete-matched on K̄
  • a < 0, b < 0   → bottom-eliminated on K̄
  • a < 0, b = 0   → complete-matched on K̄, not top-reserved on K

|η| ≤ ZERO_ETA counts as zero.
"""

from __future__ import annotations
from enum import Enum
from typing import Dict
import logging

from pydantic import BaseModel, Field

from ..constants import ZERO_ETA
from ..market import MarketSpec, Side
from ..mechanism import CutoffRule, Objective, eta_oriented

logger = logging.getLogger("iotmarket.solver")


class PatternLabel(str, Enum):
    COMPLETE_MATCHED = "complete-matched"
    BOTTOM_ELIMINATED = "bottom-eliminated"


class PatternReport(BaseModel):
    labels: Dict[Side, PatternLabel]
    top_reserved: Dict[Side, bool]
    corner_signs: Dict[str, float] = Field(default_factory=dict)

    def label(self, side: Side) -> PatternLabel:
        return self.labels[Side(side)]

    def pattern_line(self) -> str:
        return f"{self.labels[Side.SELLER].value} / {self.labels[Side.BUYER].value}"

    def top_reserved_line(self) -> str:
        return " / ".join("yes" if self.top_reserved[s] else "no" for s in Side)


def _sign(v: float) -> int:
    if abs(v) <= ZERO_ETA:
        return 0
    return 1 if v > 0 else -1


def classify(spec: MarketSpec, obj: Objective) -> PatternReport:
    corners: Dict[str, float] = {}
    lo = {side: spec.distribution(side).lo for side in Side}
    hi = {side: spec.distribution(side).hi for side in Side}
    for side in Side:
        opp = side.opposite
        corners[f"eta_{side.short}(lo,lo)"] = eta_oriented(spec, obj, side, lo[side], lo[opp])
        corners[f"eta_{side.short}(hi,lo)"] = eta_oriented(spec, obj, side, hi[side], lo[opp])

    labels = {side: PatternLabel.COMPLETE_MATCHED for side in Side}
    top = {side: False for side in Side}
    for side in Side:
        a = _sign(corners[f"eta_{side.short}(lo,lo)"])
        b = _sign(corners[f"eta_{side.short}(hi,lo)"])
        if a >= 0:
            continue
        if b > 0:
            top[side] = True
        elif b < 0:
            labels[side.opposite] = PatternLabel.BOTTOM_ELIMINATED

    report = PatternReport(labels=labels, top_reserved=top, corner_signs=corners)
    logger.info({
        "event": "solver.classified",
        "objective": Objective(obj).value,
        "pattern": report.pattern_line(),
        "top_reserved": report.top_reserved_line(),
        **corners,
    })
    return report


def rule_pattern(spec: MarketSpec, rule: CutoffRule) -> PatternReport:
    """Pattern read off a built rule: δ > lo is bottom-eliminated, δ^K < τ^K̄(δ^K̄) < hi^K is top-reserved."""
    labels = {}
    top = {}
    for side in Side:
        d = spec.distribution(side)
        delta = rule.side(side).delta
        labels[side] = PatternLabel.COMPLETE_MATCHED if delta <= d.lo else PatternLabel.BOTTOM_ELIMINATED
        other = rule.side(side.opposite)
        reach = other.tau_at(other.delta)
        slack = 1e-9 * d.width
        top[side] = bool(delta + slack < reach < d.hi - slack)
    return PatternReport(labels=labels, top_reserved=top)
