# iotmarket/verification/audit_report.py
"""
Audit Report
------------

Every audit metric of a solution next to its tolerance:
  • ic_max_gain          ≤ IC_GAIN_TOL           (per side)
  • ir_min_payoff        ≥ −IR_PAYOFF_TOL        (per side)
  • ir_lowest_payoff     |·| ≤ IR_PAYOFF_TOL     (per side, J at δ)
  • icfoc_max_err        ≤ ICFOC_REL_TOL         (per side)
  • reciprocity_max_err  ≤ RECIPROCITY_TOL       (per side)
  • objective_cross_err  ≤ OBJECTIVE_CROSS_TOL
"""

from __future__ import annotations
from typing import Dict, List, Tuple

from pydantic import BaseModel, Field

from ..constants import (
    IC_GAIN_TOL,
    ICFOC_REL_TOL,
    IR_PAYOFF_TOL,
    OBJECTIVE_CROSS_TOL,
    RECIPROCITY_TOL,
)


class AuditReport(BaseModel):
    objective: str
    ic_max_gain: Dict[str, float] = Field(default_factory=dict)
    ir_min_payoff: Dict[str, float] = Field(default_factory=dict)
    ir_lowest_payoff: Dict[str, float] = Field(default_factory=dict)
    icfoc_max_err: Dict[str, float] = Field(default_factory=dict)
    reciprocity_max_err: Dict[str, float] = Field(default_factory=dict)
    objective_cross_err: float = 0.0
    grids: Dict[str, int] = Field(default_factory=dict)

    def ratios(self) -> List[Tuple[str, float]]:
        """(metric, value / tolerance) for every metric; > 1 is a failure."""
        out = []
        for side, v in self.ic_max_gain.items():
            out.append((f"ic_max_gain[{side}]", max(v, 0.0) / IC_GAIN_TOL))
        for side, v in self.ir_min_payoff.items():
            out.append((f"ir_min_payoff[{side}]", max(-v, 0.0) / IR_PAYOFF_TOL))
        for side, v in self.ir_lowest_payoff.items():
            out.append((f"ir_lowest_payoff[{side}]", abs(v) / IR_PAYOFF_TOL))
        for side, v in self.icfoc_max_err.items():
            out.append((f"icfoc_max_err[{side}]", v / ICFOC_REL_TOL))
        for side, v in self.reciprocity_max_err.items():
            out.append((f"reciprocity_max_err[{side}]", v / RECIPROCITY_TOL))
        out.append(("objective_cross_err", self.objective_cross_err / OBJECTIVE_CROSS_TOL))
        return out

    def failures(self) -> List[str]:
        return [name for name, ratio in self.ratios() if ratio > 1.0]

    def worst_ratio(self) -> float:
        return max(ratio for _, ratio in self.ratios())

    @property
    def passed(self) -> bool:
        return not self.failures()

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"
