# iotmarket/solver/regularity.py
"""
Regularity check: for fixed opponent types x_Δ, the ratio
θ^K_Y(λ, x_Δ) / ω^K̄(λ) should increase in λ. Reported both weakly
(non-decreasing) and strictly.
"""

from __future__ import annotations
from typing import List, Optional, Tuple
import logging

from pydantic import BaseModel, Field

from ..constants import REGULARITY_QUANTILES
from ..market import MarketSpec, Side
from ..mechanism import Objective, eta, omega, theta
from ..numerics import Monotonicity, scan_values

logger = logging.getLogger("iotmarket.solver")

# Rounding noise tolerated by the weak test, relative to the largest ratio.
ROUNDING_SLACK = 1e-12


class RegularityWitness(BaseModel):
    side: Side
    x_delta: float
    test: str
    points: Tuple[float, float, float, float]


class RegularityReport(BaseModel):
    objective: Objective
    grid_n: int
    weak_pass: bool = True
    strict_pass: bool = True
    witnesses: List[RegularityWitness] = Field(default_factory=list)
    skipped: List[Tuple[Side, float, float]] = Field(default_factory=list)  # (side, x_Δ, λ with ω = 0)
    eta_lo_lo: float = 0.0

    @property
    def passed(self) -> bool:
        return self.weak_pass

    @property
    def unique_lowest_type(self) -> bool:
        """η(lo, lo) < 0: the lowest matched type is unique."""
        return self.eta_lo_lo < 0.0


def check_regularity(spec: MarketSpec, obj: Objective, grid_n: int) -> RegularityReport:
    obj = Objective(obj)
    report = RegularityReport(
        objective=obj,
        grid_n=grid_n,
        eta_lo_lo=eta(spec, obj, spec.distribution(Side.SELLER).lo, spec.distribution(Side.BUYER).lo),
    )
    for side in Side:
        own = spec.distribution(side)
        opp = spec.distribution(side.opposite)
        lams = [own.lo + own.width * i / grid_n for i in range(1, grid_n)]
        weights = [omega(spec, side, lam) for lam in lams]
        zero_at: Optional[float] = next((lam for lam, w in zip(lams, weights) if w == 0.0), None)
        for q in REGULARITY_QUANTILES:
            x = opp.lo + q * opp.width
            if zero_at is not None:
                report.skipped.append((side, x, zero_at))
                continue
            ratio = [theta(spec, obj, side, lam, x) / w for lam, w in zip(lams, weights)]
            slack = ROUNDING_SLACK * max(abs(r) for r in ratio)
            for test, direction in (("weak", Monotonicity.NONDECREASING), ("strict", Monotonicity.INCREASING)):
                scan = scan_values(lams, ratio, direction, slack)
                if scan.passed:
                    continue
                report.witnesses.append(RegularityWitness(side=side, x_delta=x, test=test, points=scan.witness))
                if test == "weak":
                    report.weak_pass = False
                else:
                    report.strict_pass = False

    logger.info({
        "event": "solver.regularity",
        "objective": obj.value,
        "weak": report.weak_pass,
        "strict": report.strict_pass,
        "skipped": len(report.skipped),
    })
    return report
