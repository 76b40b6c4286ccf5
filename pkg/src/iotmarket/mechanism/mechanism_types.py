# iotmarket/mechanism/mechanism_types.py
"""
Mechanism Types
---------------

Records shared by the formula layer, the solver and the audits:
  • Objective       - welfare or revenue
  • SideCutoff      - threshold δ and sampled cut-off curve τ for one side
  • CutoffRule      - both sides plus feasibility diagnostics
  • SidePayments    - sampled payments φ and accumulated rents Q for one side
  • PaymentSchedule - both sides
  • ObjectiveBreakdown
"""

from __future__ import annotations
from bisect import bisect_right
from enum import Enum
from typing import Any, Dict, List, Optional
import math

from pydantic import BaseModel, Field, root_validator

from ..exprlang import Expr
from ..market import Side


class Objective(str, Enum):
    WELFARE = "welfare"
    REVENUE = "revenue"


def _finite(values: List[float], name: str) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"{name} contains a non-finite value {v!r}")


def _locate(xs: List[float], x: float) -> int:
    """Index i of the segment [xs[i], xs[i+1]] holding x, clamped to the grid."""
    i = bisect_right(xs, x) - 1
    return min(max(i, 0), len(xs) - 2)


# ---------------------------------------------------------------------------
# Cut-off rule
# ---------------------------------------------------------------------------

class SideCutoff(BaseModel):
    side: Side
    delta: float
    lam: List[float]
    tau: List[float]
    # opposite support; τ = hi_opp means an empty matched set
    lo_opp: float
    hi_opp: float

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _samples(cls, values):
        lam, tau = values["lam"], values["tau"]
        if len(lam) != len(tau):
            raise ValueError("lam and tau sample counts differ")
        if len(lam) < 2:
            raise ValueError("a cut-off curve needs at least two samples")
        _finite(lam, "lam")
        _finite(tau, "tau")
        if any(b < a for a, b in zip(lam[:-1], lam[1:])):
            raise ValueError("lam samples must be ascending")
        if lam[0] != values["delta"]:
            raise ValueError("the first sample must sit at the threshold")
        return values

    def matched(self, lam: float) -> bool:
        return lam >= self.delta

    def tau_at(self, lam: float) -> float:
        """τ(λ) by linear interpolation; unmatched types get the empty set."""
        if lam < self.delta:
            return self.hi_opp
        xs, ys = self.lam, self.tau
        if xs[-1] == xs[0]:
            return ys[0]
        if lam >= xs[-1]:
            return ys[-1]
        i = _locate(xs, lam)
        x0, x1 = xs[i], xs[i + 1]
        if x1 == x0:
            return ys[i + 1]
        w = (lam - x0) / (x1 - x0)
        return ys[i] + w * (ys[i + 1] - ys[i])

    def knots(self, a: float, b: float) -> List[float]:
        """[a, b] split at the sample points strictly inside it."""
        inner = [x for x in self.lam if a < x < b]
        return [a, *inner, b]


class CutoffRule(BaseModel):
    seller: SideCutoff
    buyer: SideCutoff
    monotone: Dict[str, bool] = Field(default_factory=dict)
    reciprocity_err: Dict[str, float] = Field(default_factory=dict)
    flags: List[str] = Field(default_factory=list)

    class Config:
        allow_mutation = False

    def side(self, side: Side) -> SideCutoff:
        return self.seller if Side(side) is Side.SELLER else self.buyer

    @property
    def deltas(self) -> Dict[Side, float]:
        return {Side.SELLER: self.seller.delta, Side.BUYER: self.buyer.delta}

    def replace_side(self, cutoff: SideCutoff) -> "CutoffRule":
        key = "seller" if cutoff.side is Side.SELLER else "buyer"
        return self.copy(update={key: cutoff})


# ---------------------------------------------------------------------------
# Payments
# ---------------------------------------------------------------------------

class SidePayments(BaseModel):
    """
    φ at the rule samples, with the rent Q accumulated up to each sample.

    `scale` and `rent_weight` enter as φ = scale·(u − rent_weight·Q); both
    are 1 for a constructed schedule. `formula` (an expression in lam)
    replaces the construction entirely for matched types.
    """

    side: Side
    lam: List[float]
    phi: List[float]
    rent: List[float]
    utility: List[float]
    scale: float = 1.0
    rent_weight: float = 1.0
    formula: Optional[Expr] = None

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _samples(cls, values):
        n = len(values["lam"])
        for name in ("phi", "rent", "utility"):
            if len(values[name]) != n:
                raise ValueError(f"{name} has {len(values[name])} samples, expected {n}")
            _finite(values[name], name)
        return values

    def segment(self, lam: float) -> int:
        """Index of the last sample at or below lam."""
        if len(self.lam) < 2:
            return 0
        if lam >= self.lam[-1]:
            return len(self.lam) - 1
        return _locate(self.lam, lam)


class PaymentSchedule(BaseModel):
    seller: SidePayments
    buyer: SidePayments

    class Config:
        allow_mutation = False

    def side(self, side: Side) -> SidePayments:
        return self.seller if Side(side) is Side.SELLER else self.buyer

    def replace_side(self, payments: SidePayments) -> "PaymentSchedule":
        key = "seller" if payments.side is Side.SELLER else "buyer"
        return self.copy(update={key: payments})


class ObjectiveBreakdown(BaseModel):
    objective: Objective
    welfare: float
    revenue: float
    revenue_virtual: float

    @property
    def value(self) -> float:
        return self.welfare if self.objective is Objective.WELFARE else self.revenue

    @property
    def cross_err(self) -> float:
        return abs(self.revenue - self.revenue_virtual)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "objective": self.objective.value,
            "Z_W": self.welfare,
            "Z_R": self.revenue,
            "Z_R_virtual": self.revenue_virtual,
        }
