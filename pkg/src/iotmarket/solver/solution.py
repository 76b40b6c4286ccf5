# iotmarket/solver/solution.py
"""
Mechanism Solution
------------------

solve_mechanism runs the full pipeline for one objective:
  classify → build_rule → build_payments → objective_breakdown → check_regularity

and records every feasibility or regularity concern as a diagnostic flag.
"""

from __future__ import annotations
from typing import Dict, List
import logging

from pydantic import BaseModel, Field

from ..constants import DEFAULT_GRID_N
from ..market import MarketSpec, Side
from ..mechanism import (
    CutoffRule,
    Objective,
    ObjectiveBreakdown,
    PaymentSchedule,
    build_payments,
    objective_breakdown,
)
from ..numerics import DEFAULT_TOLERANCES, Tolerances
from ..telemetry import span
from .cutoffs import build_rule
from .patterns import PatternReport, classify, rule_pattern
from .regularity import RegularityReport, check_regularity

logger = logging.getLogger("iotmarket.solver")


class SolutionDiagnostics(BaseModel):
    regularity: RegularityReport
    classification: PatternReport
    monotone: Dict[str, bool] = Field(default_factory=dict)
    reciprocity_err: Dict[str, float] = Field(default_factory=dict)
    flags: List[str] = Field(default_factory=list)

    @property
    def uniqueness_precondition(self) -> bool:
        return self.regularity.unique_lowest_type


class MechanismSolution(BaseModel):
    objective: Objective
    grid_n: int
    rule: CutoffRule
    payments: PaymentSchedule
    breakdown: ObjectiveBreakdown
    patterns: PatternReport
    diagnostics: SolutionDiagnostics

    class Config:
        allow_mutation = False

    @property
    def objective_value(self) -> float:
        return self.breakdown.value

    @property
    def deltas(self) -> Dict[Side, float]:
        return self.rule.deltas

    def replace(self, **changes) -> "MechanismSolution":
        return self.copy(update=changes)


def solve_mechanism(
    spec: MarketSpec,
    obj: Objective,
    grid_n: int = DEFAULT_GRID_N,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> MechanismSolution:
    obj = Objective(obj)
    with span("solver.solve", market=spec.name, objective=obj.value, grid_n=grid_n) as result:
        classification = classify(spec, obj)
        rule = build_rule(spec, obj, grid_n, tol, classification)
        payments = build_payments(spec, rule, tol)
        breakdown = objective_breakdown(spec, obj, rule, payments, tol)
        regularity = check_regularity(spec, obj, grid_n)
        patterns = rule_pattern(spec, rule)

        flags = list(rule.flags)
        if not regularity.weak_pass:
            flags.append("regularity")
        if patterns.labels != classification.labels or patterns.top_reserved != classification.top_reserved:
            flags.append("pattern-mismatch")
            logger.warning({
                "event": "solver.pattern_mismatch",
                "classified": classification.pattern_line(),
                "rule": patterns.pattern_line(),
            })

        solution = MechanismSolution(
            objective=obj,
            grid_n=grid_n,
            rule=rule,
            payments=payments,
            breakdown=breakdown,
            patterns=patterns,
            diagnostics=SolutionDiagnostics(
                regularity=regularity,
                classification=classification,
                monotone=rule.monotone,
                reciprocity_err=rule.reciprocity_err,
                flags=flags,
            ),
        )
        result.update({
            "delta_S": rule.seller.delta,
            "delta_B": rule.buyer.delta,
            "value": breakdown.value,
            "flags": flags,
        })
    return solution
