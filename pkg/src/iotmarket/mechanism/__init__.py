# iotmarket/mechanism/__init__.py

from .formulas import eta, eta_oriented, integrate_types, marginal_D, omega, theta, utility, virtual_surplus
from .mechanism_types import (
    CutoffRule,
    Objective,
    ObjectiveBreakdown,
    PaymentSchedule,
    SideCutoff,
    SidePayments,
)
from .objective import (
    marginal_profile,
    matched_pairs_objective,
    objective_breakdown,
    objective_value,
    threshold_sweep,
    uniform_threshold_rule,
)
from .payments import build_payments, information_rent, payment, payment_at

__all__ = [
    "Objective",
    "SideCutoff",
    "CutoffRule",
    "SidePayments",
    "PaymentSchedule",
    "ObjectiveBreakdown",
    "utility",
    "marginal_D",
    "virtual_surplus",
    "omega",
    "theta",
    "eta",
    "eta_oriented",
    "integrate_types",
    "information_rent",
    "payment",
    "build_payments",
    "payment_at",
    "objective_breakdown",
    "objective_value",
    "matched_pairs_objective",
    "marginal_profile",
    "uniform_threshold_rule",
    "threshold_sweep",
]
