# iotmarket/verification/mutations.py
"""
Fault Injection
---------------

Canonical corruptions of a solved mechanism. Each returns a (spec,
solution) pair the audits should reject:
  • shift-tau      - τ^K + 0.5, clipped to the opposite support
  • scale-phi      - φ^K × 1.1
  • drop-rent      - φ^K = u^K (no information rent)
  • flatten-tau    - τ^B constant at its middle sample
  • negate-kernel  - R^S replaced by −R^S
"""

from __future__ import annotations
from typing import Callable, Tuple

from ..exprlang import Expr
from ..exprlang.expr_nodes import Neg
from ..market import KERNEL_SIGNATURE, MarketSpec, Side
from ..registry import Registry
from ..solver import MechanismSolution

Mutation = Callable[[MarketSpec, MechanismSolution], Tuple[MarketSpec, MechanismSolution]]

MUTATIONS = Registry("mutation")


def _with_rule_side(solution: MechanismSolution, cutoff) -> MechanismSolution:
    return solution.replace(rule=solution.rule.replace_side(cutoff))


def _with_payment_side(solution: MechanismSolution, payments) -> MechanismSolution:
    return solution.replace(payments=solution.payments.replace_side(payments))


@MUTATIONS.register("shift-tau")
def shift_tau(spec: MarketSpec, solution: MechanismSolution, side: Side = Side.SELLER, amount: float = 0.5):
    cutoff = solution.rule.side(side)
    tau = [min(max(t + amount, cutoff.lo_opp), cutoff.hi_opp) for t in cutoff.tau]
    return spec, _with_rule_side(solution, cutoff.copy(update={"tau": tau}))


@MUTATIONS.register("scale-phi")
def scale_phi(spec: MarketSpec, solution: MechanismSolution, side: Side = Side.SELLER, factor: float = 1.1):
    sp = solution.payments.side(side)
    mutated = sp.copy(update={"phi": [p * factor for p in sp.phi], "scale": sp.scale * factor})
    return spec, _with_payment_side(solution, mutated)


@MUTATIONS.register("drop-rent")
def drop_rent(spec: MarketSpec, solution: MechanismSolution, side: Side = Side.SELLER):
    sp = solution.payments.side(side)
    mutated = sp.copy(update={"phi": list(sp.utility), "rent_weight": 0.0})
    return spec, _with_payment_side(solution, mutated)


@MUTATIONS.register("flatten-tau")
def flatten_tau(spec: MarketSpec, solution: MechanismSolution, side: Side = Side.BUYER):
    cutoff = solution.rule.side(side)
    middle = cutoff.tau[len(cutoff.tau) // 2]
    return spec, _with_rule_side(solution, cutoff.copy(update={"tau": [middle] * len(cutoff.tau)}))


@MUTATIONS.register("negate-kernel")
def negate_kernel(spec: MarketSpec, solution: MechanismSolution, side: Side = Side.SELLER):
    negated = Expr(Neg(spec.kernel(side).root), KERNEL_SIGNATURE)
    kernels = {"R_S": negated} if Side(side) is Side.SELLER else {"R_B": negated}
    return spec.with_kernels(**kernels), solution


def apply_mutation(name: str, spec: MarketSpec, solution: MechanismSolution):
    return MUTATIONS.get(name)(spec, solution)
