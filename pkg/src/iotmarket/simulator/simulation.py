# iotmarket/simulator/simulation.py
"""
Monte-Carlo Market
------------------

Finite-population realization of a solved mechanism:
  • types drawn by inverse CDF from seeded numpy streams (one per side)
  • each agent's utility averages R^K over the opponents it is matched to
  • payments interpolated from the schedule; unmatched agents get 0 and pay 0

Welfare and revenue are per-capita totals (sum of the per-side means), with
standard errors from each agent's share of the generated surplus.
"""

from __future__ import annotations
from typing import Dict, Union
import logging
import math

import numpy as np
from pydantic import BaseModel

from ..exprlang import Expr, substitute
from ..exprlang.expr_nodes import BinOp, Var
from ..market import KERNEL_SIGNATURE, MarketSpec, Side, TypeDistribution
from ..solver import MechanismSolution
from ..telemetry import span
from .sim_config import SimConfig
from .tail_sums import tail_sums

logger = logging.getLogger("iotmarket.simulator")

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator]


class AgentRecords(BaseModel):
    side: Side
    types: np.ndarray
    matched_mass: np.ndarray
    utility: np.ndarray
    payment: np.ndarray

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @property
    def n(self) -> int:
        return int(self.types.size)


class SimResult(BaseModel):
    seed: int
    n_sellers: int
    n_buyers: int
    sellers: AgentRecords
    buyers: AgentRecords
    welfare: float
    revenue: float
    welfare_se: float
    revenue_se: float
    mean_utility: Dict[str, float]
    mean_payment: Dict[str, float]
    pair_mass: Dict[str, float]

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    def records(self, side: Side) -> AgentRecords:
        return self.sellers if Side(side) is Side.SELLER else self.buyers


def sample_population(dist: TypeDistribution, n: int, seed: SeedLike) -> np.ndarray:
    """n types by inverse CDF of a seeded uniform stream."""
    if n < 1:
        raise ValueError(f"population size must be at least 1, got {n}")
    rng = np.random.default_rng(seed)
    return dist.inverse_cdf_array(rng.random(n))


def _mean(values: np.ndarray) -> float:
    return math.fsum(values.tolist()) / values.size if values.size else 0.0


def _surplus_kernel(spec: MarketSpec, side: Side) -> Expr:
    """R^K(λ, x) + R^K̄(x, λ): both utilities generated by the pair, seen from side K."""
    mine = spec.kernel(side).root
    theirs = spec.kernel(side.opposite).root
    swapped = substitute(
        Expr(theirs, KERNEL_SIGNATURE),
        {"lam": Expr(Var("x"), KERNEL_SIGNATURE), "x": Expr(Var("lam"), KERNEL_SIGNATURE)},
        KERNEL_SIGNATURE,
    )
    return Expr(BinOp("add", mine, swapped.root), KERNEL_SIGNATURE)


def _realize_side(spec, solution, side, own, opp_sorted, chunk_cells):
    cutoff = solution.rule.side(side)
    payments = solution.payments.side(side)
    own_d = spec.distribution(side)
    opp_d = spec.distribution(side.opposite)
    n_opp = opp_sorted.size

    matched = own >= cutoff.delta
    # unmatched agents get an empty tail
    tau = np.where(matched, np.interp(own, cutoff.lam, cutoff.tau), np.inf)
    start = np.searchsorted(opp_sorted, tau, side="left")
    mass = (n_opp - start) / n_opp

    ranges = ((own_d.lo, own_d.hi), (opp_d.lo, opp_d.hi))
    util = tail_sums(spec.kernel(side), own, opp_sorted, tau, opp_d.lo, *ranges, chunk_cells) / n_opp
    surplus = tail_sums(_surplus_kernel(spec, side), own, opp_sorted, tau, opp_d.lo, *ranges, chunk_cells) / n_opp

    if payments.formula is not None:
        phi = payments.formula.evaluate_array({"lam": own})
    else:
        phi = np.interp(own, payments.lam, payments.phi)
    phi = np.where(matched, phi, 0.0)
    util = np.where(matched, util, 0.0)
    surplus = np.where(matched, surplus, 0.0)

    return AgentRecords(side=side, types=own, matched_mass=mass, utility=util, payment=phi), surplus


def simulate(cfg: SimConfig) -> SimResult:
    spec, solution = cfg.spec, cfg.solution
    with span("simulator.run", n_sellers=cfg.n_sellers, n_buyers=cfg.n_buyers, seed=cfg.seed) as result:
        seller_seq, buyer_seq = np.random.SeedSequence(cfg.seed).spawn(2)
        types = {
            Side.SELLER: sample_population(spec.distribution(Side.SELLER), cfg.n_sellers, seller_seq),
            Side.BUYER: sample_population(spec.distribution(Side.BUYER), cfg.n_buyers, buyer_seq),
        }
        records: Dict[Side, AgentRecords] = {}
        surplus: Dict[Side, np.ndarray] = {}
        for side in Side:
            records[side], surplus[side] = _realize_side(
                spec, solution, side, types[side], np.sort(types[side.opposite]), cfg.chunk_cells,
            )

        mean_utility = {side.value: _mean(records[side].utility) for side in Side}
        mean_payment = {side.value: _mean(records[side].payment) for side in Side}
        pair_mass = {side.value: _mean(records[side].matched_mass) for side in Side}

        welfare_var = sum(
            float(np.var(surplus[side], ddof=1)) / surplus[side].size if surplus[side].size > 1 else 0.0
            for side in Side
        )
        revenue_var = sum(
            float(np.var(records[side].payment, ddof=1)) / records[side].n if records[side].n > 1 else 0.0
            for side in Side
        )

        sim = SimResult(
            seed=cfg.seed,
            n_sellers=cfg.n_sellers,
            n_buyers=cfg.n_buyers,
            sellers=records[Side.SELLER],
            buyers=records[Side.BUYER],
            welfare=math.fsum(mean_utility.values()),
            revenue=math.fsum(mean_payment.values()),
            welfare_se=math.sqrt(welfare_var),
            revenue_se=math.sqrt(revenue_var),
            mean_utility=mean_utility,
            mean_payment=mean_payment,
            pair_mass=pair_mass,
        )
        result.update({
            "welfare": sim.welfare,
            "revenue": sim.revenue,
            "welfare_se": sim.welfare_se,
            "revenue_se": sim.revenue_se,
        })
    return sim
