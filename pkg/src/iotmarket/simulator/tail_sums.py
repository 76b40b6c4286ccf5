# iotmarket/simulator/tail_sums.py
"""
Tail sums over a sorted opponent population:

    S_i = Σ_{x_j ≥ t_i} e(λ_i, x_j)

When e is a polynomial in x of low degree the sum is expanded around the
bottom of the opponent support, e(λ, x) = Σ_k c_k(λ)(x − lo)^k, and each
power is summed once with suffix sums. Otherwise pairs are summed in blocks.
"""

from __future__ import annotations
from math import factorial
from typing import List, Optional
import logging

import numpy as np

from ..exprlang import Expr, ExprEvalError, differentiate

logger = logging.getLogger("iotmarket.simulator")

MAX_DEGREE = 4
# Probe positions (fractions of the support) for the degree test.
_PROBES = np.array([0.0, 0.137, 0.291, 0.5, 0.618, 0.853, 1.0])


def polynomial_coefficients(
    e: Expr,
    own_range: tuple,
    opp_range: tuple,
) -> Optional[List[Expr]]:
    """
    Derivatives d^k e/dx^k for k ≤ degree, or None when e is not a
    polynomial of degree ≤ MAX_DEGREE in x on the sampled lattice.
    """
    own = own_range[0] + (own_range[1] - own_range[0]) * _PROBES[:, None]
    opp = opp_range[0] + (opp_range[1] - opp_range[0]) * _PROBES[None, :]
    derivatives = [e]
    for _ in range(MAX_DEGREE + 1):
        nxt = differentiate(derivatives[-1], "x")
        try:
            values = nxt.evaluate_array({"lam": own, "x": opp})
        except ExprEvalError:
            return None
        if np.all(values == 0.0):
            return derivatives
        derivatives.append(nxt)
    return None


def tail_sums(
    e: Expr,
    own: np.ndarray,
    opp_sorted: np.ndarray,
    thresholds: np.ndarray,
    opp_lo: float,
    own_range: tuple,
    opp_range: tuple,
    chunk_cells: int = 1 << 22,
) -> np.ndarray:
    own = np.asarray(own, dtype=float)
    start = np.searchsorted(opp_sorted, thresholds, side="left")
    derivatives = polynomial_coefficients(e, own_range, opp_range)
    if derivatives is not None:
        return _polynomial_tail(derivatives, own, opp_sorted, start, opp_lo)
    logger.info({"event": "simulator.pairwise_tail", "kernel": e.source, "n_own": own.size, "n_opp": opp_sorted.size})
    return _pairwise_tail(e, own, opp_sorted, start, chunk_cells)


def _polynomial_tail(derivatives, own, opp_sorted, start, opp_lo) -> np.ndarray:
    y = opp_sorted - opp_lo
    out = np.zeros(own.shape, dtype=float)
    power = np.ones_like(y)
    at_lo = np.full(own.shape, opp_lo)
    for k, d in enumerate(derivatives):
        coeff = d.evaluate_array({"lam": own, "x": at_lo}) / factorial(k)
        # suffix[j] = Σ_{m ≥ j} y_m^k, suffix[n] = 0
        suffix = np.concatenate([np.cumsum(power[::-1])[::-1], [0.0]])
        out += coeff * suffix[start]
        power = power * y
    return out


def _pairwise_tail(e, own, opp_sorted, start, chunk_cells) -> np.ndarray:
    n_opp = opp_sorted.size
    rows = max(1, chunk_cells // max(n_opp, 1))
    out = np.zeros(own.shape, dtype=float)
    cols = np.arange(n_opp)[None, :]
    for a in range(0, own.size, rows):
        block = own[a:a + rows]
        values = e.evaluate_array({"lam": block[:, None], "x": opp_sorted[None, :]})
        mask = cols >= start[a:a + rows, None]
        out[a:a + rows] = np.where(mask, values, 0.0).sum(axis=1)
    return out
