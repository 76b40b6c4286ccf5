# iotmarket/simulator/sim_config.py
"""
Simulation Configuration
------------------------

  • population sizes per side (≥ 1)
  • 64-bit seed; both populations derive from it
  • the market and the solved mechanism to realize
"""

from __future__ import annotations
from pydantic import BaseModel, validator

from ..market import MarketSpec
from ..solver import MechanismSolution

SEED_LIMIT = 2 ** 64


class SimConfig(BaseModel):
    spec: MarketSpec
    solution: MechanismSolution
    n_sellers: int
    n_buyers: int
    seed: int
    # matrix cells per block when a kernel has to be summed pair by pair
    chunk_cells: int = 1 << 22

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @validator("n_sellers", "n_buyers")
    def _count(cls, v, field):
        if v < 1:
            raise ValueError(f"{field.name} must be at least 1, got {v}")
        return v

    @validator("seed")
    def _seed(cls, v):
        if not 0 <= v < SEED_LIMIT:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {v}")
        return v

    @validator("chunk_cells")
    def _chunk(cls, v):
        if v < 1024:
            raise ValueError("chunk_cells must be at least 1024")
        return v
