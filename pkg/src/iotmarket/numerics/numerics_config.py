# iotmarket/numerics/numerics_config.py
"""
Numerics Configuration
----------------------

Tolerances shared by every quadrature and root solve. Defaults sit two
orders of magnitude below the acceptance tolerances of the audits.
"""

from __future__ import annotations
from pydantic import BaseModel, validator


class Tolerances(BaseModel):
    quad_abs: float = 1e-9
    quad_rel: float = 1e-9
    root_x: float = 1e-10
    max_depth: int = 50

    class Config:
        allow_mutation = False

    @validator("quad_abs", "quad_rel", "root_x")
    def _positive(cls, v, field):
        if not v > 0:
            raise ValueError(f"{field.name} must be strictly positive")
        return float(v)

    @validator("max_depth")
    def _depth(cls, v):
        if v < 10:
            raise ValueError("max_depth must be at least 10")
        return v


DEFAULT_TOLERANCES = Tolerances()
