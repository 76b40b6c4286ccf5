# iotmarket/cli/run_config.py
"""
Run Configuration
-----------------

One command invocation, merged in increasing precedence from:
  • built-in defaults
  • environment (iotmarket.config.Settings)
  • the market file's [options] section
  • command-line flags
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from pydantic import BaseModel, ValidationError, validator

from ..config import Settings, settings as env_settings
from ..constants import MIN_AUDIT_N, MIN_GRID_N
from ..mechanism import Objective
from ..numerics import Tolerances
from .cli_exceptions import RunConfigError

DEFAULT_OUT_DIR = "out"
DEFAULT_OBJECTIVE = Objective.REVENUE
TOLERANCE_KEYS = ("quad_abs", "quad_rel", "root_x", "max_depth")


class RunConfig(BaseModel):
    market: Path
    objective: Objective = DEFAULT_OBJECTIVE
    grid_n: int
    audit_n: int
    tolerances: Tolerances = Tolerances()
    seed: int
    n_sellers: int
    n_buyers: int
    out_dir: Path
    sweep_n: int = 21

    class Config:
        allow_mutation = False

    @validator("market")
    def _market_exists(cls, v):
        if not v.is_file():
            raise ValueError(f"market file {str(v)!r} does not exist")
        return v

    @validator("grid_n")
    def _grid(cls, v):
        if v < MIN_GRID_N:
            raise ValueError(f"grid_n must be at least {MIN_GRID_N}")
        return v

    @validator("audit_n")
    def _audit(cls, v):
        if v < MIN_AUDIT_N:
            raise ValueError(f"audit_n must be at least {MIN_AUDIT_N}")
        return v

    @validator("n_sellers", "n_buyers", "sweep_n")
    def _counts(cls, v, field):
        if v < 1:
            raise ValueError(f"{field.name} must be at least 1")
        return v

    @validator("sweep_n")
    def _sweep(cls, v):
        if v < 2:
            raise ValueError("sweep_n must be at least 2")
        return v

    @classmethod
    def resolve(
        cls,
        market: Path,
        flags: Mapping[str, Any],
        options: Optional[Mapping[str, Any]] = None,
        settings: Optional[Settings] = None,
    ) -> "RunConfig":
        """Merge the layers; a flag or option left as None falls through."""
        settings = settings or env_settings
        merged: Dict[str, Any] = {
            "objective": DEFAULT_OBJECTIVE.value,
            "grid_n": settings.GRID_N,
            "audit_n": settings.AUDIT_N,
            "seed": settings.SEED,
            "n_sellers": settings.N_SELLERS,
            "n_buyers": settings.N_BUYERS,
            "out_dir": settings.OUT_DIR or DEFAULT_OUT_DIR,
        }
        tolerances = Tolerances().dict()
        for layer in (options or {}, flags):
            for key, value in layer.items():
                if value is None:
                    continue
                if key in TOLERANCE_KEYS:
                    tolerances[key] = value
                else:
                    merged[key] = value
        try:
            return cls(market=market, tolerances=Tolerances(**tolerances), **merged)
        except ValidationError as exc:
            details = "; ".join(
                f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()
            )
            raise RunConfigError(details) from None
