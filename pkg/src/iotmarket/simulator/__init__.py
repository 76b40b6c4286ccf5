# iotmarket/simulator/__init__.py

from .sim_config import SimConfig
from .simulation import AgentRecords, SimResult, sample_population, simulate
from .tail_sums import polynomial_coefficients, tail_sums

__all__ = [
    "SimConfig",
    "SimResult",
    "AgentRecords",
    "sample_population",
    "simulate",
    "tail_sums",
    "polynomial_coefficients",
]
