# iotmarket/numerics/__init__.py

from .numerics_config import DEFAULT_TOLERANCES, Tolerances
from .numerics_exceptions import (
    NoSignChangeError,
    NonFiniteValueError,
    NumericsError,
    QuadratureDepthError,
)
from .quadrature import integrate, integrate_piecewise
from .roots import find_root
from .scans import Monotonicity, ScanResult, monotone_scan, scan_values

__all__ = [
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "NumericsError",
    "NonFiniteValueError",
    "NoSignChangeError",
    "QuadratureDepthError",
    "integrate",
    "integrate_piecewise",
    "find_root",
    "Monotonicity",
    "ScanResult",
    "monotone_scan",
    "scan_values",
]
