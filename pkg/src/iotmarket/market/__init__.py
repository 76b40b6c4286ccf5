# iotmarket/market/__init__.py

from .market_distributions import (
    DISTRIBUTIONS,
    PowerDistribution,
    TypeDistribution,
    UniformDistribution,
    make_distribution,
)
from .market_exceptions import (
    KernelEvaluationError,
    MarketError,
    MarketSpecError,
    OutOfSupportError,
    ZeroDensityError,
)
from .market_spec import (
    GAMMA_SIGNATURE,
    KERNEL_SIGNATURE,
    PRIMITIVE_SIGNATURE,
    MarketSpec,
    Side,
    SideSpec,
    build_market,
    kernel_derivative,
    opposite,
    reward_kernel,
)
from .market_validation import ValidationReport, Violation, validate_spec


def density(d: TypeDistribution, lam: float) -> float:
    return d.density(lam)


def cdf(d: TypeDistribution, lam: float) -> float:
    return d.cdf(lam)


def inverse_cdf(d: TypeDistribution, u: float) -> float:
    return d.inverse_cdf(u)


def hazard_complement(d: TypeDistribution, lam: float) -> float:
    return d.hazard_complement(lam)


__all__ = [
    "DISTRIBUTIONS",
    "TypeDistribution",
    "UniformDistribution",
    "PowerDistribution",
    "make_distribution",
    "density",
    "cdf",
    "inverse_cdf",
    "hazard_complement",
    "Side",
    "opposite",
    "SideSpec",
    "MarketSpec",
    "GAMMA_SIGNATURE",
    "KERNEL_SIGNATURE",
    "PRIMITIVE_SIGNATURE",
    "build_market",
    "reward_kernel",
    "kernel_derivative",
    "ValidationReport",
    "Violation",
    "validate_spec",
    "MarketError",
    "MarketSpecError",
    "OutOfSupportError",
    "ZeroDensityError",
    "KernelEvaluationError",
]
