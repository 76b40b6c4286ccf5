# iotmarket/market/market_distributions.py
"""
Type Distributions
------------------

Families with closed-form F, f, F⁻¹ and (1−F)/f on a finite support:
  • uniform on [lo, hi]
  • power:  F(λ) = ((λ − lo)/(hi − lo))^k, k > 0

Families register in DISTRIBUTIONS by name.
"""

from __future__ import annotations
from typing import Optional
import math

import numpy as np
from pydantic import BaseModel, root_validator, validator

from ..registry import Registry
from .market_exceptions import MarketSpecError, OutOfSupportError, ZeroDensityError

DISTRIBUTIONS = Registry("distribution family")

# Rounding slack accepted at the support edges, relative to the width.
EDGE_SLACK = 1e-12
# Offset, relative to the width, at which an infinite edge density is read.
OPEN_EDGE = 1e-9


class TypeDistribution(BaseModel):
    kind: str
    lo: float
    hi: float

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _support(cls, values):
        lo, hi = values["lo"], values["hi"]
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise ValueError("support must be a finite interval")
        if not lo < hi:
            raise ValueError(f"support requires lo < hi, got [{lo}, {hi}]")
        return values

    # ------------------------------------------------------------------

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def _z(self, lam: float) -> float:
        slack = EDGE_SLACK * self.width
        if not (self.lo - slack <= lam <= self.hi + slack):
            raise OutOfSupportError(f"type {lam!r} outside support [{self.lo}, {self.hi}]")
        return min(1.0, max(0.0, (lam - self.lo) / self.width))

    def density(self, lam: float) -> float:
        raise NotImplementedError

    def cdf(self, lam: float) -> float:
        raise NotImplementedError

    def inverse_cdf(self, u: float) -> float:
        raise NotImplementedError

    def inverse_cdf_array(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def singular_lo(self) -> bool:
        """True when f(lo) is infinite (power family with k < 1)."""
        return math.isinf(self.density(self.lo))

    def density_open(self, lam: float) -> float:
        """f(λ), read just inside the support where the edge density is infinite."""
        f = self.density(lam)
        if math.isinf(f):
            return self.density(self.lo + OPEN_EDGE * self.width)
        return f

    def hazard_complement(self, lam: float) -> float:
        """(1 − F(λ)) / f(λ)."""
        f = self.density(lam)
        if f == 0.0:
            raise ZeroDensityError(f"density vanishes at {lam!r}")
        return (1.0 - self.cdf(lam)) / f

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(self.lo, self.hi, n)

    @staticmethod
    def _check_u(u: float) -> float:
        if not 0.0 <= u <= 1.0:
            raise OutOfSupportError(f"probability {u!r} outside [0, 1]")
        return u


@DISTRIBUTIONS.register("uniform")
class UniformDistribution(TypeDistribution):
    kind: str = "uniform"

    def density(self, lam):
        self._z(lam)
        return 1.0 / self.width

    def cdf(self, lam):
        return self._z(lam)

    def inverse_cdf(self, u):
        u = self._check_u(u)
        if u == 1.0:
            return self.hi
        return self.lo + self.width * u

    def inverse_cdf_array(self, u):
        return self.lo + self.width * np.asarray(u, dtype=float)

    def hazard_complement(self, lam):
        self._z(lam)
        return max(0.0, self.hi - lam)


@DISTRIBUTIONS.register("power")
class PowerDistribution(TypeDistribution):
    kind: str = "power"
    k: float = 1.0

    @validator("k")
    def _k_positive(cls, v):
        if not (math.isfinite(v) and v > 0):
            raise ValueError(f"power exponent k must be positive, got {v}")
        return v

    def density(self, lam):
        z = self._z(lam)
        if z == 0.0:
            if self.k > 1.0:
                return 0.0
            return 1.0 / self.width if self.k == 1.0 else math.inf
        return self.k * z ** (self.k - 1.0) / self.width

    def cdf(self, lam):
        return self._z(lam) ** self.k

    def inverse_cdf(self, u):
        u = self._check_u(u)
        if u == 1.0:
            return self.hi
        return self.lo + self.width * u ** (1.0 / self.k)

    def inverse_cdf_array(self, u):
        return self.lo + self.width * np.power(np.asarray(u, dtype=float), 1.0 / self.k)


def make_distribution(kind: str, lo: float, hi: float, k: Optional[float] = None) -> TypeDistribution:
    try:
        family = DISTRIBUTIONS.get(kind)
    except KeyError as exc:
        raise MarketSpecError(str(exc)) from None
    data = {"lo": lo, "hi": hi}
    if k is not None:
        if kind != "power":
            raise MarketSpecError(f"power_k given for a {kind} distribution")
        data["k"] = k
    return family(**data)
