# iotmarket/market/market_spec.py
"""
Market Specification
--------------------

Declarative description of a two-sided market:
  • per side: type distribution and the reward primitive γ^K(lam)
  • reward kernels, either direct (R_S, R_B over lam, x) or as
    primitives (M_S, M_B over r, lam) composed with the opposite γ

Compiled kernels R^K(lam, x) and their symbolic ∂/∂lam are built once at
construction and held privately; the spec itself is immutable.
"""

from __future__ import annotations
from enum import Enum
from typing import Dict, Optional, Tuple
import logging

from pydantic import BaseModel, PrivateAttr, root_validator

from ..exprlang import Expr, ExprEvalError, ExprSignature, differentiate, parse, substitute
from ..exprlang.expr_nodes import BinOp
from .market_distributions import TypeDistribution
from .market_exceptions import KernelEvaluationError, MarketSpecError

logger = logging.getLogger("iotmarket.market")

GAMMA_SIGNATURE = ExprSignature.of("lam")
KERNEL_SIGNATURE = ExprSignature.of("lam", "x")
PRIMITIVE_SIGNATURE = ExprSignature.of("r", "lam")


class Side(str, Enum):
    SELLER = "seller"
    BUYER = "buyer"

    @property
    def opposite(self) -> "Side":
        return Side.BUYER if self is Side.SELLER else Side.SELLER

    @property
    def short(self) -> str:
        return "S" if self is Side.SELLER else "B"


def opposite(side: Side) -> Side:
    return Side(side).opposite


class SideSpec(BaseModel):
    distribution: TypeDistribution
    gamma: Expr

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _gamma_signature(cls, values):
        if values["gamma"].signature != GAMMA_SIGNATURE:
            raise ValueError("gamma must be an expression in (lam)")
        return values


class MarketSpec(BaseModel):
    name: str = "market"
    seller: SideSpec
    buyer: SideSpec
    R_S: Optional[Expr] = None
    R_B: Optional[Expr] = None
    M_S: Optional[Expr] = None
    M_B: Optional[Expr] = None

    _kernels: Dict[Side, Expr] = PrivateAttr(default_factory=dict)
    _derivatives: Dict[Side, Expr] = PrivateAttr(default_factory=dict)

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _kernel_mode(cls, values):
        direct = [values.get("R_S"), values.get("R_B")]
        primitive = [values.get("M_S"), values.get("M_B")]
        has_direct = any(e is not None for e in direct)
        has_primitive = any(e is not None for e in primitive)
        if has_direct and has_primitive:
            raise ValueError("give either direct kernels R_S/R_B or primitives M_S/M_B, not both")
        if has_direct:
            if not all(e is not None for e in direct):
                raise ValueError("direct mode needs both R_S and R_B")
            for name, e in zip(("R_S", "R_B"), direct):
                if e.signature != KERNEL_SIGNATURE:
                    raise ValueError(f"{name} must be an expression in (lam, x)")
        elif has_primitive:
            if not all(e is not None for e in primitive):
                raise ValueError("primitive mode needs both M_S and M_B")
            for name, e in zip(("M_S", "M_B"), primitive):
                if e.signature != PRIMITIVE_SIGNATURE:
                    raise ValueError(f"{name} must be an expression in (r, lam)")
        else:
            raise ValueError("no reward kernels given (need R_S/R_B or M_S/M_B)")
        return values

    def __init__(self, **data):
        super().__init__(**data)
        self._compile()

    # ------------------------------------------------------------------
    # Compilation
    # ------------------------------------------------------------------

    def _compile(self) -> None:
        if self.mode == "direct":
            kernels = {Side.SELLER: self.R_S, Side.BUYER: self.R_B}
        else:
            x = parse("x", KERNEL_SIGNATURE)
            g_seller_at_x = substitute(self.seller.gamma, {"lam": x}, KERNEL_SIGNATURE)
            g_buyer_at_x = substitute(self.buyer.gamma, {"lam": x}, KERNEL_SIGNATURE)
            # R^S(lam, x) = M^S(γ^B(x), lam)
            r_seller = substitute(self.M_S, {"r": g_buyer_at_x}, KERNEL_SIGNATURE)
            # R^B(lam, x) = M^B(γ^S(x), lam) − γ^B(lam)
            m_buyer = substitute(self.M_B, {"r": g_seller_at_x}, KERNEL_SIGNATURE)
            r_buyer = Expr(BinOp("sub", m_buyer.root, self.buyer.gamma.root), KERNEL_SIGNATURE)
            kernels = {Side.SELLER: r_seller, Side.BUYER: r_buyer}
        self._kernels = kernels
        self._derivatives = {side: differentiate(k, "lam") for side, k in kernels.items()}
        logger.debug({
            "event": "market.compiled",
            "market": self.name,
            "mode": self.mode,
            "R_S": kernels[Side.SELLER].to_source(),
            "R_B": kernels[Side.BUYER].to_source(),
        })

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def mode(self) -> str:
        return "direct" if self.R_S is not None else "primitive"

    def side(self, side: Side) -> SideSpec:
        return self.seller if Side(side) is Side.SELLER else self.buyer

    def distribution(self, side: Side) -> TypeDistribution:
        return self.side(side).distribution

    def support(self, side: Side) -> Tuple[float, float]:
        d = self.distribution(side)
        return d.lo, d.hi

    def gamma(self, side: Side) -> Expr:
        return self.side(side).gamma

    def kernel(self, side: Side) -> Expr:
        """Compiled R^K(lam, x): lam is the own type, x the opponent's."""
        return self._kernels[Side(side)]

    def kernel_lam_derivative(self, side: Side) -> Expr:
        return self._derivatives[Side(side)]

    def with_kernels(self, R_S: Optional[Expr] = None, R_B: Optional[Expr] = None) -> "MarketSpec":
        """Direct-mode copy with one or both compiled kernels replaced."""
        return MarketSpec(
            name=self.name,
            seller=self.seller,
            buyer=self.buyer,
            R_S=R_S if R_S is not None else self.kernel(Side.SELLER),
            R_B=R_B if R_B is not None else self.kernel(Side.BUYER),
        )

    def describe(self) -> Dict[str, str]:
        out = {"name": self.name, "mode": self.mode}
        for side in Side:
            d = self.distribution(side)
            extra = f", k={d.k}" if d.kind == "power" else ""
            out[f"dist_{side.short}"] = f"{d.kind}[{d.lo}, {d.hi}]{extra}"
            out[f"gamma_{side.short}"] = self.gamma(side).source
            out[f"R_{side.short}"] = self.kernel(side).source
        return out


# ---------------------------------------------------------------------------
# Point evaluation
# ---------------------------------------------------------------------------

def _evaluate(spec: MarketSpec, side: Side, e: Expr, lam_own: float, lam_opp: float) -> float:
    side = Side(side)
    spec.distribution(side)._z(lam_own)
    spec.distribution(side.opposite)._z(lam_opp)
    try:
        return e.root.evaluate({"lam": lam_own, "x": lam_opp})
    except ExprEvalError as exc:
        raise KernelEvaluationError(side.short, {"lam": lam_own, "x": lam_opp}, exc) from exc


def reward_kernel(spec: MarketSpec, side: Side, lam_own: float, lam_opp: float) -> float:
    """R^side(lam_own, lam_opp)."""
    return _evaluate(spec, side, spec.kernel(side), lam_own, lam_opp)


def kernel_derivative(spec: MarketSpec, side: Side, lam_own: float, lam_opp: float) -> float:
    """∂R^side/∂lam_own at (lam_own, lam_opp), from the symbolic derivative."""
    return _evaluate(spec, side, spec.kernel_lam_derivative(side), lam_own, lam_opp)


def build_market(
    seller: TypeDistribution,
    buyer: TypeDistribution,
    gamma_S: str,
    gamma_B: str,
    *,
    R_S: Optional[str] = None,
    R_B: Optional[str] = None,
    M_S: Optional[str] = None,
    M_B: Optional[str] = None,
    name: str = "market",
) -> MarketSpec:
    """Parse formula sources and assemble a MarketSpec."""
    kernels = {}
    for key, src in (("R_S", R_S), ("R_B", R_B)):
        if src is not None:
            kernels[key] = parse(src, KERNEL_SIGNATURE)
    for key, src in (("M_S", M_S), ("M_B", M_B)):
        if src is not None:
            kernels[key] = parse(src, PRIMITIVE_SIGNATURE)
    try:
        return MarketSpec(
            name=name,
            seller=SideSpec(distribution=seller, gamma=parse(gamma_S, GAMMA_SIGNATURE)),
            buyer=SideSpec(distribution=buyer, gamma=parse(gamma_B, GAMMA_SIGNATURE)),
            **kernels,
        )
    except ValueError as exc:
        raise MarketSpecError(str(exc)) from exc
