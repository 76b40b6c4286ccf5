# iotmarket/exprlang/expr_nodes.py
"""
Expression Nodes
----------------

Immutable expression trees for the scalar formulas that configure a market
(γ^K, M^K, R^K).

Node kinds:
  • Num   - decimal literal
  • Var   - variable reference
  • Neg   - unary negation
  • BinOp - add / sub / mul / div / pow
  • Call  - exp / log / sqrt

Every node evaluates in two modes: scalar (math, double precision) and
element-wise over numpy arrays. Both report domain errors with the
offending sub-expression.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Tuple, Union
import math
import re

import numpy as np

from .expr_exceptions import ExprEvalError, SignatureError

Number = Union[float, int]

FUNCTIONS = ("exp", "log", "sqrt")
OPERATORS = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")


# ---------------------------------------------------------------------------
# Signature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExprSignature:
    """Ordered variable names an expression may reference."""

    names: Tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise SignatureError("signature must declare at least one variable")
        seen = set()
        for name in self.names:
            if not isinstance(name, str) or not _IDENT.match(name) or not name.isascii():
                raise SignatureError(f"invalid variable name {name!r}")
            if name in FUNCTIONS:
                raise SignatureError(f"variable name {name!r} shadows a function")
            if name in seen:
                raise SignatureError(f"duplicate variable name {name!r}")
            seen.add(name)

    @classmethod
    def of(cls, *names: str) -> "ExprSignature":
        return cls(tuple(names))

    def __contains__(self, name: object) -> bool:
        return name in self.names

    def __iter__(self):
        return iter(self.names)


# ---------------------------------------------------------------------------
# Nodes
# ---------------------------------------------------------------------------

class Node:
    __slots__ = ()

    def evaluate(self, env: Mapping[str, float]) -> float:
        raise NotImplementedError

    def evaluate_array(self, env: Mapping[str, np.ndarray]) -> np.ndarray:
        raise NotImplementedError

    def to_source(self) -> str:
        raise NotImplementedError

    def variables(self) -> FrozenSet[str]:
        raise NotImplementedError


def _finite(value: float, node: Node) -> float:
    if not math.isfinite(value):
        raise ExprEvalError("non-finite", node.to_source(), f"value {value}")
    return value


def _finite_array(values: np.ndarray, node: Node) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise ExprEvalError("non-finite", node.to_source())
    return values


@dataclass(frozen=True)
class Num(Node):
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"non-finite literal {self.value!r}")

    def evaluate(self, env):
        return self.value

    def evaluate_array(self, env):
        return np.asarray(self.value, dtype=float)

    def to_source(self):
        text = repr(float(self.value))
        return f"({text})" if self.value < 0 or text.startswith("-") else text

    def variables(self):
        return frozenset()


@dataclass(frozen=True)
class Var(Node):
    name: str

    def evaluate(self, env):
        try:
            return float(env[self.name])
        except KeyError:
            raise ExprEvalError("unbound-variable", self.name) from None

    def evaluate_array(self, env):
        try:
            return np.asarray(env[self.name], dtype=float)
        except KeyError:
            raise ExprEvalError("unbound-variable", self.name) from None

    def to_source(self):
        return self.name

    def variables(self):
        return frozenset((self.name,))


@dataclass(frozen=True)
class Neg(Node):
    operand: Node

    def evaluate(self, env):
        return -self.operand.evaluate(env)

    def evaluate_array(self, env):
        return -self.operand.evaluate_array(env)

    def to_source(self):
        return f"(-{self.operand.to_source()})"

    def variables(self):
        return self.operand.variables()


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node

    def evaluate(self, env):
        a = self.left.evaluate(env)
        b = self.right.evaluate(env)
        op = self.op
        if op == "add":
            return _finite(a + b, self)
        if op == "sub":
            return _finite(a - b, self)
        if op == "mul":
            return _finite(a * b, self)
        if op == "div":
            if b == 0.0:
                raise ExprEvalError("division-by-zero", self.to_source())
            return _finite(a / b, self)
        # pow
        if a < 0.0 and not float(b).is_integer():
            raise ExprEvalError("pow-domain", self.to_source(), f"negative base {a} with exponent {b}")
        if a == 0.0 and b < 0.0:
            raise ExprEvalError("division-by-zero", self.to_source(), "zero base with negative exponent")
        try:
            return _finite(math.pow(a, b), self)
        except OverflowError:
            raise ExprEvalError("non-finite", self.to_source(), "overflow") from None

    def evaluate_array(self, env):
        a = self.left.evaluate_array(env)
        b = self.right.evaluate_array(env)
        op = self.op
        with np.errstate(all="ignore"):
            if op == "add":
                out = a + b
            elif op == "sub":
                out = a - b
            elif op == "mul":
                out = a * b
            elif op == "div":
                if np.any(b == 0.0):
                    raise ExprEvalError("division-by-zero", self.to_source())
                out = a / b
            else:
                a, b = np.broadcast_arrays(a, b)
                if np.any((a < 0.0) & (b != np.floor(b))):
                    raise ExprEvalError("pow-domain", self.to_source())
                if np.any((a == 0.0) & (b < 0.0)):
                    raise ExprEvalError("division-by-zero", self.to_source())
                out = np.power(a, b)
        return _finite_array(out, self)

    def to_source(self):
        return f"({self.left.to_source()} {OPERATORS[self.op]} {self.right.to_source()})"

    def variables(self):
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True)
class Call(Node):
    func: str
    arg: Node

    def evaluate(self, env):
        x = self.arg.evaluate(env)
        if self.func == "exp":
            try:
                return _finite(math.exp(x), self)
            except OverflowError:
                raise ExprEvalError("non-finite", self.to_source(), "overflow") from None
        if self.func == "log":
            if x <= 0.0:
                raise ExprEvalError("log-domain", self.to_source(), f"argument {x}")
            return math.log(x)
        if x < 0.0:
            raise ExprEvalError("sqrt-domain", self.to_source(), f"argument {x}")
        return math.sqrt(x)

    def evaluate_array(self, env):
        x = self.arg.evaluate_array(env)
        with np.errstate(all="ignore"):
            if self.func == "exp":
                return _finite_array(np.exp(x), self)
            if self.func == "log":
                if np.any(x <= 0.0):
                    raise ExprEvalError("log-domain", self.to_source())
                return np.log(x)
            if np.any(x < 0.0):
                raise ExprEvalError("sqrt-domain", self.to_source())
            return np.sqrt(x)

    def to_source(self):
        return f"{self.func}({self.arg.to_source()})"

    def variables(self):
        return self.arg.variables()


# ---------------------------------------------------------------------------
# Expr
# ---------------------------------------------------------------------------

class Expr:
    """
    A parsed formula bound to its signature.

    Immutable: the tree is built once and only read afterwards, so one Expr
    can be shared across threads.
    """

    __slots__ = ("_root", "_signature", "_source")

    def __init__(self, root: Node, signature: ExprSignature, source: str = None):
        unknown = root.variables() - set(signature.names)
        if unknown:
            raise SignatureError(f"expression references undeclared variables: {sorted(unknown)}")
        object.__setattr__(self, "_root", root)
        object.__setattr__(self, "_signature", signature)
        object.__setattr__(self, "_source", source)

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    @property
    def root(self) -> Node:
        return self._root

    @property
    def signature(self) -> ExprSignature:
        return self._signature

    @property
    def source(self) -> str:
        return self._source if self._source is not None else self._root.to_source()

    @property
    def free_variables(self) -> FrozenSet[str]:
        return self._root.variables()

    def evaluate(self, bindings: Mapping[str, float] = None, **kwargs: float) -> float:
        env: Dict[str, float] = dict(bindings or {})
        env.update(kwargs)
        return self._root.evaluate(env)

    def __call__(self, *args: float) -> float:
        return self._root.evaluate(dict(zip(self._signature.names, args)))

    def evaluate_array(self, bindings: Mapping[str, Iterable[float]]) -> np.ndarray:
        env = {name: np.asarray(value, dtype=float) for name, value in bindings.items()}
        shape = np.broadcast_shapes(*(v.shape for v in env.values())) if env else ()
        return np.broadcast_to(self._root.evaluate_array(env), shape).astype(float)

    def to_source(self) -> str:
        return self._root.to_source()

    def derivative(self, var: str) -> "Expr":
        from .expr_diff import differentiate

        return differentiate(self, var)

    def __repr__(self) -> str:
        return f"Expr({self.source!r}, signature={self._signature.names})"
