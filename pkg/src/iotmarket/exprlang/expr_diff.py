# iotmarket/exprlang/expr_diff.py
"""
Symbolic Differentiation
------------------------

Sum, product, quotient, chain and power rules over expression trees, plus
substitution (function composition). Literal arithmetic is folded as the
tree is built; nothing else is simplified.
"""

from __future__ import annotations
from typing import Mapping

from .expr_exceptions import ExprEvalError, SignatureError
from .expr_nodes import BinOp, Call, Expr, ExprSignature, Neg, Node, Num, Var

ZERO = Num(0.0)
ONE = Num(1.0)


# ---------------------------------------------------------------------------
# Folding constructors
# ---------------------------------------------------------------------------

def _binop(op: str, left: Node, right: Node) -> Node:
    node = BinOp(op, left, right)
    if isinstance(left, Num) and isinstance(right, Num):
        try:
            return Num(node.evaluate({}))
        except ExprEvalError:
            return node
    return node


def _neg(node: Node) -> Node:
    if isinstance(node, Num):
        return Num(-node.value)
    return Neg(node)


def _add(a, b):
    return _binop("add", a, b)


def _sub(a, b):
    return _binop("sub", a, b)


def _mul(a, b):
    return _binop("mul", a, b)


def _div(a, b):
    return _binop("div", a, b)


def _pow(a, b):
    return _binop("pow", a, b)


# ---------------------------------------------------------------------------
# Derivative
# ---------------------------------------------------------------------------

def _d(node: Node, var: str) -> Node:
    if isinstance(node, Num):
        return ZERO
    if isinstance(node, Var):
        return ONE if node.name == var else ZERO
    if isinstance(node, Neg):
        return _neg(_d(node.operand, var))
    if isinstance(node, Call):
        u = node.arg
        du = _d(u, var)
        if node.func == "exp":
            return _mul(Call("exp", u), du)
        if node.func == "log":
            return _div(du, u)
        return _div(du, _mul(Num(2.0), Call("sqrt", u)))

    u, v = node.left, node.right
    if node.op in ("add", "sub"):
        return _binop(node.op, _d(u, var), _d(v, var))
    if node.op == "mul":
        return _add(_mul(_d(u, var), v), _mul(u, _d(v, var)))
    if node.op == "div":
        return _div(_sub(_mul(_d(u, var), v), _mul(u, _d(v, var))), _mul(v, v))

    # pow: pick the rule by where `var` occurs
    if var not in v.variables():
        # d(u^c) = c * u^(c-1) * u'
        return _mul(_mul(v, _pow(u, _sub(v, ONE))), _d(u, var))
    if var not in u.variables():
        # d(a^v) = a^v * log(a) * v'
        return _mul(_mul(node, Call("log", u)), _d(v, var))
    # general: u^v * (v' log u + v u' / u)
    return _mul(
        node,
        _add(_mul(_d(v, var), Call("log", u)), _div(_mul(v, _d(u, var)), u)),
    )


def differentiate(e: Expr, var: str) -> Expr:
    """Return an Expr computing ∂e/∂var over the same signature."""
    if var not in e.signature:
        raise SignatureError(f"cannot differentiate with respect to undeclared variable {var!r}")
    return Expr(_d(e.root, var), e.signature)


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def _subst(node: Node, mapping: Mapping[str, Node]) -> Node:
    if isinstance(node, Var):
        return mapping.get(node.name, node)
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(_subst(node.operand, mapping))
    if isinstance(node, Call):
        return Call(node.func, _subst(node.arg, mapping))
    return BinOp(node.op, _subst(node.left, mapping), _subst(node.right, mapping))


def substitute(e: Expr, mapping: Mapping[str, Expr], signature: ExprSignature) -> Expr:
    """
    Replace variables of `e` by whole expressions.

    The result is evaluated through exactly the same operations as
    evaluating each replacement first and feeding its value into `e`.
    """
    roots = {name: sub.root for name, sub in mapping.items()}
    return Expr(_subst(e.root, roots), signature)
