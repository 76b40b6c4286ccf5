# iotmarket/exprlang/__init__.py

from typing import Mapping

import numpy as np

from .expr_diff import differentiate, substitute
from .expr_exceptions import (
    ExprError,
    ExprEvalError,
    ExprSyntaxError,
    SignatureError,
    UnknownFunctionError,
    UnknownIdentifierError,
)
from .expr_nodes import FUNCTIONS, Expr, ExprSignature
from .expr_parser import parse


def evaluate(e: Expr, bindings: Mapping[str, float]) -> float:
    return e.evaluate(bindings)


def evaluate_array(e: Expr, bindings: Mapping[str, np.ndarray]) -> np.ndarray:
    return e.evaluate_array(bindings)


def to_source(e: Expr) -> str:
    return e.to_source()


__all__ = [
    "Expr",
    "ExprSignature",
    "FUNCTIONS",
    "parse",
    "evaluate",
    "evaluate_array",
    "differentiate",
    "substitute",
    "to_source",
    "ExprError",
    "ExprEvalError",
    "ExprSyntaxError",
    "SignatureError",
    "UnknownFunctionError",
    "UnknownIdentifierError",
]
