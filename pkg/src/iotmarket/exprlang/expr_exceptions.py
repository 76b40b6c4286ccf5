# iotmarket/exprlang/expr_exceptions.py
"""
Expression Exceptions
---------------------

Errors raised while parsing, validating or evaluating market formulas.
"""

from __future__ import annotations
from typing import Iterable


class ExprError(Exception):
    """Base expression-language error."""


class SignatureError(ExprError):
    """Raised when a variable signature is malformed."""


class ExprSyntaxError(ExprError):
    """Raised when the source text does not match the grammar."""

    def __init__(self, source: str, position: int, expected: Iterable[str], found: str):
        self.source = source
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        self.found = found
        super().__init__(
            f"syntax error at offset {position}: found {found!r}, "
            f"expected one of {', '.join(self.expected)}"
        )


class UnknownIdentifierError(ExprError):
    """Raised when a variable is not declared in the signature."""

    def __init__(self, name: str, position: int, allowed: Iterable[str]):
        self.name = name
        self.position = position
        super().__init__(
            f"unknown identifier {name!r} at offset {position} "
            f"(declared: {', '.join(allowed) or 'none'})"
        )


class UnknownFunctionError(ExprError):
    """Raised when a call names a function outside exp/log/sqrt."""

    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unknown function {name!r} at offset {position}")


class ExprEvalError(ExprError):
    """
    Raised when evaluation hits a domain error.

    `kind` is one of: division-by-zero, log-domain, sqrt-domain,
    pow-domain, non-finite, unbound-variable.
    """

    def __init__(self, kind: str, subexpression: str, detail: str = ""):
        self.kind = kind
        self.subexpression = subexpression
        message = f"{kind} in {subexpression}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)
