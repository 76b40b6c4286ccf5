# iotmarket/exprlang/expr_parser.py
"""
Expression Parser
-----------------

Recursive-descent parser for infix arithmetic.

Grammar (highest binding last):
  expr    := term (('+' | '-') term)*
  term    := unary (('*' | '/') unary)*
  unary   := '-' unary | power
  power   := primary ('^' unary)?          # right-associative
  primary := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

Numbers are decimal literals with an optional exponent.
"""

from __future__ import annotations
from dataclasses import dataclass
from typing import List
import math
import re

from .expr_exceptions import ExprSyntaxError, UnknownFunctionError, UnknownIdentifierError
from .expr_nodes import FUNCTIONS, BinOp, Call, Expr, ExprSignature, Neg, Node, Num, Var

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*/^])
  | (?P<lparen>\()
  | (?P<rparen>\))
    """,
    re.VERBOSE,
)

_START = ("number", "identifier", "'('", "'-'")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ExprSyntaxError(source, pos, _START + ("operator",), source[pos])
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source: str, signature: ExprSignature):
        self.source = source
        self.signature = signature
        self.tokens = tokenize(source)
        self.index = 0

    # ------------------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _fail(self, expected) -> None:
        tok = self.current
        raise ExprSyntaxError(self.source, tok.pos, expected, tok.text or "end of input")

    def _is_op(self, *symbols: str) -> bool:
        tok = self.current
        return tok.kind == "op" and tok.text in symbols

    # ------------------------------------------------------------------

    def parse(self) -> Node:
        node = self._expr()
        if self.current.kind != "end":
            self._fail(("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
        return node

    def _expr(self) -> Node:
        node = self._term()
        while self._is_op("+", "-"):
            op = "add" if self._advance().text == "+" else "sub"
            node = BinOp(op, node, self._term())
        return node

    def _term(self) -> Node:
        node = self._unary()
        while self._is_op("*", "/"):
            op = "mul" if self._advance().text == "*" else "div"
            node = BinOp(op, node, self._unary())
        return node

    def _unary(self) -> Node:
        if self._is_op("-"):
            self._advance()
            return Neg(self._unary())
        return self._power()

    def _power(self) -> Node:
        base = self._primary()
        if self._is_op("^"):
            self._advance()
            return BinOp("pow", base, self._unary())
        return base

    def _primary(self) -> Node:
        tok = self.current
        if tok.kind == "number":
            value = float(tok.text)
            if not math.isfinite(value):
                raise ExprSyntaxError(self.source, tok.pos, ("finite number",), tok.text)
            self._advance()
            return Num(value)
        if tok.kind == "ident":
            self._advance()
            if self.current.kind == "lparen":
                if tok.text not in FUNCTIONS:
                    raise UnknownFunctionError(tok.text, tok.pos)
                self._advance()
                arg = self._expr()
                if self.current.kind != "rparen":
                    self._fail(("')'",))
                self._advance()
                return Call(tok.text, arg)
            if tok.text not in self.signature:
                raise UnknownIdentifierError(tok.text, tok.pos, self.signature.names)
            return Var(tok.text)
        if tok.kind == "lparen":
            self._advance()
            node = self._expr()
            if self.current.kind != "rparen":
                self._fail(("')'",))
            self._advance()
            return node
        self._fail(_START)


def parse(source: str, signature: ExprSignature) -> Expr:
    """Parse `source` into an Expr whose free variables are declared by `signature`."""
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    root = _Parser(source, signature).parse()
    return Expr(root, signature, source=source)
