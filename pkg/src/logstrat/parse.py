"""Parser for the polynomial and derivation expression language.

Grammar: integers (and p/q rational literals), variable names, d<var>
basis symbols inside derivation expressions, the operators + - * ^ and
parentheses.  ^ binds tighter than *, which binds tighter than + and -.
Multiplication is always explicit.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, Ring

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


class ParseError(ValueError):
    """Syntax error with the offending position in the source text."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        super().__init__(f"{message} (line {line}, column {col})")


class Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind: str, value, pos: int):
        self.kind = kind  # "num" | "name" | the operator character
        self.value = value
        self.pos = pos

    def __repr__(self) -> str:
        return f"Token({self.kind!r}, {self.value!r})"


def tokenize(text: str) -> list:
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        pos = match.start()
        if match.group(1) is not None:
            tokens.append(Token("num", int(match.group(1)), pos))
        elif match.group(2) is not None:
            tokens.append(Token("name", match.group(2), pos))
        else:
            tokens.append(Token(match.group(3), match.group(3), pos))
    tokens.append(Token("end", None, len(text)))
    return tokens


class _Value:
    """Either a scalar polynomial or a derivation coefficient vector."""

    __slots__ = ("poly", "vector")

    def __init__(self, poly: Polynomial, vector: dict | None = None):
        self.poly = poly
        self.vector = vector  # var index -> coefficient Polynomial


class ExpressionParser:
    def __init__(
        self,
        text: str,
        ring: Ring,
        allow_derivations: bool = False,
        tokens: list | None = None,
        start: int = 0,
    ):
        self.text = text
        self.ring = ring
        self.allow_derivations = allow_derivations
        self.tokens = tokenize(text) if tokens is None else tokens
        self.i = start

    # -- token helpers -----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok.pos)

    # -- grammar -----------------------------------------------------------

    def parse_expression(self) -> _Value:
        value = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.parse_term()
            value = self._combine_add(value, rhs, negate=(op == "-"))
        return value

    def parse_term(self) -> _Value:
        value = self.parse_factor()
        while self.peek().kind == "*":
            self.advance()
            rhs = self.parse_factor()
            value = self._multiply(value, rhs)
        return value

    def parse_factor(self) -> _Value:
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.advance()
            inner = self.parse_factor()
            if tok.kind == "-":
                return self._negate(inner)
            return inner
        base = self.parse_base()
        if self.peek().kind == "^":
            caret = self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "num":
                self.error("expected an integer exponent after '^'", caret)
            self.advance()
            if base.vector is not None:
                self.error("cannot raise a derivation to a power", caret)
            return _Value(base.poly ** exp_tok.value)
        return base

    def parse_base(self) -> _Value:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            value = Fraction(tok.value)
            if self.peek().kind == "/":
                self.advance()
                den = self.peek()
                if den.kind != "num":
                    self.error("expected an integer denominator after '/'")
                if den.value == 0:
                    self.error("zero denominator", den)
                self.advance()
                value = Fraction(tok.value, den.value)
            return _Value(self.ring.constant(value))
        if tok.kind == "name":
            self.advance()
            name = tok.value
            if name in self.ring._index:
                return _Value(self.ring.var(name))
            if (
                self.allow_derivations
                and len(name) > 1
                and name[0] == "d"
                and name[1:] in self.ring._index
            ):
                idx = self.ring.index(name[1:])
                return _Value(self.ring.zero(), {idx: self.ring.one()})
            if len(name) > 1 and name[0] == "d" and name[1:] in self.ring._index:
                self.error(
                    f"derivation symbol {name!r} is not allowed here", tok
                )
            self.error(f"unknown variable name {name!r}", tok)
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expression()
            if self.peek().kind != ")":
                self.error("expected ')'")
            self.advance()
            return inner
        self.error("expected a number, variable or '('", tok)

    # -- value algebra -------------------------------------------------------

    def _negate(self, v: _Value) -> _Value:
        vec = None
        if v.vector is not None:
            vec = {i: -p for i, p in v.vector.items()}
        return _Value(-v.poly, vec)

    def _combine_add(self, a: _Value, b: _Value, negate: bool) -> _Value:
        if negate:
            b = self._negate(b)
        if a.vector is None and b.vector is None:
            return _Value(a.poly + b.poly)
        vec = dict(a.vector or {})
        for i, p in (b.vector or {}).items():
            vec[i] = vec.get(i, self.ring.zero()) + p
        return _Value(a.poly + b.poly, vec)

    def _multiply(self, a: _Value, b: _Value) -> _Value:
        if a.vector is not None and b.vector is not None:
            self.error("cannot multiply two derivation expressions")
        if a.vector is None and b.vector is None:
            return _Value(a.poly * b.poly)
        scalar, deriv = (a, b) if a.vector is None else (b, a)
        if not deriv.poly.is_zero():
            self.error("cannot multiply a mixed scalar+derivation expression")
        vec = {i: scalar.poly * p for i, p in deriv.vector.items()}
        return _Value(self.ring.zero(), vec)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse an expression into a canonical polynomial of the given ring."""
    parser = ExpressionParser(text, ring, allow_derivations=False)
    value = parser.parse_expression()
    end = parser.peek()
    if end.kind != "end":
        parser.error("unexpected trailing input", end)
    return value.poly


def parse_derivation_coefficients(text: str, ring: Ring) -> tuple:
    """Parse a derivation expression; returns one coefficient per variable."""
    parser = ExpressionParser(text, ring, allow_derivations=True)
    value = parser.parse_expression()
    end = parser.peek()
    if end.kind != "end":
        parser.error("unexpected trailing input", end)
    if not value.poly.is_zero():
        raise ParseError(
            "derivation expression has a scalar part with no basis symbol",
            text,
            0,
        )
    vector = value.vector or {}
    return tuple(vector.get(i, ring.zero()) for i in range(ring.nvars))
