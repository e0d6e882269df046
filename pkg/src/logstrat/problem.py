"""Problem files: a ring, ideal generators and a derivation source.

Format (comments start with '#', braces may span lines):

    ring Q[x,y,z] order degrevlex
    ideal { x*y*(x+y)*(x+y*z) }
    derivations tangent

or an explicit generator list

    derivations { x*dx + y*dy ; (x+y)*(y*dy - z*dz) ; (x+y*z)*dz }
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .derivations import Derivation
from .parse import ExpressionParser, ParseError, tokenize
from .poly import Ring, VALID_ORDERS


@dataclass(frozen=True)
class ProblemSpec:
    ring: Ring
    ideal_generators: tuple
    derivation_source: str  # "tangent" | "explicit"
    derivations: tuple  # Derivation objects; empty when tangent

    def canonical_text(self) -> str:
        lines = [
            f"ring Q[{','.join(self.ring.variables)}] order {self.ring.order}"
        ]
        gens = [str(g) for g in self.ideal_generators] or ["0"]
        lines.append("ideal { " + " ; ".join(gens) + " }")
        if self.derivation_source == "tangent":
            lines.append("derivations tangent")
        else:
            lines.append(
                "derivations { " + " ; ".join(str(d) for d in self.derivations) + " }"
            )
        return "\n".join(lines) + "\n"


def _blank_comments(text: str) -> str:
    # keep offsets stable for error positions
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)


class _ProblemParser:
    def __init__(self, text: str):
        self.text = _blank_comments(text)
        self.tokens = tokenize(self.text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok.pos)

    def expect(self, kind, message):
        tok = self.peek()
        if tok.kind != kind:
            self.error(message, tok)
        return self.advance()

    def parse(self) -> ProblemSpec:
        ring = None
        ideal_gens = None
        source = None
        derivations: tuple = ()
        while self.peek().kind != "end":
            tok = self.peek()
            if tok.kind != "name":
                self.error("expected a directive (ring, ideal, derivations)")
            if tok.value == "ring":
                if ring is not None:
                    self.error("duplicate ring directive", tok)
                self.advance()
                ring = self._parse_ring()
            elif tok.value == "ideal":
                if ring is None:
                    self.error("the ring directive must come first", tok)
                if ideal_gens is not None:
                    self.error("duplicate ideal directive", tok)
                self.advance()
                ideal_gens = self._parse_ideal(ring)
            elif tok.value == "derivations":
                if ring is None:
                    self.error("the ring directive must come first", tok)
                if source is not None:
                    self.error("duplicate derivations directive", tok)
                self.advance()
                source, derivations = self._parse_derivations(ring)
            else:
                self.error(f"unknown directive {tok.value!r}", tok)
        if ring is None:
            raise ParseError("missing ring directive", self.text, len(self.text))
        if ideal_gens is None:
            raise ParseError("missing ideal directive", self.text, len(self.text))
        if source is None:
            raise ParseError("missing derivations directive", self.text, len(self.text))
        return ProblemSpec(ring, ideal_gens, source, derivations)

    def _parse_ring(self) -> Ring:
        field = self.expect("name", "expected the coefficient field Q")
        if field.value != "Q":
            self.error("only the rational field Q is supported", field)
        self.expect("[", "expected '[' after Q")
        names = [self.expect("name", "expected a variable name").value]
        while self.peek().kind == ",":
            self.advance()
            names.append(self.expect("name", "expected a variable name").value)
        self.expect("]", "expected ']' to close the variable list")
        order = "degrevlex"
        if self.peek().kind == "name" and self.peek().value == "order":
            self.advance()
            order_tok = self.expect("name", "expected a monomial order name")
            if order_tok.value not in VALID_ORDERS:
                self.error(
                    f"unknown order {order_tok.value!r}; choose from {VALID_ORDERS}",
                    order_tok,
                )
            order = order_tok.value
        try:
            return Ring(tuple(names), order)
        except ValueError as exc:
            self.error(str(exc), field)

    def _parse_expressions(self, ring: Ring, allow_derivations: bool):
        self.expect("{", "expected '{'")
        values = []
        if self.peek().kind == "}":
            self.error("empty block; write 0 for the zero ideal")
        while True:
            parser = ExpressionParser(
                self.text,
                ring,
                allow_derivations=allow_derivations,
                tokens=self.tokens,
                start=self.i,
            )
            values.append(parser.parse_expression())
            self.i = parser.i
            tok = self.peek()
            if tok.kind == ";":
                self.advance()
                continue
            if tok.kind == "}":
                self.advance()
                return values
            self.error("expected ';' or '}' after the expression")

    def _parse_ideal(self, ring: Ring) -> tuple:
        values = self._parse_expressions(ring, allow_derivations=False)
        gens = []
        for v in values:
            if v.vector is not None:
                self.error("derivation symbols are not allowed in the ideal block")
            if not v.poly.is_zero():
                gens.append(v.poly)
        return tuple(gens)

    def _parse_derivations(self, ring: Ring):
        tok = self.peek()
        if tok.kind == "name" and tok.value == "tangent":
            self.advance()
            return "tangent", ()
        values = self._parse_expressions(ring, allow_derivations=True)
        derivs = []
        for v in values:
            if not v.poly.is_zero():
                self.error(
                    "derivation expression has a scalar part with no basis symbol"
                )
            vector = v.vector or {}
            coeffs = tuple(vector.get(i, ring.zero()) for i in range(ring.nvars))
            d = Derivation(ring, coeffs)
            if not d.is_zero():
                derivs.append(d)
        return "explicit", tuple(derivs)


def parse_problem(text: str) -> ProblemSpec:
    """Parse and validate a problem file; raises ParseError with position."""
    return _ProblemParser(text).parse()
