"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from monomial exponent tuples to Fraction
coefficients; zero coefficients are never stored, so equal dictionaries
mean equal polynomials.  All values are immutable after construction and
every operation returns a fresh polynomial in canonical form.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Monomial = tuple  # exponent tuple, one entry per ring variable

VALID_ORDERS = ("degrevlex", "lex")


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to a rational scalar")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class Ring:
    """A polynomial ring Q[x_1, ..., x_n] with a fixed monomial order.

    The order is total on monomials; degrevlex is the default, lex is
    available for elimination-style computations.
    """

    __slots__ = ("variables", "order", "_index")

    def __init__(self, variables: Sequence[str], order: str = "degrevlex"):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        if order not in VALID_ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.variables = variables
        self.order = order
        self._index = {name: i for i, name in enumerate(variables)}

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def sort_key(self, mono: Monomial):
        """Ascending key: bigger key means bigger monomial in the ring order."""
        if self.order == "lex":
            return mono
        return (sum(mono), tuple(-e for e in reversed(mono)))

    def zero_monomial(self) -> Monomial:
        return (0,) * len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value) -> "Polynomial":
        c = _as_fraction(value)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {self.zero_monomial(): c})

    def var(self, which) -> "Polynomial":
        i = which if isinstance(which, int) else self.index(which)
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, mono: Monomial, coeff=1) -> "Polynomial":
        if len(mono) != self.nvars:
            raise ValueError("monomial arity mismatch")
        c = _as_fraction(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {tuple(mono): c})

    def monomials_up_to_degree(self, bound: int) -> list:
        """All monomials of total degree <= bound, ascending in the ring order."""
        result = [()]
        for _ in range(self.nvars):
            result = [m + (e,) for m in result for e in range(bound + 1 - sum(m))]
        result.sort(key=self.sort_key)
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.order))

    def __repr__(self) -> str:
        return f"Ring(Q[{', '.join(self.variables)}], {self.order})"


class Polynomial:
    """Immutable multivariate polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_lead", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        clean = {}
        for mono, coeff in terms.items():
            c = coeff if isinstance(coeff, Fraction) else _as_fraction(coeff)
            if c != 0:
                clean[tuple(mono)] = c
        self.terms = clean
        self._lead = None
        self._hash = None

    # -- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.zero_monomial(), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; the zero polynomial has degree -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, var_index: int) -> int:
        if not self.terms:
            return -1
        return max(m[var_index] for m in self.terms)

    def variables_present(self) -> tuple:
        present = [False] * self.ring.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    present[i] = True
        return tuple(i for i, p in enumerate(present) if p)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading_monomial(self) -> Monomial:
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            self._lead = max(self.terms, key=self.ring.sort_key)
        return self._lead

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def sorted_terms(self) -> list:
        """Terms as (monomial, coefficient), descending in the ring order."""
        return [
            (m, self.terms[m])
            for m in sorted(self.terms, key=self.ring.sort_key, reverse=True)
        ]

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        return self.ring.constant(_as_fraction(other))

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m, 0) + c
            if acc:
                terms[m] = acc
            else:
                terms.pop(m, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                acc = terms.get(m, 0) + c1 * c2
                if acc:
                    terms[m] = acc
                else:
                    terms.pop(m, None)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, value) -> "Polynomial":
        c = _as_fraction(value)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: k * c for m, k in self.terms.items()})

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient())

    # -- calculus and evaluation ------------------------------------------

    def partial(self, var_index: int) -> "Polynomial":
        """Formal partial derivative with respect to the given variable."""
        if not 0 <= var_index < self.ring.nvars:
            raise ValueError(f"variable index {var_index} out of range")
        terms = {}
        for m, c in self.terms.items():
            e = m[var_index]
            if e:
                lowered = m[:var_index] + (e - 1,) + m[var_index + 1 :]
                terms[lowered] = terms.get(lowered, 0) + c * e
        return Polynomial(self.ring, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.ring.nvars:
            raise ValueError("point arity does not match ring arity")
        values = [_as_fraction(v) for v in point]
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term *= v**e
            total += term
        return total

    def substitute(self, assignment: dict) -> "Polynomial":
        """Substitute polynomials for variables; indices not mentioned stay."""
        result = self.ring.zero()
        for m, c in self.terms.items():
            term = self.ring.constant(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                if i in assignment:
                    term = term * (self._coerce(assignment[i]) ** e)
                else:
                    term = term * self.ring.monomial(
                        tuple(e if j == i else 0 for j in range(self.ring.nvars))
                    )
            result = result + term
        return result

    # -- views used by gcd/factorization ----------------------------------

    def coefficients_in(self, var_index: int) -> list:
        """Dense list of coefficient polynomials by power of one variable."""
        d = self.degree_in(var_index)
        if d < 0:
            return []
        buckets: list = [dict() for _ in range(d + 1)]
        for m, c in self.terms.items():
            e = m[var_index]
            rest = m[:var_index] + (0,) + m[var_index + 1 :]
            buckets[e][rest] = c
        return [Polynomial(self.ring, b) for b in buckets]

    @staticmethod
    def from_coefficients_in(ring: Ring, var_index: int, coeffs: Iterable) -> "Polynomial":
        terms: dict = {}
        for e, poly in enumerate(coeffs):
            for m, c in poly.terms.items():
                lifted = m[:var_index] + (m[var_index] + e,) + m[var_index + 1 :]
                terms[lifted] = terms.get(lifted, 0) + c
        return Polynomial(ring, terms)

    def monomial_content(self) -> Monomial:
        """Componentwise minimum exponent over all terms (zero poly -> 0)."""
        if not self.terms:
            return self.ring.zero_monomial()
        mins = None
        for m in self.terms:
            mins = m if mins is None else tuple(min(a, b) for a, b in zip(mins, m))
        return mins

    def divide_by_monomial(self, mono: Monomial) -> "Polynomial":
        return Polynomial(self.ring, {mono_div(m, mono): c for m, c in self.terms.items()})

    def rational_primitive(self) -> tuple:
        """Write self = c * p with p integer-primitive, positive leading coeff.

        Returns (c, p); for the zero polynomial returns (1, 0).
        """
        if self.is_zero():
            return Fraction(1), self
        from math import gcd, lcm

        den = lcm(*(c.denominator for c in self.terms.values()))
        num = gcd(*(abs(c.numerator) for c in self.terms.values()))
        scale = Fraction(num, den)
        if self.leading_coefficient() < 0:
            scale = -scale
        return scale, self.scale(1 / scale)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- printing ----------------------------------------------------------

    def _monomial_str(self, mono: Monomial) -> str:
        parts = []
        for name, e in zip(self.ring.variables, mono):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(m)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def polynomial_from_terms(ring: Ring, items: Iterable) -> Polynomial:
    """Build a polynomial from (monomial, coefficient) pairs."""
    terms: dict = {}
    for mono, coeff in items:
        terms[tuple(mono)] = terms.get(tuple(mono), 0) + _as_fraction(coeff)
    return Polynomial(ring, terms)


def coerce_point(ring: Ring, values: Sequence) -> tuple:
    """A closed rational point, one exact coordinate per ring variable."""
    if len(values) != ring.nvars:
        raise ValueError("point arity does not match ring arity")
    return tuple(_as_fraction(v) for v in values)
