"""Ideals with cached reduced Groebner bases.

Buchberger with the normal selection strategy (smallest lcm first) and
both classical pair-elimination criteria.  The reduced basis is unique
for the ring's order, so basis equality is ideal equality and basis
tuples serve as canonical dictionary keys.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .budget import tick
from .modules import FreeModuleElement, syzygies
from .parse import parse_polynomial
from .poly import Polynomial, Ring, mono_div, mono_divides, mono_lcm, mono_mul


def _reduce_full(terms: dict, reducers: list, ring: Ring) -> dict:
    """Full normal form of a term dict against (lm, lc, terms) reducers."""
    work = dict(terms)
    out: dict = {}
    while work:
        tick()
        lm = max(work, key=ring.sort_key)
        coeff = work.pop(lm)
        for rlm, rlc, rterms in reducers:
            if mono_divides(rlm, lm):
                qm = mono_div(lm, rlm)
                qc = coeff / rlc
                for m2, c2 in rterms.items():
                    if m2 == rlm:
                        continue
                    key = mono_mul(qm, m2)
                    acc = work.get(key, 0) - qc * c2
                    if acc:
                        work[key] = acc
                    else:
                        work.pop(key, None)
                break
        else:
            out[lm] = coeff
    return out


def _make_reducers(polys: Sequence[Polynomial]) -> list:
    return [
        (p.leading_monomial(), p.leading_coefficient(), p.terms)
        for p in polys
        if not p.is_zero()
    ]


def normal_form(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    return Polynomial(f.ring, _reduce_full(f.terms, _make_reducers(basis), f.ring))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    lmf, lmg = f.leading_monomial(), g.leading_monomial()
    lcm = mono_lcm(lmf, lmg)
    tf = ring.monomial(mono_div(lcm, lmf), 1 / f.leading_coefficient())
    tg = ring.monomial(mono_div(lcm, lmg), 1 / g.leading_coefficient())
    return f * tf - g * tg


def buchberger(generators: Sequence[Polynomial], ring: Ring) -> tuple:
    """The unique reduced Groebner basis of the given generators."""
    basis = [g.monic() for g in generators if not g.is_zero()]
    pairs = {(j, i) for i in range(len(basis)) for j in range(i)}
    processed = set()

    def pair_key(pair):
        i, j = pair
        return ring.sort_key(
            mono_lcm(basis[i].leading_monomial(), basis[j].leading_monomial())
        )

    while pairs:
        tick()
        pair = min(pairs, key=pair_key)
        pairs.discard(pair)
        processed.add(pair)
        i, j = pair
        lmi, lmj = basis[i].leading_monomial(), basis[j].leading_monomial()
        lcm = mono_lcm(lmi, lmj)
        if lcm == mono_mul(lmi, lmj):
            continue  # coprime leading monomials
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if not mono_divides(basis[k].leading_monomial(), lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in processed and b in processed:
                skip = True  # chain criterion
                break
        if skip:
            continue
        s = s_polynomial(basis[i], basis[j])
        r = normal_form(s, basis)
        if r.is_zero():
            continue
        r = r.monic()
        new_index = len(basis)
        basis.append(r)
        for k in range(new_index):
            pairs.add((k, new_index))

    # inter-reduce to the reduced basis
    order = sorted(range(len(basis)), key=lambda k: ring.sort_key(basis[k].leading_monomial()))
    kept: list = []
    for k in order:
        lm = basis[k].leading_monomial()
        if not any(mono_divides(basis[kk].leading_monomial(), lm) for kk in kept):
            kept.append(k)
    minimal = [basis[k] for k in kept]
    reduced = []
    for idx, g in enumerate(minimal):
        others = [h for t, h in enumerate(minimal) if t != idx]
        r = normal_form(g, others)
        if not r.is_zero():
            reduced.append(r.monic())
    reduced.sort(key=lambda p: ring.sort_key(p.leading_monomial()))
    return tuple(reduced)


class Ideal:
    """A finitely generated ideal of the polynomial ring."""

    __slots__ = ("ring", "generators", "_gb")

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if not isinstance(g, Polynomial):
                g = ring.constant(g)
            if g.ring != ring:
                raise ValueError("generators from different rings")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self._gb = None

    @classmethod
    def parse(cls, ring: Ring, *expressions: str) -> "Ideal":
        return cls(ring, [parse_polynomial(e, ring) for e in expressions])

    def groebner_basis(self) -> tuple:
        if self._gb is None:
            self._gb = buchberger(self.generators, self.ring)
        return self._gb

    # -- membership and comparisons ---------------------------------------

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        return normal_form(f, self.groebner_basis())

    def contains_poly(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        if other.ring != self.ring:
            raise ValueError("ideals from different rings")
        return all(self.contains_poly(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.groebner_basis() == other.groebner_basis()

    def strictly_contains(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and not self.equals(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis() == other.groebner_basis()

    def __hash__(self) -> int:
        return hash((self.ring, self.groebner_basis()))

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero_ideal(self) -> bool:
        return not self.groebner_basis()

    def is_proper(self) -> bool:
        return not self.is_unit()

    # -- constructions ------------------------------------------------------

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            extra = other.generators
        else:
            extra = tuple(other)
        return Ideal(self.ring, self.generators + tuple(extra))

    def quotient(self, f: Polynomial) -> "Ideal":
        """The ideal (self : f) of elements whose product with f lies here."""
        if f.is_zero():
            raise ValueError("quotient by the zero polynomial")
        if f.is_constant():
            return Ideal(self.ring, self.generators)
        if not self.generators:
            return Ideal(self.ring, ())
        columns = list(self.generators) + [f]
        relations = syzygies(columns)
        gens = [rel.components[-1] for rel in relations.generators]
        return Ideal(self.ring, [g for g in gens if not g.is_zero()])

    def saturation(self, f: Polynomial) -> "Ideal":
        """Stable value (self : f^infinity) of iterated quotients."""
        if f.is_zero():
            raise ValueError("saturation by the zero polynomial")
        current = self
        while True:
            tick()
            nxt = current.quotient(f)
            if nxt.equals(current):
                return current
            current = nxt

    # -- numeric invariants ---------------------------------------------------

    def dimension(self) -> int:
        """Krull dimension of the quotient ring, -1 for the unit ideal.

        Computed combinatorially from the leading monomials: the largest
        set of variables containing the support of no leading monomial.
        """
        if self.is_unit():
            return -1
        supports = [
            frozenset(i for i, e in enumerate(p.leading_monomial()) if e)
            for p in self.groebner_basis()
        ]
        n = self.ring.nvars
        best = -1
        for mask in range(1 << n):
            subset = {i for i in range(n) if mask >> i & 1}
            if any(sup <= subset for sup in supports):
                continue
            best = max(best, len(subset))
        return best

    def vanishes_at(self, point) -> bool:
        return all(g.evaluate(point) == 0 for g in self.generators) and all(
            g.evaluate(point) == 0 for g in self.groebner_basis()
        )

    def __str__(self) -> str:
        gb = self.groebner_basis()
        if not gb:
            return "(0)"
        return "(" + ", ".join(str(g) for g in gb) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"


def ideal_quotient(J: Ideal, f: Polynomial) -> Ideal:
    return J.quotient(f)


def saturation(J: Ideal, f: Polynomial) -> Ideal:
    return J.saturation(f)


def ideal_contains(J1: Ideal, J2: Ideal) -> bool:
    return J1.contains_ideal(J2)


def ideal_equals(J1: Ideal, J2: Ideal) -> bool:
    return J1.equals(J2)


def dimension(J: Ideal) -> int:
    return J.dimension()


def module_membership(vec: FreeModuleElement, module) -> bool:
    return module.contains(vec)
