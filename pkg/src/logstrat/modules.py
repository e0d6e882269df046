"""Submodules of free modules A^r: module Groebner bases and syzygies.

The term order on A^r is position-over-term: a term in component i beats
every term in component j > i, and ties within a component are broken by
the ring's monomial order.  This makes the leading term of a vector live
in its first nonzero component, which is what the syzygy elimination
below relies on.
"""

from __future__ import annotations

from typing import Sequence

from .budget import tick
from .poly import Polynomial, Ring, mono_div, mono_divides, mono_lcm, mono_mul


class FreeModuleElement:
    """A vector of polynomials, one component per free-module coordinate."""

    __slots__ = ("ring", "components", "_hash")

    def __init__(self, ring: Ring, components: Sequence[Polynomial]):
        comps = []
        for c in components:
            if not isinstance(c, Polynomial):
                c = ring.constant(c)
            if c.ring != ring:
                raise ValueError("components from different rings")
            comps.append(c)
        self.ring = ring
        self.components = tuple(comps)
        self._hash = None

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def lead(self):
        """(position, monomial) of the leading term, or None for zero."""
        for i, c in enumerate(self.components):
            if not c.is_zero():
                return (i, c.leading_monomial())
        return None

    def lead_coefficient(self):
        i, m = self.lead()
        return self.components[i].terms[m]

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        return FreeModuleElement(
            self.ring, [a + b for a, b in zip(self.components, other.components)]
        )

    def __sub__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        return FreeModuleElement(
            self.ring, [a - b for a, b in zip(self.components, other.components)]
        )

    def __neg__(self) -> "FreeModuleElement":
        return FreeModuleElement(self.ring, [-a for a in self.components])

    def scale(self, poly) -> "FreeModuleElement":
        return FreeModuleElement(self.ring, [a * poly for a in self.components])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreeModuleElement)
            and self.ring == other.ring
            and self.components == other.components
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.components))
        return self._hash

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"FreeModuleElement{self}"


# -- raw vector engine (lists of term dicts) --------------------------------


def _to_dicts(vec: FreeModuleElement) -> list:
    return [dict(c.terms) for c in vec.components]


def _from_dicts(ring: Ring, dicts: list) -> FreeModuleElement:
    return FreeModuleElement(ring, [Polynomial(ring, d) for d in dicts])


def _dicts_lead(dicts: list, ring: Ring):
    for i, d in enumerate(dicts):
        if d:
            return i, max(d, key=ring.sort_key)
    return None


def _reduce_vector(dicts: list, reducers: list, ring: Ring) -> list:
    """Full normal form of a vector against reducers.

    reducers: list of (position, lead monomial, lead coeff, component dicts).
    """
    work = [dict(d) for d in dicts]
    out: list = [dict() for _ in dicts]
    while True:
        lead = _dicts_lead(work, ring)
        if lead is None:
            break
        i, m = lead
        tick()
        coeff = work[i].pop(m)
        for rpos, rlm, rlc, rcomps in reducers:
            if rpos == i and mono_divides(rlm, m):
                qm = mono_div(m, rlm)
                qc = coeff / rlc
                for j, comp in enumerate(rcomps):
                    for m2, c2 in comp.items():
                        if j == rpos and m2 == rlm:
                            continue
                        key = mono_mul(qm, m2)
                        acc = work[j].get(key, 0) - qc * c2
                        if acc:
                            work[j][key] = acc
                        else:
                            work[j].pop(key, None)
                break
        else:
            out[i][m] = coeff
    return out


def _make_reducers(vectors: list, ring: Ring) -> list:
    reducers = []
    for vec in vectors:
        lead = _dicts_lead(vec, ring)
        if lead is None:
            continue
        i, m = lead
        reducers.append((i, m, vec[i][m], vec))
    return reducers


def _vector_spair(u: list, v: list, ring: Ring) -> list:
    (iu, mu) = _dicts_lead(u, ring)
    (iv, mv) = _dicts_lead(v, ring)
    assert iu == iv
    lcm = mono_lcm(mu, mv)
    cu = u[iu][mu]
    cv = v[iv][mv]
    qu, qv = mono_div(lcm, mu), mono_div(lcm, mv)
    out = [dict() for _ in u]
    for j, comp in enumerate(u):
        for m, c in comp.items():
            key = mono_mul(qu, m)
            out[j][key] = out[j].get(key, 0) + c / cu
    for j, comp in enumerate(v):
        for m, c in comp.items():
            key = mono_mul(qv, m)
            acc = out[j].get(key, 0) - c / cv
            if acc:
                out[j][key] = acc
            else:
                out[j].pop(key, None)
    return [{m: c for m, c in comp.items() if c} for comp in out]


def _vector_monic(dicts: list, ring: Ring) -> list:
    lead = _dicts_lead(dicts, ring)
    if lead is None:
        return dicts
    i, m = lead
    lc = dicts[i][m]
    return [{mm: c / lc for mm, c in comp.items()} for comp in dicts]


def _module_buchberger(generators: list, ring: Ring) -> list:
    """Reduced module Groebner basis; input and output are dict-vectors."""
    basis = [
        _vector_monic(g, ring) for g in generators if _dicts_lead(g, ring) is not None
    ]
    pairs = set()
    for i in range(len(basis)):
        for j in range(i):
            if _dicts_lead(basis[i], ring)[0] == _dicts_lead(basis[j], ring)[0]:
                pairs.add((j, i))
    processed = set()

    def pair_key(p):
        i, j = p
        pi, mi = _dicts_lead(basis[i], ring)
        _, mj = _dicts_lead(basis[j], ring)
        return (-pi, ring.sort_key(mono_lcm(mi, mj)))

    while pairs:
        tick()
        pair = min(pairs, key=pair_key)
        pairs.discard(pair)
        processed.add(pair)
        i, j = pair
        pi, mi = _dicts_lead(basis[i], ring)
        _, mj = _dicts_lead(basis[j], ring)
        lcm = mono_lcm(mi, mj)
        # chain criterion
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            pk, mk = _dicts_lead(basis[k], ring)
            if pk != pi or not mono_divides(mk, lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a in processed and b in processed:
                skip = True
                break
        if skip:
            continue
        s = _vector_spair(basis[i], basis[j], ring)
        reduced = _reduce_vector(s, _make_reducers(basis, ring), ring)
        if _dicts_lead(reduced, ring) is None:
            continue
        reduced = _vector_monic(reduced, ring)
        new_index = len(basis)
        new_pos = _dicts_lead(reduced, ring)[0]
        for k in range(new_index):
            if _dicts_lead(basis[k], ring)[0] == new_pos:
                pairs.add((k, new_index))
        basis.append(reduced)

    # minimalize: drop vectors whose lead is divisible by another kept lead
    order = sorted(
        range(len(basis)),
        key=lambda k: (
            _dicts_lead(basis[k], ring)[0],
            ring.sort_key(_dicts_lead(basis[k], ring)[1]),
        ),
    )
    kept: list = []
    for k in order:
        pk, mk = _dicts_lead(basis[k], ring)
        dominated = False
        for kk in kept:
            pq, mq = _dicts_lead(basis[kk], ring)
            if pq == pk and mono_divides(mq, mk):
                dominated = True
                break
        if not dominated:
            kept.append(k)
    minimal = [basis[k] for k in kept]
    # tail-reduce each element against the others
    reduced_basis = []
    for idx, vec in enumerate(minimal):
        others = [v for t, v in enumerate(minimal) if t != idx]
        red = _reduce_vector(vec, _make_reducers(others, ring), ring)
        if _dicts_lead(red, ring) is not None:
            reduced_basis.append(_vector_monic(red, ring))
    reduced_basis.sort(
        key=lambda v: (
            _dicts_lead(v, ring)[0],
            ring.sort_key(_dicts_lead(v, ring)[1]),
        )
    )
    return reduced_basis


class Submodule:
    """A finitely generated submodule of A^rank with a cached Groebner basis."""

    __slots__ = ("ring", "rank", "generators", "_gb")

    def __init__(self, ring: Ring, rank: int, generators: Sequence[FreeModuleElement]):
        gens = []
        for g in generators:
            if g.rank != rank:
                raise ValueError("generator rank does not match ambient rank")
            if not g.is_zero():
                gens.append(g)
        self.ring = ring
        self.rank = rank
        self.generators = tuple(gens)
        self._gb = None

    def groebner_basis(self) -> tuple:
        if self._gb is None:
            raw = [_to_dicts(g) for g in self.generators]
            gb = _module_buchberger(raw, self.ring)
            self._gb = tuple(_from_dicts(self.ring, v) for v in gb)
        return self._gb

    def normal_form(self, vec: FreeModuleElement) -> FreeModuleElement:
        if vec.rank != self.rank:
            raise ValueError("vector rank does not match ambient rank")
        gb = [_to_dicts(g) for g in self.groebner_basis()]
        red = _reduce_vector(_to_dicts(vec), _make_reducers(gb, self.ring), self.ring)
        return _from_dicts(self.ring, red)

    def contains(self, vec: FreeModuleElement) -> bool:
        return self.normal_form(vec).is_zero()

    def contains_module(self, other: "Submodule") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Submodule") -> bool:
        return self.groebner_basis() == other.groebner_basis()

    def is_zero_module(self) -> bool:
        return not self.generators

    def __repr__(self) -> str:
        return f"Submodule(rank={self.rank}, {len(self.generators)} generators)"


def syzygies(columns: Sequence, ring: Ring | None = None) -> Submodule:
    """Generators of all relations sum(c_j * column_j) = 0.

    Columns may be polynomials (treated as rank-1 vectors) or free-module
    elements of a common rank.  Computed by a module Groebner basis on the
    columns augmented with unit tags, keeping the basis vectors whose
    original block vanishes.
    """
    cols = list(columns)
    if not cols:
        raise ValueError("syzygies of an empty family")
    if isinstance(cols[0], Polynomial):
        ring = cols[0].ring
        cols = [FreeModuleElement(ring, [p]) for p in cols]
    else:
        ring = cols[0].ring
    r = cols[0].rank
    s = len(cols)
    embedded = []
    for j, col in enumerate(cols):
        if col.rank != r:
            raise ValueError("columns of mixed rank")
        tags = [ring.zero()] * s
        tags[j] = ring.one()
        embedded.append(FreeModuleElement(ring, list(col.components) + tags))
    big = Submodule(ring, r + s, embedded)
    result = []
    for vec in big.groebner_basis():
        if all(vec.components[i].is_zero() for i in range(r)):
            result.append(FreeModuleElement(ring, vec.components[r:]))
    return Submodule(ring, s, result)
