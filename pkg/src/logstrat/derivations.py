"""Polynomial vector fields: application, Lie brackets, tangent modules.

A derivation is stored by its coefficient vector (coefficient of d/dx_j in
position j).  A DerivationModule is a finitely generated module of such
fields; bracket_closed is only set after closure has been computed or
verified, and the tangent module of an ideal is bracket closed by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .budget import tick
from .factor import exact_divide, is_squarefree
from .groebner import Ideal
from .modules import FreeModuleElement, Submodule, syzygies
from .parse import parse_derivation_coefficients
from .poly import Polynomial, Ring


class Derivation:
    """A k-linear derivation of the polynomial ring."""

    __slots__ = ("ring", "coefficients", "_hash")

    def __init__(self, ring: Ring, coefficients: Sequence):
        coeffs = []
        for c in coefficients:
            if not isinstance(c, Polynomial):
                c = ring.constant(c)
            if c.ring != ring:
                raise ValueError("coefficients from different rings")
            coeffs.append(c)
        if len(coeffs) != ring.nvars:
            raise ValueError("coefficient count does not match ring arity")
        self.ring = ring
        self.coefficients = tuple(coeffs)
        self._hash = None

    @classmethod
    def parse(cls, text: str, ring: Ring) -> "Derivation":
        return cls(ring, parse_derivation_coefficients(text, ring))

    @classmethod
    def basis(cls, ring: Ring, var_index: int) -> "Derivation":
        coeffs = [ring.zero()] * ring.nvars
        coeffs[var_index] = ring.one()
        return cls(ring, coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def apply(self, f: Polynomial) -> Polynomial:
        """delta(f) = sum_j coeff_j * df/dx_j; k-linear and Leibniz."""
        if f.ring != self.ring:
            raise ValueError("polynomial from a different ring")
        total = self.ring.zero()
        for j, coeff in enumerate(self.coefficients):
            if not coeff.is_zero():
                total = total + coeff * f.partial(j)
        return total

    def bracket(self, other: "Derivation") -> "Derivation":
        """Lie bracket [self, other]; antisymmetric, satisfies Jacobi."""
        if other.ring != self.ring:
            raise ValueError("derivations from different rings")
        coeffs = [
            self.apply(other.coefficients[j]) - other.apply(self.coefficients[j])
            for j in range(self.ring.nvars)
        ]
        return Derivation(self.ring, coeffs)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(
            self.ring, [a + b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(
            self.ring, [a - b for a, b in zip(self.coefficients, other.coefficients)]
        )

    def __neg__(self) -> "Derivation":
        return Derivation(self.ring, [-a for a in self.coefficients])

    def scale(self, poly) -> "Derivation":
        return Derivation(self.ring, [a * poly for a in self.coefficients])

    def as_vector(self) -> FreeModuleElement:
        return FreeModuleElement(self.ring, self.coefficients)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Derivation)
            and self.ring == other.ring
            and self.coefficients == other.coefficients
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.coefficients))
        return self._hash

    def __str__(self) -> str:
        parts = []
        for name, coeff in zip(self.ring.variables, self.coefficients):
            if coeff.is_zero():
                continue
            if coeff == self.ring.one():
                parts.append(f"d{name}")
            elif len(coeff.terms) == 1:
                parts.append(f"{coeff}*d{name}")
            else:
                parts.append(f"({coeff})*d{name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"Derivation({self})"


class DerivationModule:
    """A finitely generated module of derivations."""

    __slots__ = ("ring", "generators", "bracket_closed", "_submodule")

    def __init__(
        self,
        generators: Sequence[Derivation],
        bracket_closed: bool = False,
        ring: Ring | None = None,
    ):
        gens = [g for g in generators if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty module")
            ring = gens[0].ring
        if any(g.ring != ring for g in gens):
            raise ValueError("generators from different rings")
        self.ring = ring
        self.generators = tuple(gens)
        self.bracket_closed = bracket_closed
        self._submodule = None

    def submodule(self) -> Submodule:
        if self._submodule is None:
            self._submodule = Submodule(
                self.ring, self.ring.nvars, [g.as_vector() for g in self.generators]
            )
        return self._submodule

    def contains(self, delta: Derivation) -> bool:
        return self.submodule().contains(delta.as_vector())

    def equals(self, other: "DerivationModule") -> bool:
        return self.submodule().equals(other.submodule())

    def coefficient_matrix(self) -> list:
        """Rows are generator coefficient vectors: entry [i][j] = delta_i(x_j)."""
        return [list(g.coefficients) for g in self.generators]

    def __repr__(self) -> str:
        closed = "closed" if self.bracket_closed else "unverified"
        return f"DerivationModule({len(self.generators)} generators, {closed})"


def full_tangent_module(ring: Ring) -> DerivationModule:
    gens = [Derivation.basis(ring, i) for i in range(ring.nvars)]
    return DerivationModule(gens, bracket_closed=True, ring=ring)


def verify_bracket_closed(module: DerivationModule) -> bool:
    """Check that brackets of all generator pairs stay in the module."""
    sub = module.submodule()
    gens = module.generators
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            tick()
            if not sub.contains(gens[i].bracket(gens[j]).as_vector()):
                return False
    return True


def close_under_bracket(module: DerivationModule) -> DerivationModule:
    """Smallest bracket-closed module containing the input.

    Adjoining generator brackets suffices: the bracket of two module
    elements is a combination of generators, generator brackets and
    generator derivatives of coefficients, all of which stay inside.
    Terminates by the ascending chain condition on submodules of A^n.
    """
    gens = list(module.generators)
    if not gens:
        return DerivationModule(gens, bracket_closed=True, ring=module.ring)
    while True:
        tick()
        sub = Submodule(module.ring, module.ring.nvars, [g.as_vector() for g in gens])
        new = []
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                b = gens[i].bracket(gens[j])
                if b.is_zero():
                    continue
                vec = b.as_vector()
                if not sub.contains(vec):
                    if all(
                        not (b - prev).is_zero() for prev in new
                    ):
                        new.append(b)
        if not new:
            break
        gens.extend(new)
    return DerivationModule(gens, bracket_closed=True, ring=module.ring)


def logarithmic_derivations(ideal: Ideal) -> DerivationModule:
    """The module of all derivations mapping the ideal into itself.

    Solved as a syzygy problem: a coefficient vector (a_1, .., a_n)
    belongs iff for every ideal generator g_j there are cofactors b with
    sum_i a_i dg_j/dx_i + sum_k b_k g_k = 0; the tangent module is the
    projection of that relation module onto the a-block.  Bracket closed
    by construction.
    """
    ring = ideal.ring
    gens = ideal.groebner_basis()
    if not gens or ideal.is_unit():
        return full_tangent_module(ring)
    s = len(gens)
    n = ring.nvars
    columns = []
    for i in range(n):
        columns.append(
            FreeModuleElement(ring, [g.partial(i) for g in gens])
        )
    for j in range(s):
        for k in range(s):
            comps = [ring.zero()] * s
            comps[j] = gens[k]
            columns.append(FreeModuleElement(ring, comps))
    relations = syzygies(columns)
    projected = [
        FreeModuleElement(ring, rel.components[:n]) for rel in relations.generators
    ]
    projected = [v for v in projected if not v.is_zero()]
    # canonical generating set: the reduced module basis of the projections
    canonical = Submodule(ring, n, projected).groebner_basis()
    derivs = [Derivation(ring, vec.components) for vec in canonical]
    return DerivationModule(derivs, bracket_closed=True, ring=ring)


def derivation_matrix_determinant(derivs: Sequence[Derivation]) -> Polynomial:
    ring = derivs[0].ring
    matrix = [list(d.coefficients) for d in derivs]

    def det(rows, cols):
        if len(cols) == 1:
            return rows[0][cols[0]]
        total = ring.zero()
        for idx, c in enumerate(cols):
            entry = rows[0][c]
            if entry.is_zero():
                continue
            minor = det(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = entry * minor
            total = total + (term if idx % 2 == 0 else -term)
        return total

    return det(matrix, list(range(ring.nvars)))


@dataclass(frozen=True)
class FreenessCheck:
    verdict: str  # "free_with_basis" | "inconclusive"
    determinant: Polynomial
    constant: Fraction | None  # determinant = constant * f when free


def saito_free_check(derivs: Sequence[Derivation], f: Polynomial) -> FreenessCheck:
    """Determinant criterion: n fields preserving (f) form a free basis of
    the tangent module of (f) when det[delta_i(x_j)] is a nonzero rational
    multiple of f.  Sufficient, not necessary, for an arbitrary tuple, so
    the negative answer is only "inconclusive".
    """
    derivs = list(derivs)
    ring = f.ring
    if len(derivs) != ring.nvars:
        raise ValueError(
            f"need exactly {ring.nvars} derivations, got {len(derivs)}"
        )
    if f.is_zero():
        raise ValueError("freeness check needs a nonzero polynomial")
    if not is_squarefree(f):
        raise ValueError("freeness check needs a square-free polynomial")
    principal = Ideal(ring, [f])
    for d in derivs:
        if not principal.contains_poly(d.apply(f)):
            raise ValueError(f"derivation {d} does not preserve the ideal of {f}")
    det = derivation_matrix_determinant(derivs)
    if det.is_zero():
        return FreenessCheck("inconclusive", det, None)
    ratio = exact_divide(det, f)
    if ratio is not None and ratio.is_constant() and not ratio.is_zero():
        return FreenessCheck("free_with_basis", det, ratio.constant_value())
    return FreenessCheck("inconclusive", det, None)
