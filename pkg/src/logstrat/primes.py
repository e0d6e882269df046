"""Minimal prime decomposition and primality certification at desk scale.

Decomposition is recursive factor splitting: whenever a Groebner basis
element factors, the ideal splits into a branch containing one factor and
a branch saturated by it; zero-dimensional ideals additionally split along
factorable eliminants.  Terminal branches are certified prime by one of
three sound certificates or honestly returned with status "unknown";
consumers must never treat an unknown candidate as prime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .budget import tick
from .factor import factorize
from .groebner import Ideal
from .poly import Polynomial, Ring, mono_divides

PRIME_CERTIFIED = "prime_certified"
PRIME_ASSUMED = "prime_assumed"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class PrimeCandidate:
    ideal: Ideal
    status: str

    @property
    def certified(self) -> bool:
        return self.status == PRIME_CERTIFIED


def maximal_ideal_of_point(ring: Ring, point) -> Ideal:
    """(x_1 - p_1, ..., x_n - p_n): the maximal ideal of a rational point."""
    if len(point) != ring.nvars:
        raise ValueError("point arity does not match ring arity")
    gens = [ring.var(i) - ring.constant(p) for i, p in enumerate(point)]
    return Ideal(ring, gens)


# ---------------------------------------------------------------------------
# zero-dimensional helpers


def standard_monomials(J: Ideal):
    """Monomial basis of A/J for a zero-dimensional ideal, else None."""
    gb = J.groebner_basis()
    ring = J.ring
    lms = [g.leading_monomial() for g in gb]
    bounds = []
    for i in range(ring.nvars):
        pure = [m[i] for m in lms if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None  # no pure power of x_i leads: not zero-dimensional
        bounds.append(min(pure))
    monos = [()]
    for b in bounds:
        monos = [m + (e,) for m in monos for e in range(b)]
    basis = [m for m in monos if not any(mono_divides(lm, m) for lm in lms)]
    basis.sort(key=ring.sort_key)
    return basis


def _coords(f: Polynomial, basis_index: dict):
    vec = [Fraction(0)] * len(basis_index)
    for m, c in f.terms.items():
        vec[basis_index[m]] = c
    return vec


def minimal_polynomial(J: Ideal, h: Polynomial, basis) -> list:
    """Coefficients (low degree first, monic) of the minimal polynomial of
    h acting on A/J; J must be zero-dimensional with the given monomial
    basis."""
    index = {m: k for k, m in enumerate(basis)}
    rows = []
    current = J.ring.one()
    while True:
        tick()
        vec = _coords(J.normal_form(current), index)
        matrix = [[rows[k][p] for k in range(len(rows))] for p in range(len(basis))]
        combo = linalg.solve_linear(matrix, vec) if rows else None
        if rows and combo is not None:
            return [-c for c in combo] + [Fraction(1)]
        rows.append(vec)
        current = current * h


def _univariate_from_coeffs(coeffs) -> Polynomial:
    ring = Ring(("t",))
    return Polynomial(ring, {(k,): c for k, c in enumerate(coeffs)})


def _substitute_univariate(coeffs, h: Polynomial) -> Polynomial:
    total = h.ring.zero()
    power = h.ring.one()
    for c in coeffs:
        total = total + power.scale(c)
        power = power * h
    return total


def _eliminant_candidates(ring: Ring):
    for i in range(ring.nvars):
        yield ring.var(i)
    for i in range(ring.nvars):
        for j in range(i + 1, ring.nvars):
            yield ring.var(i) - ring.var(j)
    for i in range(ring.nvars):
        for j in range(i + 1, ring.nvars):
            yield ring.var(i) + ring.var(j)


def _zero_dim_prime_status(J: Ideal, basis) -> str:
    """Certify a zero-dimensional ideal prime via one eliminant that is
    irreducible of degree equal to the vector-space dimension of A/J
    (then A/J is the field Q[t]/(eliminant))."""
    vecdim = len(basis)
    for h in _eliminant_candidates(J.ring):
        coeffs = minimal_polynomial(J, h, basis)
        if len(coeffs) - 1 != vecdim:
            continue
        fac = factorize(_univariate_from_coeffs(coeffs))
        if (
            len(fac.factors) == 1
            and fac.factors[0].multiplicity == 1
            and fac.factors[0].certified
        ):
            return PRIME_CERTIFIED
    return UNKNOWN


# ---------------------------------------------------------------------------
# primality certificates


def is_prime(J: Ideal) -> str:
    """Certification status of J; "unknown" is a value, not an error."""
    if J.is_unit():
        raise ValueError("the unit ideal is not prime")
    gb = J.groebner_basis()
    if not gb:
        return PRIME_CERTIFIED  # the zero ideal of a polynomial ring
    linear = [g for g in gb if g.total_degree() == 1]
    rest = [g for g in gb if g.total_degree() != 1]
    # In a reduced basis the leading variable of each linear element occurs
    # nowhere else, so A/J is a polynomial ring in the remaining variables
    # modulo the remaining elements.
    if not rest:
        return PRIME_CERTIFIED
    if len(rest) == 1:
        fac = factorize(rest[0])
        if (
            len(fac.factors) == 1
            and fac.factors[0].multiplicity == 1
            and fac.factors[0].certified
        ):
            return PRIME_CERTIFIED
        return UNKNOWN
    basis = standard_monomials(J)
    if basis is not None:
        return _zero_dim_prime_status(J, basis)
    return UNKNOWN


# ---------------------------------------------------------------------------
# decomposition


def _find_split(J: Ideal):
    """A list of polynomials whose product (up to multiplicity) lies in J
    and which can separate components, or None when nothing factors."""
    for g in J.groebner_basis():
        fac = factorize(g)
        nontrivial = len(fac.factors) > 1 or any(
            f.multiplicity > 1 for f in fac.factors
        )
        if nontrivial:
            parts = [f.poly for f in fac.factors if not J.contains_poly(f.poly)]
            if parts:
                return parts
    basis = standard_monomials(J)
    if basis is not None:
        for h in _eliminant_candidates(J.ring):
            coeffs = minimal_polynomial(J, h, basis)
            fac = factorize(_univariate_from_coeffs(coeffs))
            nontrivial = len(fac.factors) > 1 or any(
                f.multiplicity > 1 for f in fac.factors
            )
            if not nontrivial:
                continue
            parts = []
            for f in fac.factors:
                coeff_list = [Fraction(0)] * (f.poly.total_degree() + 1)
                for (k,), c in f.poly.terms.items():
                    coeff_list[k] = c
                parts.append(_substitute_univariate(coeff_list, h))
            parts = [p for p in parts if not J.contains_poly(p)]
            if parts:
                return parts
    return None


def _decompose(J: Ideal) -> list:
    if J.is_unit():
        return []
    tick()
    parts = _find_split(J)
    if parts is None:
        return [PrimeCandidate(J, is_prime(J))]
    if len(parts) == 1:
        return _decompose(J + [parts[0]])
    for p in parts:
        saturated = J.saturation(p)
        if not saturated.equals(J):
            return _decompose(J + [p]) + _decompose(saturated)
    raise AssertionError("a factored element must separate some component")


def minimal_primes(J: Ideal) -> list:
    """The minimal primes over J, pairwise incomparable, each with a
    certification status.  Branches that resist certification are
    returned with status "unknown" rather than being silently trusted."""
    if J.is_unit():
        raise ValueError("the unit ideal has no minimal primes")
    candidates = _decompose(J)
    merged: dict = {}
    for cand in candidates:
        prev = merged.get(cand.ideal)
        if prev is None or (prev.status != PRIME_CERTIFIED and cand.certified):
            merged[cand.ideal] = cand
    unique = list(merged.values())
    kept = []
    for cand in unique:
        if cand.certified and any(
            other is not cand and cand.ideal.strictly_contains(other.ideal)
            for other in unique
        ):
            continue  # certified but not minimal among the candidates
        kept.append(cand)
    kept.sort(key=lambda c: tuple(str(g) for g in c.ideal.groebner_basis()))
    return kept
