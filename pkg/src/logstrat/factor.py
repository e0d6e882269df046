"""Polynomial gcd, square-free decomposition and desk-scale factorization.

Scope of the factorizer: monomial and rational content, square-free
splitting via gcd with partial derivatives (multivariate gcd by
subresultant polynomial remainder sequences), full univariate rational
factorization (rational roots, then Kronecker interpolation), per-variable
content splittings, binary homogeneous reduction, quadratic splitting by a
discriminant square test, and affine-linear factor extraction driven by
the rational root theorem over the coefficient ring.  Square-free factors
that fall outside this scope are returned with certified=False instead of
being guessed at.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .budget import tick
from .poly import Polynomial, Ring

_DIVISOR_LIMIT = 10**9
_KRONECKER_MAX_DEGREE = 8
_KRONECKER_COMBO_CAP = 200_000


@dataclass(frozen=True)
class Factor:
    poly: Polynomial
    multiplicity: int
    certified: bool  # True when the factor is certified irreducible over Q


@dataclass(frozen=True)
class Factorization:
    constant: Fraction
    factors: tuple

    @property
    def certified(self) -> bool:
        return all(f.certified for f in self.factors)

    def pairs(self) -> list:
        return [(f.poly, f.multiplicity) for f in self.factors]

    def expand(self) -> Polynomial:
        result = None
        for f in self.factors:
            piece = f.poly ** f.multiplicity
            result = piece if result is None else result * piece
        if result is None:
            raise ValueError("empty factorization has no ring to expand in")
        return result.scale(self.constant)


# ---------------------------------------------------------------------------
# exact division and gcd


def exact_divide(f: Polynomial, g: Polynomial):
    """Return f / g when g divides f exactly, else None."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    ring = f.ring
    if f.is_zero():
        return ring.zero()
    g_lm = g.leading_monomial()
    g_lc = g.leading_coefficient()
    work = dict(f.terms)
    quot: dict = {}
    while work:
        tick()
        lm = max(work, key=ring.sort_key)
        if not all(a >= b for a, b in zip(lm, g_lm)):
            return None
        qm = tuple(a - b for a, b in zip(lm, g_lm))
        qc = work[lm] / g_lc
        quot[qm] = qc
        for m, c in g.terms.items():
            key = tuple(a + b for a, b in zip(qm, m))
            acc = work.get(key, 0) - qc * c
            if acc:
                work[key] = acc
            else:
                work.pop(key, None)
    return Polynomial(ring, quot)


def _lead_coeff_in(f: Polynomial, v: int) -> Polynomial:
    coeffs = f.coefficients_in(v)
    return coeffs[-1]


def _pseudo_rem(u: Polynomial, w: Polynomial, v: int) -> Polynomial:
    """Pseudo-remainder: lc(w)^(du-dw+1) * u = q*w + r with deg_v r < deg_v w."""
    ring = u.ring
    dw = w.degree_in(v)
    lcw = _lead_coeff_in(w, v)
    xv = ring.var(v)
    r = u
    e = u.degree_in(v) - dw + 1
    while not r.is_zero() and r.degree_in(v) >= dw:
        tick()
        dr = r.degree_in(v)
        lcr = _lead_coeff_in(r, v)
        r = r * lcw - w * lcr * xv ** (dr - dw)
        e -= 1
    if e > 0:
        r = r * lcw**e
    return r


def _content_in(f: Polynomial, v: int) -> Polynomial:
    """Gcd of the coefficient polynomials of f viewed in the variable v."""
    cont = None
    for c in f.coefficients_in(v):
        if c.is_zero():
            continue
        cont = c if cont is None else gcd_polynomials(cont, c)
        if cont.is_constant():
            break
    return cont if cont is not None else f.ring.zero()


def gcd_polynomials(f: Polynomial, g: Polynomial) -> Polynomial:
    """Canonical gcd: integer-primitive with positive leading coefficient."""
    ring = f.ring
    if g.ring != ring:
        raise ValueError("polynomials from different rings")
    if f.is_zero():
        return g.rational_primitive()[1]
    if g.is_zero():
        return f.rational_primitive()[1]
    if f.is_constant() or g.is_constant():
        return ring.one()
    common = sorted(set(f.variables_present()) & set(g.variables_present()))
    if not common:
        return ring.one()
    v = min(common, key=lambda i: (min(f.degree_in(i), g.degree_in(i)), i))

    cf = _content_in(f, v)
    cg = _content_in(g, v)
    pf = exact_divide(f, cf)
    pg = exact_divide(g, cg)
    c = gcd_polynomials(cf, cg)

    if pf.degree_in(v) < pg.degree_in(v):
        pf, pg = pg, pf
    part = _prs_gcd_primitive(pf, pg, v)
    result = c if part is None else c * part
    return result.rational_primitive()[1]


def _prs_gcd_primitive(a: Polynomial, b: Polynomial, v: int):
    """Subresultant PRS gcd of two v-primitive polynomials, deg_v a >= deg_v b.

    Returns the (v-primitive) gcd, or None when the gcd is constant.
    """
    ring = a.ring
    gcoef = ring.one()
    h = ring.one()
    while True:
        tick()
        d = a.degree_in(v) - b.degree_in(v)
        r = _pseudo_rem(a, b, v)
        if r.is_zero():
            pb = exact_divide(b, _content_in(b, v))
            return pb.rational_primitive()[1]
        if r.degree_in(v) == 0:
            return None
        a = b
        divisor = gcoef * h**d
        b = exact_divide(r, divisor)
        assert b is not None, "subresultant division must be exact"
        gcoef = _lead_coeff_in(a, v)
        if d == 1:
            h = gcoef
        elif d > 1:
            h = exact_divide(gcoef**d, h ** (d - 1))
            assert h is not None


def gcd_many(polys) -> Polynomial:
    acc = None
    for p in polys:
        if p.is_zero():
            continue
        acc = p if acc is None else gcd_polynomials(acc, p)
        if acc.is_constant():
            break
    if acc is None:
        raise ValueError("gcd of an empty or all-zero family")
    return acc.rational_primitive()[1]


# ---------------------------------------------------------------------------
# square-free decomposition


def squarefree_decomposition(f: Polynomial) -> tuple:
    """Write f = constant * prod(part_k ^ k) with square-free coprime parts.

    Returns (constant, [(part, multiplicity), ...]); parts are
    integer-primitive with positive leading coefficients.
    """
    if f.is_zero():
        raise ValueError("cannot decompose the zero polynomial")
    const, p = f.rational_primitive()
    if p.is_constant():
        return const * p.constant_value(), []
    reducer = p
    for v in p.variables_present():
        reducer = gcd_polynomials(reducer, p.partial(v))
        if reducer.is_constant():
            break
    if reducer.is_constant():
        return const, [(p, 1)]
    b = exact_divide(p, reducer)
    c = reducer
    k = 1
    parts = []
    while not b.is_constant():
        tick()
        d = gcd_polynomials(b, c)
        piece = exact_divide(b, d)
        _, piece = piece.rational_primitive()
        if not piece.is_constant():
            parts.append((piece, k))
        b = d
        c = exact_divide(c, d)
        k += 1
    # Recover the exact constant from the product.
    product = None
    for piece, mult in parts:
        term = piece**mult
        product = term if product is None else product * term
    if product is None:
        return f.constant_value(), []
    ratio = exact_divide(f, product)
    assert ratio is not None and ratio.is_constant(), "square-free parts must multiply back"
    return ratio.constant_value(), parts


def squarefree_part(f: Polynomial) -> Polynomial:
    _, parts = squarefree_decomposition(f)
    acc = f.ring.one()
    for piece, _ in parts:
        acc = acc * piece
    return acc


def is_squarefree(f: Polynomial) -> bool:
    _, parts = squarefree_decomposition(f)
    return all(mult == 1 for _, mult in parts)


def poly_sqrt(f: Polynomial):
    """Exact square root in the polynomial ring, or None."""
    if f.is_zero():
        return f
    const, parts = squarefree_decomposition(f)
    if const < 0 or any(mult % 2 for _, mult in parts):
        return None
    num, den = const.numerator, const.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    root = f.ring.constant(Fraction(rn, rd))
    for piece, mult in parts:
        root = root * piece ** (mult // 2)
    assert root * root == f
    return root


# ---------------------------------------------------------------------------
# univariate factorization


def _divisors(n: int):
    n = abs(n)
    if n == 0 or n > _DIVISOR_LIMIT:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _univariate_eval(p: Polynomial, v: int, value: Fraction) -> Fraction:
    point = [Fraction(0)] * p.ring.nvars
    point[v] = value
    return p.evaluate(point)


def _find_rational_root(p: Polynomial, v: int):
    """(root, complete): complete is False when the divisor enumeration
    overflowed, so the absence of a root is not certified."""
    coeffs = p.coefficients_in(v)
    trailing = coeffs[0].constant_value()
    leading = coeffs[-1].constant_value()
    if trailing == 0:
        return Fraction(0), True
    nums = _divisors(trailing.numerator)
    dens = _divisors(leading.numerator)
    if nums is None or dens is None:
        return None, False
    for den in dens:
        for num in nums:
            for sign in (1, -1):
                candidate = Fraction(sign * num, den)
                if _univariate_eval(p, v, candidate) == 0:
                    return candidate, True
    return None, True


def _all_rational_roots(p: Polynomial, v: int):
    """(roots, complete) of a univariate polynomial, by repeated stripping."""
    roots = []
    work = p
    complete = True
    while work.degree_in(v) >= 1:
        root, ok = _find_rational_root(work, v)
        if root is None:
            complete = complete and ok
            break
        if root not in roots:
            roots.append(root)
        lin = work.ring.var(v).scale(root.denominator) - work.ring.constant(
            root.numerator
        )
        work = exact_divide(work, lin)
    return roots, complete


def _interpolate(ring: Ring, v: int, points: list, values: list) -> Polynomial:
    xv = ring.var(v)
    total = ring.zero()
    for i, (ai, vi) in enumerate(zip(points, values)):
        term = ring.constant(vi)
        for j, aj in enumerate(points):
            if j == i:
                continue
            term = term * (xv - aj).scale(Fraction(1, ai - aj))
        total = total + term
    return total


def _eval_points(count: int):
    seq = [0]
    k = 1
    while len(seq) < count:
        seq.extend([k, -k])
        k += 1
    return seq[:count]


def _kronecker(p: Polynomial, v: int) -> tuple:
    """Kronecker factor search for a square-free poly with no rational roots."""
    d = p.degree_in(v)
    if d > _KRONECKER_MAX_DEGREE:
        return [p], False
    points = _eval_points(d // 2 + 1)
    values = [_univariate_eval(p, v, Fraction(a)) for a in points]
    divisor_lists = []
    for i, val in enumerate(values):
        divs = _divisors(val.numerator)
        if divs is None:
            return [p], False
        signed = divs if i == 0 else [x for dd in divs for x in (dd, -dd)]
        divisor_lists.append(signed)
    for t in range(2, d // 2 + 1):
        lists = divisor_lists[: t + 1]
        combos = 1
        for lst in lists:
            combos *= len(lst)
        if combos > _KRONECKER_COMBO_CAP:
            return [p], False
        for combo in itertools.product(*lists):
            tick()
            g = _interpolate(p.ring, v, points[: t + 1], [Fraction(c) for c in combo])
            if g.degree_in(v) != t:
                continue
            if any(c.denominator != 1 for c in g.terms.values()):
                continue
            q = exact_divide(p, g)
            if q is not None:
                left, cl = _factor_univariate_squarefree(
                    g.rational_primitive()[1], v
                )
                right, cr = _factor_univariate_squarefree(
                    q.rational_primitive()[1], v
                )
                return left + right, cl and cr
    return [p], True


def _factor_univariate_squarefree(p: Polynomial, v: int) -> tuple:
    """Factor a square-free univariate polynomial; returns (parts, certified)."""
    parts = []
    work = p
    while work.degree_in(v) >= 1:
        root, complete = _find_rational_root(work, v)
        if root is None:
            if not complete:
                parts.append(work.rational_primitive()[1])
                return parts, False
            break
        lin = work.ring.var(v).scale(root.denominator) - work.ring.constant(
            root.numerator
        )
        lin = lin.rational_primitive()[1]
        quotient = exact_divide(work, lin)
        assert quotient is not None
        parts.append(lin)
        work = quotient
    d = work.degree_in(v)
    if d <= 0:
        return parts, True
    if d <= 3:
        # No rational root: degree 2 and 3 cannot split over Q.
        parts.append(work.rational_primitive()[1])
        return parts, True
    rest, certified = _kronecker(work.rational_primitive()[1], v)
    return parts + rest, certified


# ---------------------------------------------------------------------------
# multivariate square-free factor pipeline


def _split_binary_homogeneous(s: Polynomial, va: int, vb: int) -> list:
    """Factor a square-free binary form by dehomogenizing to one variable."""
    ring = s.ring
    u = s.substitute({vb: ring.one()})
    u = u.rational_primitive()[1]
    parts, certified = _factor_univariate_squarefree(u, va)
    out = []
    for q in parts:
        t = q.degree_in(va)
        terms = {}
        for m, c in q.terms.items():
            lifted = list(m)
            lifted[vb] = t - m[va]
            terms[tuple(lifted)] = c
        h = Polynomial(ring, terms).rational_primitive()[1]
        out.append((h, certified))
    return out


def _split_quadratic(s: Polynomial, v: int):
    """Try to split a polynomial quadratic in v by the discriminant test.

    Returns a factor list, or None when the test does not apply cleanly.
    """
    ring = s.ring
    c0, c1, c2 = (s.coefficients_in(v) + [ring.zero()] * 3)[:3]
    disc = c1 * c1 - c2 * c0.scale(4)
    if disc.is_zero():
        return None
    sigma = poly_sqrt(disc)
    if sigma is None:
        # Quadratic in v, v-primitive, discriminant not a square: irreducible.
        return [(s, True)]
    xv = ring.var(v)
    for sign in (1, -1):
        cand = xv * c2.scale(2) + c1 - sigma.scale(sign)
        if cand.is_zero():
            continue
        cont = _content_in(cand, v)
        cand_pp = exact_divide(cand, cont).rational_primitive()[1]
        q = exact_divide(s, cand_pp)
        if q is not None:
            return [(cand_pp, True)] + _factor_squarefree(q.rational_primitive()[1])
    return None


def _evaluation_points(count: int, arity: int):
    values = [Fraction(v) for v in (0, 1, -1, 2, -2, 3, -3, 5, -5, 7)]
    return itertools.islice(itertools.product(values, repeat=arity), count)


def _linear_factor_search(s: Polynomial, j: int):
    """Search for an affine-linear factor of s with nonzero x_j coefficient.

    After content extraction every factor of s involves x_j, so candidates
    are x_j - w with w = r * p: p runs over the affine-linear divisors of
    the trailing x_j-coefficient (rational root theorem over the UFD of the
    remaining variables, plus the constant shape), and the rational r is
    pinned by a rational root of a one-point restriction of s.

    Returns (factor, quotient, complete): complete means a negative answer
    is certified (no divisor enumeration overflowed).
    """
    ring = s.ring
    coeffs = s.coefficients_in(j)
    f0, fd = coeffs[0], coeffs[-1]
    complete = True
    shapes = [ring.one()]
    if not f0.is_constant():
        sub = factorize(f0)
        if not sub.certified:
            complete = False
        for fac in sub.factors:
            if fac.poly.total_degree() == 1:
                shapes.append(fac.poly)
    others = [i for i in range(ring.nvars) if i != j]
    for p in shapes:
        point = None
        for combo in _evaluation_points(400, len(others)):
            tick()
            full = [Fraction(0)] * ring.nvars
            for idx, value in zip(others, combo):
                full[idx] = value
            if fd.evaluate(full) != 0 and p.evaluate(full) != 0:
                point = full
                break
        if point is None:
            complete = False
            continue
        restriction = s.substitute(
            {i: ring.constant(point[i]) for i in others}
        )
        roots, roots_complete = _all_rational_roots(restriction, j)
        complete = complete and roots_complete
        p_value = p.evaluate(point)
        for rho in roots:
            scale = rho / p_value
            if scale == 0:
                continue
            candidate = ring.var(j) - p.scale(scale)
            candidate = candidate.rational_primitive()[1]
            quotient = exact_divide(s, candidate)
            if quotient is not None:
                return candidate, quotient, True
    return None, None, complete


def _factor_squarefree(s: Polynomial) -> list:
    """Factor a square-free, integer-primitive polynomial.

    Returns a list of (factor, certified) pairs; factors are primitive with
    positive leading coefficients and multiply to s up to a rational.
    """
    vars_present = s.variables_present()
    if not vars_present:
        return []
    if len(vars_present) == 1:
        parts, certified = _factor_univariate_squarefree(s, vars_present[0])
        return [(q, certified) for q in parts]
    for v in vars_present:
        cont = _content_in(s, v)
        if not cont.is_constant():
            pp = exact_divide(s, cont)
            return _factor_squarefree(
                cont.rational_primitive()[1]
            ) + _factor_squarefree(pp.rational_primitive()[1])
    for v in vars_present:
        if s.degree_in(v) == 1:
            # Linear in v and v-primitive: irreducible.
            return [(s, True)]
    if len(vars_present) == 2 and s.is_homogeneous():
        return _split_binary_homogeneous(s, vars_present[0], vars_present[1])
    for v in vars_present:
        if s.degree_in(v) == 2:
            split = _split_quadratic(s, v)
            if split is not None:
                return split
    factor, quotient, _ = _linear_factor_search(s, vars_present[0])
    if factor is not None:
        return [(factor, True)] + _factor_squarefree(
            quotient.rational_primitive()[1]
        )
    return [(s, False)]


def factorize(f: Polynomial) -> Factorization:
    """Factor f over Q; uncertified square-free factors are flagged.

    The product of the returned factors (with multiplicities) times the
    constant reproduces f exactly; this is asserted on every call.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    ring = f.ring
    factors = []
    mono = f.monomial_content()
    for i, e in enumerate(mono):
        if e:
            factors.append(Factor(ring.var(i), e, True))
    rem = f.divide_by_monomial(mono)
    _, prim = rem.rational_primitive()
    if not prim.is_constant():
        _, parts = squarefree_decomposition(prim)
        for part, mult in parts:
            for q, certified in _factor_squarefree(part):
                factors.append(Factor(q, mult, certified))
    factors.sort(key=lambda fac: (fac.poly.total_degree(), str(fac.poly)))
    product = ring.one()
    for fac in factors:
        product = product * fac.poly**fac.multiplicity
    ratio = exact_divide(f, product)
    assert ratio is not None and ratio.is_constant(), "factor product must reproduce f"
    return Factorization(ratio.constant_value(), tuple(factors))
