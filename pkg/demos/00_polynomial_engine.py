"""The exact computer-algebra layer underneath the stratifications.

A tour of the engine room: exact rational polynomials, reduced Groebner
bases, membership, quotients and saturation, factorization, and minimal
prime decomposition with certification.
"""

from fractions import Fraction

from logstrat import (
    Ideal,
    Ring,
    factorize,
    gcd_polynomials,
    minimal_primes,
    parse_polynomial,
    squarefree_decomposition,
)

ring = Ring(("x", "y", "z"))  # degrevlex by default; lex also available

# Exact arithmetic: coefficients are arbitrary-precision rationals.
f = parse_polynomial("1/2*x^2 - y*z + 3", ring)
print("f =", f)
print("f(2, 1, 5) =", f.evaluate((2, 1, 5)))
print("df/dx =", f.partial(0))

# Reduced Groebner bases are canonical: the same ideal always produces
# the same basis, whatever generators you start from.
J1 = Ideal.parse(ring, "x*y - 1", "y^2 - z")
J2 = Ideal.parse(ring, "y^2 - z", "x*y - 1", "x*y^3 - x*y*z")
print("\nreduced basis:", [str(g) for g in J1.groebner_basis()])
print("same ideal from shuffled generators:", J1.equals(J2))

# Membership is a normal-form computation.
probe = parse_polynomial("x^2*y^2 - x*y + z - y^2", ring)
print("probe in J:", J1.contains_poly(probe))

# Quotients and saturation isolate components without extra variables.
K = Ideal.parse(ring, "x^2*y", "x*y^2*z")
print("\nK =", K)
print("K : x    =", K.quotient(parse_polynomial("x", ring)))
print("K : x^oo =", K.saturation(parse_polynomial("x", ring)))

# Factorization is exact and honest: every factor is certified
# irreducible over Q, or flagged when outside the engine's scope.
g = parse_polynomial("(x^2 - 2*y^2)*(x + y + 1)^2*y", ring)
fac = factorize(g)
print("\nfactor", g)
for piece in fac.factors:
    print(f"  ({piece.poly})^{piece.multiplicity}  certified={piece.certified}")
print("constant:", fac.constant)

# Square-free structure comes from gcds with the partial derivatives.
const, parts = squarefree_decomposition(g)
print("square-free parts:", [(str(p), k) for p, k in parts])
print("gcd of g and dg/dx:", gcd_polynomials(g, g.partial(0)))

# Minimal primes with certification: the components of the zero set.
V = Ideal.parse(ring, "x*y", "x*z^2 - y*z^2")
print("\ncomponents of", V)
for cand in minimal_primes(V):
    print("  ", cand.ideal, "--", cand.status)
