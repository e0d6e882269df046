"""Tangent vector fields of a quartic surface, and the determinant test.

Walks through: parsing an ideal, computing the module of all polynomial
vector fields that map the ideal into itself, and certifying that three
explicit fields form a free basis of that module.
"""

from logstrat import (
    Derivation,
    DerivationModule,
    Ideal,
    Ring,
    logarithmic_derivations,
    parse_polynomial,
    saito_free_check,
)

# The surface: four irreducible components through the z-axis.
ring = Ring(("x", "y", "z"))
f = parse_polynomial("x*y*(x+y)*(x+y*z)", ring)
I = Ideal(ring, [f])
print("surface:", f, "= 0")

# Every derivation delta with delta(f) in (f) is tangent to the surface.
tangent = logarithmic_derivations(I)
print("\ncomputed tangent module generators:")
for d in tangent.generators:
    print("  ", d)

# The module has an upper-triangular basis; check both inclusions.
theta = [
    Derivation.parse("x*dx + y*dy", ring),
    Derivation.parse("(x+y)*(y*dy - z*dz)", ring),
    Derivation.parse("(x+y*z)*dz", ring),
]
span = DerivationModule(theta, ring=ring)
print("\ncomputed module == span of the triangular basis:", tangent.equals(span))

# Soundness: every generator really maps f back into (f).
for d in tangent.generators:
    assert I.contains_poly(d.apply(f))
print("every generator maps f into (f): ok")

# The determinant test: n fields preserving (f) are a free basis exactly
# when det[delta_i(x_j)] is a nonzero rational multiple of f.
result = saito_free_check(theta, f)
print("\ndeterminant:", result.determinant)
print("verdict:", result.verdict, "with det =", result.constant, "* f")
