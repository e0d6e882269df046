"""An involutive plane field and its foliation by first integrals.

The fields d/dx and d/dy span a rank-2 bracket-closed module on all of
Q^3.  No single subvariety is preserved except the whole space, so the
stratification is one family whose fibers are the planes z = constant,
found through polynomial first integrals.
"""

from logstrat import (
    Derivation,
    DerivationModule,
    Ideal,
    Ring,
    defining_prime_of_point,
    first_integrals,
    mark_holonomic,
    stratify,
)

ring = Ring(("x", "y", "z"))
g = DerivationModule(
    [Derivation.basis(ring, 0), Derivation.basis(ring, 1)],
    bracket_closed=True,
    ring=ring,
)

# Stratify the whole space: the zero ideal.
dag = mark_holonomic(stratify(Ideal(ring), g))
node = dag.nodes[0]
print("nodes:", len(dag.nodes))
print(
    f"base {node.prime}: dim={node.dim}, rank={node.rank}, kind={node.kind}, "
    f"fiber dimension {node.fiber_dim}"
)

# The family is resolved through first integrals: polynomials killed by
# every field.  Degree bound 1 already finds the projection z.
integrals = first_integrals(Ideal(ring), g, degree_bound=1)
print("first integrals of degree <= 1:", [str(h) for h in integrals])

# Fibers through concrete points are the integral level sets.
for point in [(1, 2, 3), (0, 0, 0), (5, -1, 2)]:
    fa = defining_prime_of_point(point, dag)
    print(f"fiber through {point}: {fa.prime}")

# Contrast: a single generic field has no polynomial integrals at all,
# and the fiber query answers honestly that it cannot resolve the family.
lonely = DerivationModule(
    [Derivation.parse("dx + y*dy", Ring(("x", "y")))],
    bracket_closed=True,
)
dag2 = mark_holonomic(stratify(Ideal(lonely.ring), lonely))
from logstrat import UnresolvedFiber

try:
    defining_prime_of_point((0, 1), dag2)
except UnresolvedFiber as exc:
    print("\nsingle field d/dx + y*d/dy:", exc)
