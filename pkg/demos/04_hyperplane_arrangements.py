"""Arrangements of hyperplanes: every flat is a defining stratum.

For a product of pairwise non-proportional linear forms, the preserved
primes of the tangent module are exactly the intersection flats of the
arrangement, every one of them is defining, and the whole stratification
is holonomic (finitely many strata, no families).
"""

import itertools
from fractions import Fraction

from logstrat import (
    Ideal,
    Ring,
    logarithmic_derivations,
    mark_holonomic,
    parse_polynomial,
    stratify,
    verify_frontier,
)

for variables, forms_text in [
    (("x", "y"), ("x", "y", "x+y")),
    (("x", "y", "z"), ("x", "y", "z", "x-y")),
]:
    ring = Ring(variables)
    forms = [parse_polynomial(t, ring) for t in forms_text]
    product = ring.one()
    for form in forms:
        product = product * form
    print(f"arrangement {' * '.join(forms_text)} = 0 in Q^{ring.nvars}")

    dag = mark_holonomic(stratify(Ideal(ring, [product]), logarithmic_derivations(Ideal(ring, [product]))))
    print(f"  strata: {len(dag.nodes)}, families: {len(dag.family_nodes())}")
    for node in dag.nodes:
        print(f"    {node.prime}  dim={node.dim} rank={node.rank} {node.kind}")

    # Independent cross-check: enumerate flats combinatorially as the
    # distinct spans of subsets of the normal vectors.
    def normal(form):
        vec = [Fraction(0)] * ring.nvars
        for mono, coeff in form.terms.items():
            vec[[i for i, e in enumerate(mono) if e][0]] = coeff
        return tuple(vec)

    spans = set()
    for r in range(1, len(forms) + 1):
        for subset in itertools.combinations(forms, r):
            flat = Ideal(ring, list(subset))
            spans.add(flat)
    print(f"  distinct flats by subset enumeration: {len(spans)}")
    assert spans == {n.prime for n in dag.nodes}

    report = verify_frontier(dag)
    print(f"  {report.summary()}\n")
