"""Acceptance suite: every release criterion, one pass/fail line each.

All arithmetic is exact, so every comparison below is exact equality;
run with -s to see the lines as they print.
"""

import contextlib
import random
from fractions import Fraction

from logstrat import (
    Derivation,
    DerivationModule,
    Ideal,
    defining_prime_of_point,
    factorize,
    first_integrals,
    generic_rank,
    is_preserved,
    minimal_primes,
    normal_form,
    parse_polynomial,
    s_polynomial,
    saito_free_check,
    sample_rational_points,
    verify_frontier,
)
from logstrat.poly import Polynomial
from oracles import cofactor_membership, flat_to_generators, intersection_lattice


@contextlib.contextmanager
def criterion(number: int, label: str):
    try:
        yield
    except BaseException:
        print(f"[acceptance] criterion {number:02d} ({label}): FAIL")
        raise
    print(f"[acceptance] criterion {number:02d} ({label}): PASS")


def node_by_prime(dag, *gens):
    node = dag.node_of(Ideal.parse(dag.ring, *gens))
    assert node is not None, f"missing node ({', '.join(gens)})"
    return node


def test_c01_tangent_module_of_quartic_surface(
    surface_module, theta_basis, ring3
):
    with criterion(1, "tangent module equals the triangular basis span"):
        span = DerivationModule(theta_basis, ring=ring3)
        assert surface_module.submodule().contains_module(span.submodule())
        assert span.submodule().contains_module(surface_module.submodule())


def test_c02_freeness_determinant(theta_basis, surface_poly):
    with criterion(2, "determinant criterion on the explicit basis"):
        result = saito_free_check(theta_basis, surface_poly)
        assert result.verdict == "free_with_basis"
        assert result.constant == Fraction(1)
        assert result.determinant == surface_poly


def test_c03_surface_stratification_shape(surface_dag):
    with criterion(3, "surface DAG: nodes, kinds, dims, ranks, dedup"):
        dag = surface_dag
        assert len(dag.nodes) == 9
        root_data = {str(n.prime): (n.dim, n.rank, n.kind) for n in dag.roots}
        assert root_data == {
            "(x)": (2, 2, "defining"),
            "(y)": (2, 2, "defining"),
            "(x + y)": (2, 2, "defining"),
            "(y*z + x)": (2, 2, "defining"),
        }
        family = node_by_prime(dag, "x", "y")
        assert family.kind == "family"
        assert (family.dim, family.rank) == (1, 0)
        assert [n for n in dag.family_nodes()] == [family]
        mid_a = node_by_prime(dag, "x", "z")
        mid_b = node_by_prime(dag, "x+y", "z-1")
        assert (mid_a.kind, mid_a.dim, mid_a.rank) == ("defining", 1, 1)
        assert (mid_b.kind, mid_b.dim, mid_b.rank) == ("defining", 1, 1)
        pt_a = node_by_prime(dag, "x", "y", "z")
        pt_b = node_by_prime(dag, "x", "y", "z-1")
        assert (pt_a.kind, pt_a.dim, pt_a.rank) == ("defining", 0, 0)
        assert (pt_b.kind, pt_b.dim, pt_b.rank) == ("defining", 0, 0)
        # deduplication across branches
        assert len(family.parents) == 4
        assert len(mid_a.parents) == 2
        expected_parents = sorted(
            n.node_id for n in dag.roots if mid_a.prime.contains_ideal(n.prime)
        )
        assert sorted(p.node_id for p in mid_a.parents) == expected_parents


def test_c04_surface_holonomicity(surface_dag):
    with criterion(4, "surface holonomic marks"):
        marks = {str(n.prime): n.holonomic for n in surface_dag.nodes}
        assert marks == {
            "(x)": True,
            "(y)": True,
            "(x + y)": True,
            "(y*z + x)": True,
            "(y, x)": False,
            "(z, x)": True,
            "(z - 1, x + y)": True,
            "(z, y, x)": False,
            "(z - 1, y, x)": False,
        }


def test_c05_surface_point_queries(surface_dag, ring3):
    with criterion(5, "surface point fibers"):
        a = defining_prime_of_point((0, 0, 5), surface_dag)
        assert a.prime.equals(Ideal.parse(ring3, "x", "y", "z-5"))
        b = defining_prime_of_point((1, 1, -1), surface_dag)
        assert b.prime.equals(Ideal.parse(ring3, "x+y*z"))
        # the family fibers at 0 and 1 coincide with the explicit point
        # nodes reached through the rank-one strata: no duplicates appear
        c = defining_prime_of_point((0, 0, 0), surface_dag)
        assert c.node is surface_dag.node_of(Ideal.parse(ring3, "x", "y", "z"))
        d = defining_prime_of_point((0, 0, 1), surface_dag)
        assert d.node is surface_dag.node_of(Ideal.parse(ring3, "x", "y", "z-1"))


def test_c06_plane_foliation(foliation_dag, foliation_ideal, foliation_module, ring3):
    with criterion(6, "plane foliation: family, integrals, fibers"):
        assert len(foliation_dag.nodes) == 1
        node = foliation_dag.nodes[0]
        assert node.kind == "family"
        assert node.prime.is_zero_ideal()
        assert node.fiber_dim == 2
        assert node.children == []
        integrals = first_integrals(foliation_ideal, foliation_module, 1)
        assert [str(h) for h in integrals] == ["z"]
        points = [(1, 2, 3), (0, 0, 0), (5, -1, 2), (Fraction(1, 2), 4, -7), (-3, 3, 11)]
        for point in points:
            fiber = defining_prime_of_point(point, foliation_dag)
            expected = Ideal(ring3, [ring3.var("z") - ring3.constant(point[2])])
            assert fiber.prime.equals(expected)


def test_c07_three_lines_arrangement(three_lines_dag, ring2):
    with criterion(7, "three concurrent lines: defining flats only"):
        dag = three_lines_dag
        assert not dag.family_nodes()
        assert all(n.holonomic for n in dag.nodes)
        forms = [parse_polynomial(s, ring2) for s in ("x", "y", "x+y")]
        flats = intersection_lattice(ring2, forms)
        flat_ideals = {Ideal(ring2, flat_to_generators(ring2, f)) for f in flats}
        node_primes = {n.prime for n in dag.nodes}
        assert node_primes == flat_ideals
        assert len(node_primes) == 4


def test_c08_four_planes_lattice_agreement(four_planes_dag, ring3):
    with criterion(8, "four planes: defining primes equal the flat lattice"):
        dag = four_planes_dag
        assert all(n.is_defining() for n in dag.nodes)
        forms = [parse_polynomial(s, ring3) for s in ("x", "y", "z", "x-y")]
        flats = intersection_lattice(ring3, forms)
        flat_ideals = {Ideal(ring3, flat_to_generators(ring3, f)) for f in flats}
        defining_primes = {n.prime for n in dag.defining_nodes()}
        assert defining_primes == flat_ideals
        assert len(flat_ideals) == 9


def test_c09_seidenberg_descent(
    surface_dag, foliation_dag, three_lines_dag, four_planes_dag
):
    with criterion(9, "minimal primes of preserved ideals stay preserved"):
        violations = []
        for dag in (surface_dag, foliation_dag, three_lines_dag, four_planes_dag):
            produced = [n.prime for n in dag.nodes]
            produced += [
                n.degeneracy
                for n in dag.nodes
                if n.degeneracy is not None and not n.degeneracy.is_unit()
            ]
            for J in produced:
                if not is_preserved(J, dag.module):
                    violations.append(f"{J} not preserved")
                    continue
                for cand in minimal_primes(J):
                    if not is_preserved(cand.ideal, dag.module):
                        violations.append(
                            f"minimal prime {cand.ideal} of {J} not preserved"
                        )
        assert violations == []


def test_c10_maximality_and_uniqueness(
    surface_dag, foliation_dag, three_lines_dag, four_planes_dag
):
    with criterion(10, "maximal preserved primes define; unique deepest node"):
        for dag in (surface_dag, foliation_dag, three_lines_dag, four_planes_dag):
            points = sample_rational_points(dag, minimum=20)
            assert len(points) >= 20
            # (a) maximal elements among node primes and materialized fibers
            # are defining (families always sit below their fibers)
            pool = []
            for n in dag.nodes:
                pool.append((n.prime, n.is_defining()))
            for point in points:
                assignment = defining_prime_of_point(point, dag)
                defining = (
                    generic_rank(assignment.prime, dag.module)
                    == assignment.prime.dimension()
                )
                pool.append((assignment.prime, defining))
            for ideal, defining in pool:
                maximal = not any(
                    other.strictly_contains(ideal) for other, _ in pool
                )
                if maximal:
                    assert defining, f"maximal preserved prime {ideal} must define"
            # (b) exactly one deepest node prime vanishes at every sample
            for point in points:
                vanishing = [
                    n
                    for n in dag.nodes
                    if all(g.evaluate(point) == 0 for g in n.prime.groebner_basis())
                ]
                deepest = [
                    n
                    for n in vanishing
                    if not any(
                        o is not n and o.prime.strictly_contains(n.prime)
                        for o in vanishing
                    )
                ]
                assert len(deepest) == 1, f"{len(deepest)} deepest nodes at {point}"


def test_c11_frontier_condition(
    surface_dag, foliation_dag, three_lines_dag, four_planes_dag
):
    with criterion(11, "frontier verification reports zero violations"):
        for dag in (surface_dag, foliation_dag, three_lines_dag, four_planes_dag):
            report = verify_frontier(dag)
            assert report.ok, report.violations


def _random_poly(rng, ring, max_degree=2, max_terms=4):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(ring.nvars)] += 1
        terms[tuple(mono)] = Fraction(rng.randint(-3, 3))
    return Polynomial(ring, terms)


def test_c12_engine_property_suites(ring3):
    with criterion(12, "seeded engine property suites"):
        rng = random.Random(2024)

        # Buchberger: every S-polynomial of every computed basis reduces to 0
        for _ in range(40):
            gens = [_random_poly(rng, ring3) for _ in range(rng.randint(2, 3))]
            gb = Ideal(ring3, gens).groebner_basis()
            for i in range(len(gb)):
                for j in range(i + 1, len(gb)):
                    assert normal_form(
                        s_polynomial(gb[i], gb[j]), list(gb)
                    ).is_zero()

        # normal-form membership against the bounded-cofactor oracle
        instances = 0
        while instances < 100:
            gens = [_random_poly(rng, ring3) for _ in range(2)]
            if any(g.is_zero() for g in gens):
                continue
            J = Ideal(ring3, gens)
            if J.is_unit():
                continue
            h1 = _random_poly(rng, ring3, max_degree=1, max_terms=2)
            h2 = _random_poly(rng, ring3, max_degree=1, max_terms=2)
            member = h1 * gens[0] + h2 * gens[1]
            assert J.normal_form(member).is_zero()
            assert cofactor_membership(member, gens, 1)
            instances += 1
            probe = _random_poly(rng, ring3)
            if not J.normal_form(probe).is_zero():
                assert not cofactor_membership(probe, gens, 3)
                instances += 1

        # Leibniz and Jacobi identities on random fields
        for _ in range(100):
            a = Derivation(ring3, [_random_poly(rng, ring3) for _ in range(3)])
            b = Derivation(ring3, [_random_poly(rng, ring3) for _ in range(3)])
            c = Derivation(ring3, [_random_poly(rng, ring3) for _ in range(3)])
            f = _random_poly(rng, ring3)
            g = _random_poly(rng, ring3)
            assert a.apply(f * g) == f * a.apply(g) + g * a.apply(f)
            assert a.bracket(b) == -(b.bracket(a))
            jacobi = (
                a.bracket(b.bracket(c))
                + b.bracket(c.bracket(a))
                + c.bracket(a.bracket(b))
            )
            assert jacobi.is_zero()

        # factorization soundness on random products of linear forms
        for _ in range(100):
            product = ring3.constant(rng.choice([1, 2, -3]))
            for _ in range(rng.randint(1, 4)):
                coeffs = [rng.randint(-2, 2) for _ in range(3)]
                lin = sum(
                    (ring3.var(i).scale(c) for i, c in enumerate(coeffs)),
                    ring3.constant(rng.randint(-1, 1)),
                )
                if lin.is_constant():
                    lin = ring3.var(rng.randrange(3)) + lin
                product = product * lin
            fac = factorize(product)
            assert fac.expand() == product
            assert all(f.poly.total_degree() <= 1 for f in fac.factors)
