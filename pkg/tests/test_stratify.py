import pytest

from logstrat import (
    DEFINING,
    FAMILY,
    Derivation,
    DerivationModule,
    Ideal,
    PointNotOnVariety,
    UnresolvedFiber,
    defining_prime_of_point,
    degeneracy_ideal,
    first_integrals,
    generic_rank,
    is_defining,
    is_preserved,
    mark_holonomic,
    parse_polynomial,
    preserved_closure,
    rational_points_on,
    sample_rational_points,
    stratify,
    verify_frontier,
)


def node_by_prime(dag, *gens):
    target = Ideal.parse(dag.ring, *gens)
    node = dag.node_of(target)
    assert node is not None, f"no node for {target}"
    return node


# -- preservation ----------------------------------------------------------------


def test_is_preserved_examples(ring3, surface_module):
    assert is_preserved(Ideal.parse(ring3, "x", "y"), surface_module)
    assert is_preserved(Ideal(ring3), surface_module)
    assert is_preserved(Ideal.parse(ring3, "1"), surface_module)
    dx_only = DerivationModule([Derivation.basis(ring3, 0)], True, ring3)
    assert not is_preserved(Ideal.parse(ring3, "x"), dx_only)


def test_preserved_closure_examples(ring3, surface_module):
    fixed = Ideal.parse(ring3, "x", "y")
    assert preserved_closure(fixed, surface_module).equals(fixed)
    dx_only = DerivationModule([Derivation.basis(ring3, 0)], True, ring3)
    assert preserved_closure(Ideal.parse(ring3, "x"), dx_only).is_unit()
    J = Ideal.parse(ring3, "x", "y^2*z")
    assert preserved_closure(J, surface_module).equals(J)


def test_preserved_closure_idempotent(ring3, surface_module):
    J = Ideal.parse(ring3, "x+y", "y^2*(z-1)")
    closed = preserved_closure(J, surface_module)
    assert preserved_closure(closed, surface_module).equals(closed)


# -- rank ---------------------------------------------------------------------------


def test_generic_rank_examples(ring3, surface_module, foliation_module):
    assert generic_rank(Ideal.parse(ring3, "x", "y"), surface_module) == 0
    assert generic_rank(Ideal(ring3), foliation_module) == 2
    assert generic_rank(Ideal.parse(ring3, "x"), surface_module) == 2


def test_rank_bounded_by_dimension_on_preserved_primes(surface_dag):
    for node in surface_dag.nodes:
        assert 0 <= node.rank <= node.dim


def test_is_defining_examples(ring3, surface_module, foliation_module):
    assert not is_defining(Ideal.parse(ring3, "x", "y"), surface_module)
    assert is_defining(Ideal.parse(ring3, "z-7"), foliation_module)
    # a preserved maximal ideal of a rational point: dim 0, rank 0
    assert is_defining(Ideal.parse(ring3, "x", "y", "z"), surface_module)


def test_degeneracy_ideal_examples(ring3, surface_module, foliation_module):
    D1 = degeneracy_ideal(Ideal.parse(ring3, "x"), surface_module)
    assert D1.equals(Ideal.parse(ring3, "x", "y^2*z"))
    D2 = degeneracy_ideal(Ideal.parse(ring3, "y"), surface_module)
    assert D2.equals(Ideal.parse(ring3, "y", "x^2"))
    D3 = degeneracy_ideal(Ideal(ring3), foliation_module)
    assert D3.is_unit()  # a constant minor: no descendants
    with pytest.raises(ValueError):
        degeneracy_ideal(Ideal.parse(ring3, "x", "y"), surface_module)  # rank 0


# -- the surface DAG -------------------------------------------------------------------


def test_surface_dag_shape(surface_dag):
    assert len(surface_dag.nodes) == 9
    roots = {str(n.prime): (n.dim, n.rank, n.kind) for n in surface_dag.roots}
    assert roots == {
        "(x)": (2, 2, DEFINING),
        "(y)": (2, 2, DEFINING),
        "(x + y)": (2, 2, DEFINING),
        "(y*z + x)": (2, 2, DEFINING),
    }
    family = node_by_prime(surface_dag, "x", "y")
    assert (family.kind, family.dim, family.rank, family.fiber_dim) == (
        FAMILY,
        1,
        0,
        0,
    )
    assert family.children == []
    mid1 = node_by_prime(surface_dag, "x", "z")
    mid2 = node_by_prime(surface_dag, "x+y", "z-1")
    assert (mid1.kind, mid1.dim, mid1.rank) == (DEFINING, 1, 1)
    assert (mid2.kind, mid2.dim, mid2.rank) == (DEFINING, 1, 1)
    p0 = node_by_prime(surface_dag, "x", "y", "z")
    p1 = node_by_prime(surface_dag, "x", "y", "z-1")
    assert (p0.kind, p0.dim, p0.rank) == (DEFINING, 0, 0)
    assert (p1.kind, p1.dim, p1.rank) == (DEFINING, 0, 0)


def test_surface_dag_deduplicates_across_branches(surface_dag):
    family = node_by_prime(surface_dag, "x", "y")
    assert len(family.parents) == 4  # reached from every component
    mid1 = node_by_prime(surface_dag, "x", "z")
    assert len(mid1.parents) == 2  # from (x) and from (x + y*z)


def test_surface_holonomic_marks(surface_dag):
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


def test_surface_point_queries(surface_dag):
    a = defining_prime_of_point((0, 0, 5), surface_dag)
    assert a.prime.equals(Ideal.parse(surface_dag.ring, "x", "y", "z-5"))
    assert a.via == "family_point_fiber"
    assert not a.holonomic
    b = defining_prime_of_point((1, 1, -1), surface_dag)
    assert b.prime.equals(Ideal.parse(surface_dag.ring, "x+y*z"))
    assert b.via == "stratum"
    assert b.holonomic


def test_point_off_variety_rejected(surface_dag):
    with pytest.raises(PointNotOnVariety):
        defining_prime_of_point((1, 2, 3), surface_dag)


# -- the plane foliation -----------------------------------------------------------------


def test_foliation_dag(foliation_dag):
    assert len(foliation_dag.nodes) == 1
    node = foliation_dag.nodes[0]
    assert node.kind == FAMILY
    assert node.prime.is_zero_ideal()
    assert (node.dim, node.rank, node.fiber_dim) == (3, 2, 2)
    assert node.children == []
    assert node.holonomic is False


def test_foliation_first_integrals(foliation_ideal, foliation_module, ring3):
    ints = first_integrals(foliation_ideal, foliation_module, 1)
    assert [str(h) for h in ints] == ["z"]


def test_first_integrals_of_scaling_field(ring2):
    module = DerivationModule(
        [Derivation.parse("x*dx - y*dy", ring2)], True, ring2
    )
    ints = first_integrals(Ideal(ring2), module, 2)
    assert [str(h) for h in ints] == ["x*y"]


def test_first_integrals_empty_on_defining_primes(surface_dag):
    for node in surface_dag.defining_nodes():
        ints = first_integrals(node.prime, surface_dag.module, 2)
        assert ints == [], f"defining {node.prime} admits no integrals"


def test_foliation_fibers(foliation_dag, ring3):
    for point in [(1, 2, 3), (0, 0, 0), (5, -1, 2), (1, 1, 7), (-2, 3, -4)]:
        fa = defining_prime_of_point(point, foliation_dag)
        expected = Ideal(
            ring3, [ring3.var("z") - ring3.constant(point[2])]
        )
        assert fa.prime.equals(expected)
        assert fa.via == "family_integral_fiber"
        assert not fa.holonomic


def test_unresolved_fiber_is_reported(ring2):
    # x d/dx + y d/dy has no polynomial first integrals: query unresolved
    module = DerivationModule(
        [Derivation.parse("dx + y*dy", ring2)], True, ring2
    )
    dag = mark_holonomic(stratify(Ideal(ring2), module))
    assert dag.nodes[0].kind == FAMILY
    with pytest.raises(UnresolvedFiber):
        defining_prime_of_point((0, 1), dag, integral_degree_bound=3)


# -- the arrangements -----------------------------------------------------------------------


def test_three_lines_dag(three_lines_dag):
    assert {str(n.prime) for n in three_lines_dag.nodes} == {
        "(x)",
        "(y)",
        "(x + y)",
        "(y, x)",
    }
    assert all(n.is_defining() for n in three_lines_dag.nodes)
    assert all(n.holonomic for n in three_lines_dag.nodes)
    assert not three_lines_dag.family_nodes()


def test_four_planes_dag(four_planes_dag):
    assert len(four_planes_dag.nodes) == 9
    assert all(n.is_defining() for n in four_planes_dag.nodes)
    assert all(n.holonomic for n in four_planes_dag.nodes)


def test_single_defining_node_dag(ring3):
    # a smooth hypersurface under its full tangent module: one defining
    # stratum, holonomic, vacuous frontier
    from logstrat import logarithmic_derivations

    I = Ideal.parse(ring3, "x")
    dag = mark_holonomic(stratify(I, logarithmic_derivations(I)))
    assert len(dag.nodes) == 1
    node = dag.nodes[0]
    assert node.is_defining() and node.holonomic
    assert node.children == []
    report = verify_frontier(dag)
    assert report.ok and report.pair_checks == 0


# -- invariants across corpus DAGs ------------------------------------------------------------


def test_children_strictly_contain_parents(surface_dag, four_planes_dag, three_lines_dag):
    for dag in (surface_dag, four_planes_dag, three_lines_dag):
        for node in dag.nodes:
            for child in node.children:
                assert child.prime.strictly_contains(node.prime)
                assert child.dim < node.dim


def test_all_node_primes_certified_and_preserved(
    surface_dag, foliation_dag, three_lines_dag, four_planes_dag
):
    for dag in (surface_dag, foliation_dag, three_lines_dag, four_planes_dag):
        for node in dag.nodes:
            assert node.profile.prime.certified
            assert is_preserved(node.prime, dag.module)


def test_stratify_rejects_bad_inputs(ring3, surface_module, surface_ideal):
    with pytest.raises(ValueError):
        stratify(Ideal.parse(ring3, "1"), surface_module)
    open_module = DerivationModule([Derivation.basis(ring3, 0)], False, ring3)
    with pytest.raises(ValueError):
        stratify(surface_ideal, open_module)
    # an unpreserved ideal is rejected up front
    dx_only = DerivationModule([Derivation.basis(ring3, 0)], True, ring3)
    with pytest.raises(ValueError):
        stratify(Ideal.parse(ring3, "x"), dx_only)


# -- sampling and frontier ---------------------------------------------------------------------


def test_rational_points_on_primes(ring3):
    pts = rational_points_on(Ideal.parse(ring3, "x+y*z"), 6)
    assert len(pts) == 6
    f = parse_polynomial("x+y*z", ring3)
    for p in pts:
        assert f.evaluate(p) == 0
    pts0 = rational_points_on(Ideal(ring3), 4)
    assert len(pts0) == 4


def test_sample_points_land_on_variety(surface_dag):
    pts = sample_rational_points(surface_dag, minimum=20)
    assert len(pts) >= 20
    for p in pts:
        for g in surface_dag.ideal.generators:
            assert g.evaluate(p) == 0


def test_frontier_reports_no_violations(
    surface_dag, foliation_dag, three_lines_dag, four_planes_dag
):
    for dag in (surface_dag, foliation_dag, three_lines_dag, four_planes_dag):
        report = verify_frontier(dag)
        assert report.ok, report.violations
        assert report.sampled_points >= 20


def test_deepest_node_unique_per_sampled_point(surface_dag):
    from logstrat.stratify import deepest_vanishing_node

    for point in sample_rational_points(surface_dag, minimum=20):
        node = deepest_vanishing_node(point, surface_dag)
        others = [
            n
            for n in surface_dag.nodes
            if n is not node
            and all(g.evaluate(point) == 0 for g in n.prime.groebner_basis())
        ]
        for other in others:
            assert node.prime.strictly_contains(other.prime)
