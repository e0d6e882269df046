"""Stratification of the closed points of V(I) under a module of fields.

Construction: the roots are the minimal primes of I.  Every node carries
the Krull dimension of its prime and the generic rank of the field module
along it (largest size of a coefficient-matrix minor outside the prime).
A node is defining when rank equals dimension; otherwise it is a family
whose fibers form an infinite symbolic set of defining primes of
dimension equal to the rank.  Nodes with positive rank recurse into the
preserved closure of the ideal of rank-dropping minors; rank-zero
families stop (every ideal above them is preserved, the fibers are the
individual closed points).  Nodes are deduplicated by reduced Groebner
basis across branches.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .budget import tick
from .derivations import DerivationModule
from .groebner import Ideal
from .poly import Polynomial
from .primes import (
    PRIME_CERTIFIED,
    PrimeCandidate,
    is_prime,
    maximal_ideal_of_point,
    minimal_primes,
)

DEFINING = "defining"
FAMILY = "family"


class StratificationError(RuntimeError):
    """An internal stratification invariant failed."""


class UncertifiedPrimeError(StratificationError):
    """A branch produced a prime candidate that could not be certified."""

    def __init__(self, ideal: Ideal, path):
        self.ideal = ideal
        self.path = list(path)
        chain = " -> ".join(str(p) for p in self.path) or "(root)"
        super().__init__(
            f"cannot certify {ideal} prime; reached via {chain}"
        )


class UnresolvedFiber(StratificationError):
    """A family fiber through a point could not be constructed."""


class PointNotOnVariety(ValueError):
    """The queried point does not lie on the input variety."""


# ---------------------------------------------------------------------------
# preservation


def preservation_defects(J: Ideal, module: DerivationModule) -> list:
    """Nonzero normal forms of generator images; empty iff J is preserved."""
    defects = []
    for delta in module.generators:
        for g in J.generators:
            tick()
            nf = J.normal_form(delta.apply(g))
            if not nf.is_zero():
                defects.append(nf)
    return defects


def is_preserved(J: Ideal, module: DerivationModule) -> bool:
    """delta(J) inside J for every field (A-linearity and Leibniz make the
    generator check sufficient)."""
    return not preservation_defects(J, module)


def preserved_closure(J: Ideal, module: DerivationModule) -> Ideal:
    """Smallest preserved ideal containing J (ascending chain, terminates)."""
    current = J
    while True:
        tick()
        defects = preservation_defects(current, module)
        if not defects:
            return current
        current = current + defects


# ---------------------------------------------------------------------------
# rank data


def generic_rank(P: Ideal, module: DerivationModule) -> int:
    """Largest r such that some r x r minor of the coefficient matrix is
    outside P; the rank of the induced fields over the residue field at P.
    Independent of the generating set by multilinearity of minors."""
    matrix = [
        [P.normal_form(c) for c in row] for row in module.coefficient_matrix()
    ]
    matrix = [row for row in matrix if any(not e.is_zero() for e in row)]
    if not matrix:
        return 0
    ncols = P.ring.nvars
    rank = 0
    while True:
        size = rank + 1
        if size > min(len(matrix), ncols):
            return rank
        if not _has_nonvanishing_minor(P, matrix, size):
            return rank
        rank = size


def _minor_det(matrix, rows, cols, ring) -> Polynomial:
    if len(rows) == 1:
        return matrix[rows[0]][cols[0]]
    total = ring.zero()
    for k, c in enumerate(cols):
        entry = matrix[rows[0]][c]
        if entry.is_zero():
            continue
        sub = _minor_det(matrix, rows[1:], cols[:k] + cols[k + 1 :], ring)
        term = entry * sub
        total = total + (term if k % 2 == 0 else -term)
    return total


def _has_nonvanishing_minor(P, matrix, size) -> bool:
    ncols = P.ring.nvars
    for rows in itertools.combinations(range(len(matrix)), size):
        for cols in itertools.combinations(range(ncols), size):
            tick()
            det = _minor_det(matrix, list(rows), list(cols), P.ring)
            if not det.is_zero() and not P.normal_form(det).is_zero():
                return True
    return False


def is_defining(P: Ideal, module: DerivationModule) -> bool:
    """Transitive action on the residue field: rank equals dimension."""
    return generic_rank(P, module) == P.dimension()


def degeneracy_ideal(P: Ideal, module: DerivationModule) -> Ideal:
    """Preserved closure of P plus all rank-sized minors: the locus inside
    V(P) where the evaluated rank drops.  Every preserved prime strictly
    containing P with smaller rank lives inside it, and the generic point
    of P survives, so the ideal strictly grows."""
    rank = generic_rank(P, module)
    if rank < 1:
        raise ValueError("degeneracy locus needs generic rank at least 1")
    matrix = [
        [P.normal_form(c) for c in row] for row in module.coefficient_matrix()
    ]
    matrix = [row for row in matrix if any(not e.is_zero() for e in row)]
    minors = []
    ncols = P.ring.nvars
    for rows in itertools.combinations(range(len(matrix)), rank):
        for cols in itertools.combinations(range(ncols), rank):
            tick()
            det = _minor_det(matrix, list(rows), list(cols), P.ring)
            if not det.is_zero():
                minors.append(det)
    return preserved_closure(P + minors, module)


# ---------------------------------------------------------------------------
# the DAG


@dataclass(frozen=True)
class RankProfile:
    prime: PrimeCandidate
    dim: int
    generic_rank: int


class StratNode:
    __slots__ = (
        "profile",
        "kind",
        "fiber_dim",
        "children",
        "parents",
        "holonomic",
        "degeneracy",
        "node_id",
    )

    def __init__(self, profile: RankProfile, kind: str):
        self.profile = profile
        self.kind = kind
        self.fiber_dim = profile.generic_rank
        self.children: list = []
        self.parents: list = []
        self.holonomic: bool | None = None
        self.degeneracy: Ideal | None = None
        self.node_id: str | None = None

    @property
    def prime(self) -> Ideal:
        return self.profile.prime.ideal

    @property
    def dim(self) -> int:
        return self.profile.dim

    @property
    def rank(self) -> int:
        return self.profile.generic_rank

    def is_defining(self) -> bool:
        return self.kind == DEFINING

    def is_family(self) -> bool:
        return self.kind == FAMILY

    def __repr__(self) -> str:
        return (
            f"StratNode({self.prime}, dim={self.dim}, rank={self.rank}, "
            f"{self.kind}, holonomic={self.holonomic})"
        )


class StratificationDAG:
    def __init__(self, ring: Ring, ideal: Ideal, module: DerivationModule):
        self.ring = ring
        self.ideal = ideal
        self.module = module
        self.roots: list = []
        self.nodes: list = []
        self.by_key: dict = {}

    def defining_nodes(self) -> list:
        return [n for n in self.nodes if n.is_defining()]

    def family_nodes(self) -> list:
        return [n for n in self.nodes if n.is_family()]

    def node_of(self, ideal: Ideal):
        return self.by_key.get(ideal)

    def _finalize(self) -> None:
        n = self.ring.nvars

        def node_key(node):
            return (n - node.dim, tuple(str(g) for g in node.prime.groebner_basis()))

        self.nodes.sort(key=node_key)
        for i, node in enumerate(self.nodes):
            node.node_id = f"n{i}"
        for node in self.nodes:
            node.children.sort(key=node_key)
            node.parents.sort(key=node_key)
        self.roots.sort(key=node_key)

    def __repr__(self) -> str:
        return f"StratificationDAG({len(self.nodes)} nodes, {len(self.roots)} roots)"


def stratify(I: Ideal, module: DerivationModule, *, check_preserved: bool = True) -> StratificationDAG:
    """Build the stratification DAG for a proper preserved ideal.

    The module must be bracket closed (close or verify it first); prime
    candidates that cannot be certified abort with the ideal path that
    produced them, never with a silently degraded result.
    """
    if I.is_unit():
        raise ValueError("the input ideal must be proper")
    if not module.bracket_closed:
        raise ValueError(
            "the derivation module must be bracket closed; "
            "run close_under_bracket or verify_bracket_closed first"
        )
    if check_preserved and preservation_defects(I, module):
        raise ValueError("the input ideal is not preserved by the module")

    dag = StratificationDAG(I.ring, I, module)
    work: list = []
    for cand in minimal_primes(I):
        if not cand.certified:
            raise UncertifiedPrimeError(cand.ideal, [I])
        work.append((cand, None, (I,)))

    while work:
        cand, parent, path = work.pop(0)
        existing = dag.by_key.get(cand.ideal)
        if existing is not None:
            if parent is not None and existing not in parent.children:
                parent.children.append(existing)
                existing.parents.append(parent)
            continue
        P = cand.ideal
        if preservation_defects(P, module):
            raise StratificationError(
                f"minimal prime {P} of a preserved ideal is not preserved"
            )
        dim = P.dimension()
        rank = generic_rank(P, module)
        if rank > dim:
            raise StratificationError(
                f"rank {rank} exceeds dimension {dim} at {P}"
            )
        node = StratNode(RankProfile(cand, dim, rank), DEFINING if rank == dim else FAMILY)
        dag.by_key[P] = node
        dag.nodes.append(node)
        if parent is None:
            dag.roots.append(node)
        else:
            parent.children.append(node)
            node.parents.append(parent)
        if rank >= 1:
            D = degeneracy_ideal(P, module)
            node.degeneracy = D
            if not D.is_unit():
                child_path = path + (P,)
                for child in minimal_primes(D):
                    if not child.certified:
                        raise UncertifiedPrimeError(child.ideal, child_path)
                    if child.ideal.equals(P):
                        raise StratificationError(
                            f"degeneracy locus of {P} failed to shrink"
                        )
                    work.append((child, node, child_path))

    dag._finalize()
    return dag


def mark_holonomic(dag: StratificationDAG) -> StratificationDAG:
    """A node is holonomic iff no family prime is contained in its prime
    (including itself); with no family nodes at all, every node is
    holonomic and the defining set is finite."""
    family_primes = [n.prime for n in dag.family_nodes()]
    for node in dag.nodes:
        node.holonomic = not any(
            node.prime.contains_ideal(fp) for fp in family_primes
        )
    return dag


# ---------------------------------------------------------------------------
# first integrals and point fibers


def first_integrals(P, module: DerivationModule, degree_bound: int = 3) -> list:
    """Basis of polynomial first integrals along P up to the degree bound,
    modulo constants and modulo P: solutions f of delta_i(f) = 0 mod P."""
    ideal = P.ideal if isinstance(P, PrimeCandidate) else P
    ring = ideal.ring
    monos = ring.monomials_up_to_degree(degree_bound)
    mono_index = {m: k for k, m in enumerate(monos)}

    def rows_of(images: list) -> list:
        # one linear equation per monomial appearing in any image
        appearing = sorted(
            {m for img in images for m in img.terms}, key=ring.sort_key
        )
        app_index = {m: r for r, m in enumerate(appearing)}
        rows = [[Fraction(0)] * len(monos) for _ in appearing]
        for col, img in enumerate(images):
            for m, c in img.terms.items():
                rows[app_index[m]][col] = c
        return rows

    derivative_images = []
    for delta in module.generators:
        derivative_images.append(
            [ideal.normal_form(delta.apply(ring.monomial(m))) for m in monos]
        )
    equation_rows = []
    for images in derivative_images:
        equation_rows.extend(rows_of(images))
    kernel = linalg.kernel_basis(equation_rows, len(monos))

    # the trivial solutions: constants and elements of P of bounded degree
    membership_rows = rows_of([ideal.normal_form(ring.monomial(m)) for m in monos])
    trivial = linalg.kernel_basis(membership_rows, len(monos))
    const_vec = [Fraction(0)] * len(monos)
    const_vec[mono_index[ring.zero_monomial()]] = Fraction(1)
    trivial.append(const_vec)

    integrals = []
    span = list(trivial)
    for vec in kernel:
        residue = linalg.reduce_against(span, vec)
        if all(c == 0 for c in residue):
            continue
        span.append(residue)
        poly = Polynomial(ring, {m: residue[k] for m, k in mono_index.items()})
        poly = ideal.normal_form(poly)
        poly = poly - ring.constant(poly.constant_term())
        if not poly.is_zero():
            integrals.append(poly.monic())
    integrals.sort(key=lambda p: (p.total_degree(), str(p)))
    return integrals


@dataclass(frozen=True)
class FiberAssignment:
    prime: Ideal
    node: StratNode
    via: str  # "stratum" | "family_point_fiber" | "family_integral_fiber"
    holonomic: bool


def _vanishing_nodes(point, dag: StratificationDAG) -> list:
    out = []
    for node in dag.nodes:
        if all(g.evaluate(point) == 0 for g in node.prime.groebner_basis()):
            out.append(node)
    return out


def deepest_vanishing_node(point, dag: StratificationDAG) -> StratNode:
    """The unique node whose prime vanishes at the point and is maximal
    under containment; non-uniqueness is an invariant violation."""
    vanishing = _vanishing_nodes(point, dag)
    if not vanishing:
        raise PointNotOnVariety(f"no stratum prime vanishes at {point}")
    deepest = [
        n
        for n in vanishing
        if not any(
            other is not n and other.prime.strictly_contains(n.prime)
            for other in vanishing
        )
    ]
    if len(deepest) != 1:
        raise StratificationError(
            f"{len(deepest)} maximal strata vanish at {point}; expected exactly one"
        )
    return deepest[0]


def _assignment_holonomic(prime: Ideal, dag: StratificationDAG) -> bool:
    return not any(prime.contains_ideal(n.prime) for n in dag.family_nodes())


def defining_prime_of_point(
    point, dag: StratificationDAG, *, integral_degree_bound: int = 3
) -> FiberAssignment:
    """The unique maximal defining prime specializing to the point.

    Defining nodes answer directly; rank-zero families return the point's
    maximal ideal; positive-rank families are materialized through first
    integrals, and failures report Unresolved instead of guessing.
    """
    ring = dag.ring
    if len(point) != ring.nvars:
        raise ValueError("point arity does not match ring arity")
    for g in dag.ideal.generators:
        if g.evaluate(point) != 0:
            raise PointNotOnVariety(f"{g} does not vanish at {point}")
    node = deepest_vanishing_node(point, dag)
    if node.is_defining():
        holonomic = (
            bool(node.holonomic)
            if node.holonomic is not None
            else _assignment_holonomic(node.prime, dag)
        )
        return FiberAssignment(node.prime, node, "stratum", holonomic)
    if node.fiber_dim == 0:
        fiber = node.prime + maximal_ideal_of_point(ring, point)
        return FiberAssignment(
            fiber, node, "family_point_fiber", _assignment_holonomic(fiber, dag)
        )
    integrals = first_integrals(node.prime, dag.module, integral_degree_bound)
    if not integrals:
        raise UnresolvedFiber(
            f"no first integrals of degree <= {integral_degree_bound} along {node.prime}"
        )
    constraints = [h - ring.constant(h.evaluate(point)) for h in integrals]
    fiber = preserved_closure(node.prime + constraints, dag.module)
    checks = (
        not fiber.is_unit()
        and all(g.evaluate(point) == 0 for g in fiber.groebner_basis())
        and generic_rank(fiber, dag.module) == fiber.dimension()
        and is_prime(fiber) == PRIME_CERTIFIED
    )
    if not checks:
        raise UnresolvedFiber(
            f"first integrals along {node.prime} did not produce a certified "
            f"defining fiber at {point}"
        )
    return FiberAssignment(
        fiber, node, "family_integral_fiber", _assignment_holonomic(fiber, dag)
    )


# ---------------------------------------------------------------------------
# rational point sampling


_VALUE_SEQUENCE = [
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(-2),
    Fraction(3),
    Fraction(1, 2),
    Fraction(-3),
    Fraction(5),
    Fraction(-1, 2),
]


def rational_points_on(P: Ideal, count: int) -> list:
    """Deterministic rational points on V(P) for primes in solved form:
    linear pivots plus at most one extra polynomial with a variable of
    degree one.  Returns fewer (possibly zero) points when the shape is
    not supported."""
    ring = P.ring
    gb = P.groebner_basis()
    if gb and gb[0].is_constant():
        return []
    linear = [g for g in gb if g.total_degree() == 1]
    rest = [g for g in gb if g.total_degree() != 1]
    if len(rest) > 1:
        return []
    pivots = {}
    for g in linear:
        lm = g.leading_monomial()
        v = next(i for i, e in enumerate(lm) if e)
        pivots[v] = g  # monic: x_v + tail, so x_v = -tail
    solved_var = None
    if rest:
        q = rest[0]
        for v in q.variables_present():
            if v in pivots:
                continue
            if q.degree_in(v) == 1:
                solved_var = v
                break
        if solved_var is None:
            return []
    free = [
        i
        for i in range(ring.nvars)
        if i not in pivots and i != solved_var
    ]
    points = []
    for combo in itertools.product(_VALUE_SEQUENCE, repeat=len(free)):
        if len(points) >= count:
            break
        tick()
        values: dict = dict(zip(free, combo))
        if solved_var is not None:
            coeffs = rest[0].coefficients_in(solved_var)
            partial_point = [values.get(i, Fraction(0)) for i in range(ring.nvars)]
            a = coeffs[1].evaluate(partial_point)
            if a == 0:
                continue
            b = coeffs[0].evaluate(partial_point)
            values[solved_var] = Fraction(-b, 1) / a
        for v in sorted(pivots, reverse=True):
            tail = pivots[v] - ring.var(v)
            partial_point = [values.get(i, Fraction(0)) for i in range(ring.nvars)]
            values[v] = -tail.evaluate(partial_point)
        point = tuple(values.get(i, Fraction(0)) for i in range(ring.nvars))
        if P.vanishes_at(point) and point not in points:
            points.append(point)
    return points


def sample_rational_points(dag: StratificationDAG, per_node: int = 6, minimum: int = 20) -> list:
    """Rational points of V(I) spread over every stratum's closure."""
    points = []
    seen = set()
    for node in dag.nodes:
        for p in rational_points_on(node.prime, per_node):
            if p not in seen:
                seen.add(p)
                points.append(p)
    extra = per_node
    while len(points) < minimum and extra < 60:
        extra *= 2
        for node in dag.nodes:
            for p in rational_points_on(node.prime, extra):
                if p not in seen:
                    seen.add(p)
                    points.append(p)
    return points


# ---------------------------------------------------------------------------
# frontier verification


@dataclass
class FrontierReport:
    pair_checks: int = 0
    point_checks: int = 0
    sampled_points: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return (
            f"frontier check: {status}; {self.pair_checks} stratum pairs, "
            f"{self.point_checks} point assignments over {self.sampled_points} samples"
        )


def verify_frontier(
    dag: StratificationDAG,
    *,
    per_node: int = 6,
    minimum_points: int = 20,
    integral_degree_bound: int = 3,
) -> FrontierReport:
    """Disjointness, boundary order and sampled coverage of the strata.

    Checks: distinct defining nodes never share a prime; when one defining
    prime contains another the containment is strict and lowers dimension;
    every sampled rational point receives exactly one deepest stratum, and
    every other stratum through the point sits strictly under it.
    """
    report = FrontierReport()
    defining = dag.defining_nodes()
    for i, a in enumerate(defining):
        for b in defining[i + 1 :]:
            report.pair_checks += 1
            if a.prime.equals(b.prime):
                report.violations.append(
                    f"defining nodes {a.node_id} and {b.node_id} share a prime"
                )
                continue
            for big, small in ((a, b), (b, a)):
                if big.prime.contains_ideal(small.prime):
                    if not big.prime.strictly_contains(small.prime):
                        report.violations.append(
                            f"non-strict containment between {big.node_id} and {small.node_id}"
                        )
                    if big.dim >= small.dim:
                        report.violations.append(
                            f"containment {small.node_id} < {big.node_id} fails to drop dimension"
                        )
    points = sample_rational_points(dag, per_node=per_node, minimum=minimum_points)
    report.sampled_points = len(points)
    for point in points:
        report.point_checks += 1
        try:
            assignment = defining_prime_of_point(
                point, dag, integral_degree_bound=integral_degree_bound
            )
        except StratificationError as exc:
            report.violations.append(f"point {point}: {exc}")
            continue
        for node in defining:
            if node.prime.equals(assignment.prime):
                continue
            if all(g.evaluate(point) == 0 for g in node.prime.groebner_basis()):
                if not assignment.prime.strictly_contains(node.prime):
                    report.violations.append(
                        f"point {point}: stratum {node.node_id} passes through it "
                        f"but does not contain the assigned prime {assignment.prime}"
                    )
    return report
