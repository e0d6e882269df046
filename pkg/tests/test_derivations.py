import random
from fractions import Fraction

import pytest

from logstrat import (
    Derivation,
    DerivationModule,
    Ideal,
    close_under_bracket,
    full_tangent_module,
    logarithmic_derivations,
    parse_polynomial,
    saito_free_check,
    verify_bracket_closed,
)


def random_poly(rng, ring, max_degree=2):
    from logstrat.poly import Polynomial

    terms = {}
    for _ in range(rng.randint(0, 3)):
        mono = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(ring.nvars)] += 1
        terms[tuple(mono)] = Fraction(rng.randint(-3, 3))
    return Polynomial(ring, terms)


def random_derivation(rng, ring):
    return Derivation(ring, [random_poly(rng, ring) for _ in range(ring.nvars)])


# -- apply ---------------------------------------------------------------------


def test_apply_examples(ring3, surface_poly, theta_basis):
    theta1, _, theta3 = theta_basis
    z = ring3.var("z")
    assert theta3.apply(z) == parse_polynomial("x + y*z", ring3)
    assert theta1.apply(ring3.constant(9)).is_zero()
    assert theta1.apply(surface_poly) == surface_poly.scale(4)  # Euler relation


def test_apply_is_linear_and_leibniz(ring3):
    rng = random.Random(2)
    for _ in range(40):
        d = random_derivation(rng, ring3)
        f = random_poly(rng, ring3)
        g = random_poly(rng, ring3)
        assert d.apply(f + g) == d.apply(f) + d.apply(g)
        assert d.apply(f * g) == f * d.apply(g) + g * d.apply(f)
        assert d.apply(f.scale(3)) == d.apply(f).scale(3)


# -- brackets ---------------------------------------------------------------------


def test_bracket_examples(ring3, theta_basis):
    theta1, theta2, theta3 = theta_basis
    d = Derivation.basis(ring3, 0)
    x_dx = Derivation.parse("x*dx", ring3)
    assert d.bracket(d).is_zero()
    assert d.bracket(x_dx) == d
    assert theta1.bracket(theta3) == theta3


def test_bracket_antisymmetry_and_jacobi(ring3):
    rng = random.Random(19)
    for _ in range(25):
        a = random_derivation(rng, ring3)
        b = random_derivation(rng, ring3)
        c = random_derivation(rng, ring3)
        assert a.bracket(b) == -(b.bracket(a))
        jacobi = (
            a.bracket(b.bracket(c))
            + b.bracket(c.bracket(a))
            + c.bracket(a.bracket(b))
        )
        assert jacobi.is_zero()


def test_bracket_acts_as_commutator_on_polynomials(ring3):
    rng = random.Random(23)
    for _ in range(20):
        a = random_derivation(rng, ring3)
        b = random_derivation(rng, ring3)
        f = random_poly(rng, ring3)
        lhs = a.bracket(b).apply(f)
        rhs = a.apply(b.apply(f)) - b.apply(a.apply(f))
        assert lhs == rhs


# -- closure ----------------------------------------------------------------------


def test_close_under_bracket_adjoins_translation(ring2):
    M = DerivationModule(
        [Derivation.basis(ring2, 0), Derivation.parse("x*dy", ring2)]
    )
    closed = close_under_bracket(M)
    assert closed.bracket_closed
    assert closed.equals(full_tangent_module(ring2))


def test_close_under_bracket_fixed_points(ring3, surface_module, ring2):
    again = close_under_bracket(surface_module)
    assert again.equals(surface_module)
    single = DerivationModule([Derivation.parse("x*dx", ring2)])
    assert close_under_bracket(single).equals(single)


def test_verify_bracket_closed(ring3, surface_module, ring2):
    assert verify_bracket_closed(surface_module)
    open_module = DerivationModule(
        [Derivation.basis(ring2, 0), Derivation.parse("x*dy", ring2)]
    )
    assert not verify_bracket_closed(open_module)


# -- tangent modules -----------------------------------------------------------------


def test_tangent_module_of_surface(surface_module, theta_basis, ring3):
    span = DerivationModule(theta_basis, ring=ring3)
    assert surface_module.equals(span)
    assert surface_module.bracket_closed


def test_tangent_module_of_zero_and_unit_ideals(ring3):
    full = full_tangent_module(ring3)
    assert logarithmic_derivations(Ideal(ring3)).equals(full)
    assert logarithmic_derivations(Ideal.parse(ring3, "2")).equals(full)


def test_tangent_module_of_coordinate_cross(ring2):
    T = logarithmic_derivations(Ideal.parse(ring2, "x*y"))
    want = DerivationModule(
        [Derivation.parse("x*dx", ring2), Derivation.parse("y*dy", ring2)]
    )
    assert T.equals(want)


def test_tangent_module_soundness(ring3, surface_ideal, surface_module):
    for d in surface_module.generators:
        for g in surface_ideal.generators:
            assert surface_ideal.contains_poly(d.apply(g))


def test_tangent_module_is_projected_syzygy_module(ring3, surface_poly, surface_module):
    # relations among the partials and f, projected away from the cofactor,
    # generate exactly the tangent module of (f)
    from logstrat import syzygies
    from logstrat.modules import FreeModuleElement, Submodule

    columns = [surface_poly.partial(i) for i in range(3)] + [surface_poly]
    relations = syzygies(columns)
    projected = Submodule(
        ring3,
        3,
        [FreeModuleElement(ring3, rel.components[:3]) for rel in relations.generators],
    )
    assert projected.equals(surface_module.submodule())


def test_tangent_module_completeness_against_linear_search(
    ring3, surface_poly, surface_module
):
    from oracles import tangent_fields_principal

    solutions = tangent_fields_principal(surface_poly, coeff_bound=2)
    assert solutions, "the oracle must find the quadratic tangent fields"
    for coeffs in solutions:
        assert surface_module.contains(Derivation(ring3, coeffs))


# -- freeness determinant -----------------------------------------------------------


def test_saito_check_on_surface_basis(theta_basis, surface_poly):
    result = saito_free_check(theta_basis, surface_poly)
    assert result.verdict == "free_with_basis"
    assert result.constant == 1
    assert result.determinant == surface_poly


def test_saito_check_diagonal(ring2):
    f = parse_polynomial("x*y", ring2)
    result = saito_free_check(
        [Derivation.parse("x*dx", ring2), Derivation.parse("y*dy", ring2)], f
    )
    assert result.verdict == "free_with_basis"
    assert result.determinant == f


def test_saito_check_degenerate_matrix(ring2):
    f = parse_polynomial("x*y", ring2)
    dup = [Derivation.parse("x*dx", ring2), Derivation.parse("x*dx", ring2)]
    result = saito_free_check(dup, f)
    assert result.verdict == "inconclusive"
    # a repeated row of constant fields: both preserve (y), det = 0
    rep = [Derivation.basis(ring2, 0), Derivation.basis(ring2, 0)]
    result2 = saito_free_check(rep, parse_polynomial("y", ring2))
    assert result2.verdict == "inconclusive"
    assert result2.determinant.is_zero()


def test_saito_check_preconditions(ring2, ring3, surface_poly):
    with pytest.raises(ValueError):
        saito_free_check([Derivation.basis(ring3, 0)], surface_poly)  # count
    with pytest.raises(ValueError):
        saito_free_check(
            [Derivation.basis(ring2, 0), Derivation.basis(ring2, 1)],
            parse_polynomial("x^2", ring2),
        )  # not square-free
    with pytest.raises(ValueError):
        saito_free_check(
            [Derivation.basis(ring2, 0), Derivation.basis(ring2, 1)],
            parse_polynomial("x*y", ring2),
        )  # d/dx does not preserve (xy)
