import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from logstrat import (
    Derivation,
    DerivationModule,
    Ideal,
    Ring,
    logarithmic_derivations,
    mark_holonomic,
    parse_polynomial,
    stratify,
)

PROBLEM_DIR = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture(scope="session")
def ring3():
    return Ring(("x", "y", "z"))


@pytest.fixture(scope="session")
def ring2():
    return Ring(("x", "y"))


@pytest.fixture(scope="session")
def surface_poly(ring3):
    return parse_polynomial("x*y*(x+y)*(x+y*z)", ring3)


@pytest.fixture(scope="session")
def surface_ideal(ring3, surface_poly):
    return Ideal(ring3, [surface_poly])


@pytest.fixture(scope="session")
def surface_module(surface_ideal):
    return logarithmic_derivations(surface_ideal)


@pytest.fixture(scope="session")
def surface_dag(surface_ideal, surface_module):
    return mark_holonomic(stratify(surface_ideal, surface_module))


@pytest.fixture(scope="session")
def theta_basis(ring3):
    return [
        Derivation.parse("x*dx + y*dy", ring3),
        Derivation.parse("(x+y)*(y*dy - z*dz)", ring3),
        Derivation.parse("(x+y*z)*dz", ring3),
    ]


@pytest.fixture(scope="session")
def foliation_ideal(ring3):
    return Ideal(ring3)


@pytest.fixture(scope="session")
def foliation_module(ring3):
    return DerivationModule(
        [Derivation.basis(ring3, 0), Derivation.basis(ring3, 1)],
        bracket_closed=True,
        ring=ring3,
    )


@pytest.fixture(scope="session")
def foliation_dag(foliation_ideal, foliation_module):
    return mark_holonomic(stratify(foliation_ideal, foliation_module))


@pytest.fixture(scope="session")
def three_lines_ideal(ring2):
    return Ideal.parse(ring2, "x*y*(x+y)")


@pytest.fixture(scope="session")
def three_lines_module(three_lines_ideal):
    return logarithmic_derivations(three_lines_ideal)


@pytest.fixture(scope="session")
def three_lines_dag(three_lines_ideal, three_lines_module):
    return mark_holonomic(stratify(three_lines_ideal, three_lines_module))


@pytest.fixture(scope="session")
def four_planes_ideal(ring3):
    return Ideal.parse(ring3, "x*y*z*(x-y)")


@pytest.fixture(scope="session")
def four_planes_module(four_planes_ideal):
    return logarithmic_derivations(four_planes_ideal)


@pytest.fixture(scope="session")
def four_planes_dag(four_planes_ideal, four_planes_module):
    return mark_holonomic(stratify(four_planes_ideal, four_planes_module))


@pytest.fixture(scope="session")
def problem_dir():
    return PROBLEM_DIR
