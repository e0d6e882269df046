"""logstrat: exact stratification of affine varieties by tangent vector fields.

The package computes, over the rationals: tangent (logarithmic) modules of
ideals, Lie bracket closures, minimal prime decompositions at desk scale,
and the stratification of closed points into defining strata and symbolic
stratum families, with holonomicity marks and frontier verification.
"""

__version__ = "0.1.0"

from .budget import (
    BudgetExceeded,
    limited_steps,
    reset_steps,
    set_step_limit,
    step_limit,
    steps_used,
)
from .derivations import (
    Derivation,
    DerivationModule,
    FreenessCheck,
    close_under_bracket,
    full_tangent_module,
    logarithmic_derivations,
    saito_free_check,
    verify_bracket_closed,
)
from .factor import (
    Factor,
    Factorization,
    exact_divide,
    factorize,
    gcd_polynomials,
    is_squarefree,
    poly_sqrt,
    squarefree_decomposition,
    squarefree_part,
)
from .groebner import (
    Ideal,
    buchberger,
    dimension,
    ideal_contains,
    ideal_equals,
    ideal_quotient,
    module_membership,
    normal_form,
    s_polynomial,
    saturation,
)
from .modules import FreeModuleElement, Submodule, syzygies
from .parse import ParseError, parse_derivation_coefficients, parse_polynomial
from .poly import Polynomial, Ring, coerce_point
from .primes import (
    PRIME_ASSUMED,
    PRIME_CERTIFIED,
    UNKNOWN,
    PrimeCandidate,
    is_prime,
    maximal_ideal_of_point,
    minimal_primes,
    standard_monomials,
)
from .problem import ProblemSpec, parse_problem
from .stratify import (
    DEFINING,
    FAMILY,
    FiberAssignment,
    FrontierReport,
    PointNotOnVariety,
    RankProfile,
    StratificationDAG,
    StratificationError,
    StratNode,
    UncertifiedPrimeError,
    UnresolvedFiber,
    defining_prime_of_point,
    degeneracy_ideal,
    first_integrals,
    generic_rank,
    is_defining,
    is_preserved,
    mark_holonomic,
    preserved_closure,
    rational_points_on,
    sample_rational_points,
    stratify,
    verify_frontier,
)

__all__ = [name for name in dir() if not name.startswith("_")]
