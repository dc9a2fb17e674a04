"""Densities of integers and primes avoiding residue classes, computed exactly."""

from fractions import Fraction

from .arith import Factorization, euler_phi, factorize, find_primitive_root, lcm_many
from .density import (
    DensityReport,
    ModuliList,
    exact_natural_density,
    exact_relative_density_enum,
    exact_relative_density_ie,
    full_verification,
    theorem1_bound,
    theorem2_bound,
)
from .errors import BudgetExceeded, InvariantViolation
from .lattice import (
    LatticeInstance,
    best_translate_block,
    chung_bound,
    count_avoiders_bruteforce,
    count_avoiders_ie,
    verify_lemma,
)
from .sieve import SieveConfig, convergence_report, count_matching, sieve_primes
from .unitgroup import (
    UnitGroupBasis,
    avoider_vector,
    build_basis,
    dlog_vector,
    from_dlog_vector,
    membership_transport,
)

__all__ = [
    "BudgetExceeded",
    "DensityReport",
    "Factorization",
    "Fraction",
    "InvariantViolation",
    "LatticeInstance",
    "ModuliList",
    "SieveConfig",
    "UnitGroupBasis",
    "avoider_vector",
    "best_translate_block",
    "build_basis",
    "chung_bound",
    "convergence_report",
    "count_avoiders_bruteforce",
    "count_avoiders_ie",
    "count_matching",
    "dlog_vector",
    "euler_phi",
    "exact_natural_density",
    "exact_relative_density_enum",
    "exact_relative_density_ie",
    "factorize",
    "find_primitive_root",
    "from_dlog_vector",
    "full_verification",
    "lcm_many",
    "membership_transport",
    "sieve_primes",
    "theorem1_bound",
    "theorem2_bound",
    "verify_lemma",
]
