"""Exact verification of symmetry data for smooth quintic threefolds."""

from .cyclotomic import (
    Cyclo,
    PrimeEmbedding,
    Rational,
    as_root_of_unity,
    choose_prime,
    lift_conductor,
    reduce_mod,
    root_of_unity,
)
from .diffranks import RankProfile, diff_profile, diff_rank, equivalence_obstruction
from .groups import (
    GeneratedGroup,
    GroupFingerprint,
    ProjectiveClass,
    canonicalize,
    closure,
    fingerprint,
    gorenstein_subgroup,
    is_semi_permutation,
    projective_order,
)
from .invariants import (
    DiagonalAction,
    MonomialSpan,
    invariant_subspace,
    semi_invariant_monomials,
)
from .parsing import format_cyclo, format_poly, parse_matrix, parse_matrix_list, parse_poly
from .pipeline import Options, verify_all, verify_entry
from .poly import (
    Polynomial,
    SquareMatrix,
    apply_matrix,
    char_poly,
    higher_partial,
    partial,
    semi_invariance_factor,
)
from .smoothness import (
    SmoothnessVerdict,
    certify,
    check_power_monomials,
    combinatorial_singularity,
    jacobian_smooth_mod_p,
    support_family_singular,
    verify_witness,
)
from .stabilizers import (
    DiagonalSolutionSet,
    binary_quintic_stabilizer,
    diagonal_solutions,
    f_lift_element,
    f_lift_group,
    semiperm_stabilizer,
)
from .sweeps import (
    SweepReport,
    admissible_primary_orders,
    sweep_elementary_abelian,
    sweep_order25,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
