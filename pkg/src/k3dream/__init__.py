"""Exact decision procedures for Mori dream K3 surfaces of Picard rank two."""
from .an import (
    AnDecision,
    AnVerdict,
    ambiguity_scan,
    cartan_det,
    closed_form_norm,
    curve_selfint,
    decide_main_an,
    frac_norm,
    inv_diagonal,
    negative_curve_options,
)
from .cases import CaseReport, Check, load_registry, run_all, run_case
from .linalg import QuadricSpec, enumerate_quadric, hermite_normal_form, integer_kernel, orthogonal_complement
from .mori import (
    Decision,
    MdsVerdict,
    RankTwoLattice,
    ResolutionModel,
    effectiveness_test,
    mds_singular_pair,
    mds_smooth,
    mumford_pullback,
    same_discriminant_equivalent,
    second_negative_divisor,
)
from .qform import (
    QForm,
    canonicalize_minus2,
    fundamental_automorph,
    pell4,
    reduced_cycle,
    represent,
    represents_minus_one,
)
from .wps import LedgerProblem, ledger_solve, paut_check, wps_intersection

__version__ = "0.1.0"
