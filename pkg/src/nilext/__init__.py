"""Nilpotency of extensions of Loday algebras, computed exactly over Q."""

__version__ = "0.1.0"

from .algebra import (
    Algebra,
    AlgebraType,
    Chain,
    LinMap,
    abelian_algebra,
    algebra_from_json,
    algebra_to_json,
    check_identity,
    default_series,
    dia_series,
    ideal_closure,
    is_derivation,
    lcs,
    make_algebra,
    mult_ops,
    nilpotency_class,
    nilpotency_index,
    paper_label,
)
from .errors import (
    AlgebraFormatError,
    ArityError,
    ExtensionError,
    HypothesisUnmet,
    IdentityViolation,
    InvalidAlgebra,
    InvalidFactorSystem,
    LiftMismatch,
    NilextError,
    NotAnIdeal,
)
from .exactla import Matrix, Subspace, parse_scalar, format_scalar, span
from .extension import (
    ExtensionData,
    FactorSystem,
    Lift,
    build_extension_algebra,
    extract_factor_system,
    extract_lift,
    lifts_differ_by_adjoints,
    make_extension,
    reconstruct,
    reconstruction_iso,
)
from .kernels import BACKEND
from .theory import (
    GammaContext,
    TheoremReport,
    a_sequence,
    gamma_sequence,
    verify_ak_equals_gamma,
    verify_gamma_lift_independence,
    verify_left_norming,
    verify_main_theorem,
    verify_nil_bounds,
    verify_sandwich,
    verify_series_equality,
)
