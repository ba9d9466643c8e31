"""kaudit: checkers, constants and fuzz harness for Kantorovich-type
operator inequalities of s-convex functions on positive Hermitian
matrices."""

__version__ = "0.1.0"

from .audit import (
    PowerWindowInterval,
    Verdict,
    audit_norm_radius_corollaries,
    feasible_M_for_power,
    gen_matrix,
    gen_unit_vector,
    tightness_search,
    verify_classical_kantorovich,
    verify_diff,
    verify_holder_mccarthy,
    verify_jensen,
    verify_operator_order,
    verify_ratio,
)
from .backend import backend_name
from .bounds import (
    BoundSpec,
    Condition,
    ExtremumResult,
    Regime,
    classify,
    constant_Kf,
    constant_Kf_diff,
    constant_Klog,
    endpoint_diff_bound,
    endpoint_ratio_bound,
    h_eval,
    h_extremum,
    u_eval,
    u_extremum,
)
from .campaign import CampaignReport, FuzzConfig, fuzz_campaign, replay_instance, run_instance
from .errors import (
    ConvergenceError,
    DegenerateError,
    DimensionError,
    DomainError,
    InvalidMatrix,
    KauditError,
    NotPositive,
    PreconditionError,
    RegimeError,
)
from .functions import Log, Power, ScalarFunction, parse_function
from .linalg import (
    HermitianMatrix,
    OperatorSummary,
    SpectralDecomposition,
    SpectralWindow,
    UnitVector,
    apply_function,
    eigensolver_tolerance,
    eigh,
    quad_form,
    summarize,
)
from .sconvex import (
    SConvexityCertificate,
    ThetaEstimate,
    check_s_convex,
    max_feasible_s,
    theta_log,
)

__all__ = [name for name in dir() if not name.startswith("_")]
