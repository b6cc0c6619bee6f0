from importlib.metadata import version

__version__ = version("siegelkit")

from .core import (
    FDConfig,
    QuadratureGrid,
    SuiteConfig,
    TruncationPolicy,
    Form11Value,
    SiegelPoint,
    SymplecticMatrix,
    TangentDirection,
    validate_siegel,
    symplectic_act,
    siegel_form,
    tangent_pushforward,
    ThetaCharacteristic,
    LatticeVector,
    theta_eval,
    factor_of_automorphy,
    second_order_basis,
    HermitianPairing,
    SectionEvaluator,
    pointwise_norm,
    l2_inner,
    gram_matrix,
    det_hodge_norm,
    PolarizationData,
    TorsionResult,
    LogMetricForm,
    rho_invariant_form,
    bost_torsion,
    log_quillen_factor_principal,
    quillen_factor_principal,
    root_dual_logmetric,
    ddbar_fd,
    verify_hodge_curvature,
    verify_theta_det_curvature,
    verify_c1_theta_bundle,
    verify_root_curvature,
)
from .verification import VerificationReport, run_suite

__all__ = [
    "__version__",
    # Configuration
    "FDConfig",
    "QuadratureGrid",
    "SuiteConfig",
    "TruncationPolicy",
    # Siegel space
    "Form11Value",
    "SiegelPoint",
    "SymplecticMatrix",
    "TangentDirection",
    "validate_siegel",
    "symplectic_act",
    "siegel_form",
    "tangent_pushforward",
    # Theta functions
    "ThetaCharacteristic",
    "LatticeVector",
    "theta_eval",
    "factor_of_automorphy",
    "second_order_basis",
    # Metrics
    "HermitianPairing",
    "SectionEvaluator",
    "pointwise_norm",
    "l2_inner",
    "gram_matrix",
    "det_hodge_norm",
    # Determinant lines
    "PolarizationData",
    "TorsionResult",
    "LogMetricForm",
    "rho_invariant_form",
    "bost_torsion",
    "log_quillen_factor_principal",
    "quillen_factor_principal",
    "root_dual_logmetric",
    # Curvature
    "ddbar_fd",
    "verify_hodge_curvature",
    "verify_theta_det_curvature",
    "verify_c1_theta_bundle",
    "verify_root_curvature",
    # Verification
    "VerificationReport",
    "run_suite",
]
