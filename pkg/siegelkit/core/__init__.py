"""
siegelkit core - numerical geometry of the Siegel space and its abelian varieties.

This package provides:
- The Siegel upper half space, the Sp(2g, Z) action and the Siegel form
- Riemann theta functions with ellipsoid truncation and reproducible summation
- Hermitian metrics and L2 products of theta sections by torus quadrature
- The rho functional, analytic torsion and log-metric bookkeeping
- A finite-difference curvature engine and the curvature verifiers
- Configuration models and JSON encodings shared by all of the above
"""

from .config import FDConfig, QuadratureGrid, SuiteConfig, TruncationPolicy
from .forms import Form11Value, relative_residual
from .siegel import (
    SiegelPoint,
    SymplecticMatrix,
    TangentDirection,
    compose,
    is_positive_definite,
    random_siegel_point,
    random_symplectic,
    random_tangent,
    siegel_form,
    standard_symplectic_form,
    symplectic_act,
    symplectic_generators,
    tangent_pushforward,
    tangent_pushforward_closed_form,
    validate_siegel,
)
from .theta import (
    LatticeVector,
    ThetaCharacteristic,
    ThetaEvalResult,
    factor_of_automorphy,
    level_k_basis,
    second_order_basis,
    section_space_dimension,
    tail_bound,
    theta_eval,
    theta_eval_detailed,
    theta_eval_many,
)
from .metrics import (
    HermitianPairing,
    SectionEvaluator,
    constant_section,
    det_hodge_norm,
    gram_matrix,
    hermitian_pairing,
    hodge_form_gram,
    l2_hodge_gram,
    l2_inner,
    level_k_section,
    pointwise_norm,
    second_order_section,
    theta_section,
)
from .detline import (
    LogMetricForm,
    PolarizationData,
    TorsionReadings,
    TorsionResult,
    bost_torsion,
    hodge_determinant_logmetric,
    hodge_line_logmetric,
    log_quillen_factor_principal,
    polarization_for_power,
    quillen_factor_principal,
    quillen_logmetric,
    rho_invariant_form,
    root_dual_logmetric,
    theta_determinant_logmetric,
    torsion_report,
)
from .curvature import (
    curvature_form_coefficient,
    ddbar_fd,
    ddbar_fd_torus,
    verify_c1_theta_bundle,
    verify_hodge_curvature,
    verify_hodge_line_curvature,
    verify_root_curvature,
    verify_theta_det_curvature,
)
from .serialization import (
    dump_siegel_point,
    dump_symplectic_matrix,
    load_siegel_point,
    load_symplectic_matrix,
)

__all__ = [
    # Configuration
    "FDConfig",
    "QuadratureGrid",
    "SuiteConfig",
    "TruncationPolicy",
    # Forms
    "Form11Value",
    "relative_residual",
    # Siegel space
    "SiegelPoint",
    "SymplecticMatrix",
    "TangentDirection",
    "compose",
    "is_positive_definite",
    "random_siegel_point",
    "random_symplectic",
    "random_tangent",
    "siegel_form",
    "standard_symplectic_form",
    "symplectic_act",
    "symplectic_generators",
    "tangent_pushforward",
    "tangent_pushforward_closed_form",
    "validate_siegel",
    # Theta functions
    "LatticeVector",
    "ThetaCharacteristic",
    "ThetaEvalResult",
    "factor_of_automorphy",
    "level_k_basis",
    "second_order_basis",
    "section_space_dimension",
    "tail_bound",
    "theta_eval",
    "theta_eval_detailed",
    "theta_eval_many",
    # Metrics
    "HermitianPairing",
    "SectionEvaluator",
    "constant_section",
    "det_hodge_norm",
    "gram_matrix",
    "hermitian_pairing",
    "hodge_form_gram",
    "l2_hodge_gram",
    "l2_inner",
    "level_k_section",
    "pointwise_norm",
    "second_order_section",
    "theta_section",
    # Determinant lines
    "LogMetricForm",
    "PolarizationData",
    "TorsionReadings",
    "TorsionResult",
    "bost_torsion",
    "hodge_determinant_logmetric",
    "hodge_line_logmetric",
    "log_quillen_factor_principal",
    "polarization_for_power",
    "quillen_factor_principal",
    "quillen_logmetric",
    "rho_invariant_form",
    "root_dual_logmetric",
    "theta_determinant_logmetric",
    "torsion_report",
    # Curvature
    "curvature_form_coefficient",
    "ddbar_fd",
    "ddbar_fd_torus",
    "verify_c1_theta_bundle",
    "verify_hodge_curvature",
    "verify_hodge_line_curvature",
    "verify_root_curvature",
    "verify_theta_det_curvature",
    # Serialization
    "dump_siegel_point",
    "dump_symplectic_matrix",
    "load_siegel_point",
    "load_symplectic_matrix",
]
