"""
Finite-difference curvature engine and the verifiers of the curvature identities.
"""

from .stencil import ddbar_fd, ddbar_fd_torus, mixed_wirtinger, richardson_wirtinger
from .conventions import (
    CURVATURE_IDENTITIES,
    curvature_form_coefficient,
    expected_curvature,
    expected_torus_curvature,
    polarization_form,
)
from .verifiers import (
    verify_c1_theta_bundle,
    verify_hodge_curvature,
    verify_hodge_line_curvature,
    verify_root_curvature,
    verify_theta_det_curvature,
)

__all__ = [
    # Stencils
    "ddbar_fd",
    "ddbar_fd_torus",
    "mixed_wirtinger",
    "richardson_wirtinger",
    # Conventions
    "CURVATURE_IDENTITIES",
    "curvature_form_coefficient",
    "expected_curvature",
    "expected_torus_curvature",
    "polarization_form",
    # Verifiers
    "verify_c1_theta_bundle",
    "verify_hodge_curvature",
    "verify_hodge_line_curvature",
    "verify_root_curvature",
    "verify_theta_det_curvature",
]
