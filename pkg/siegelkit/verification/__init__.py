"""
Verification harness: identity runners, the concurrent suite and its reports.
"""

from .reports import VerificationReport
from .identities import (
    GENUS_LIMITS,
    IDENTITY_RUNNERS,
    applicable_genera,
    get_runner,
    identity_rng,
    quasi_periodicity_residual,
)
from .spectral import SpectralTorsionResult, magnetic_laplacian, spectral_torsion_check
from .suite import exit_code, run_config, run_identity, run_suite, to_json_lines

__all__ = [
    # Reports
    "VerificationReport",
    # Identities
    "GENUS_LIMITS",
    "IDENTITY_RUNNERS",
    "applicable_genera",
    "get_runner",
    "identity_rng",
    "quasi_periodicity_residual",
    # Spectral cross-check
    "SpectralTorsionResult",
    "magnetic_laplacian",
    "spectral_torsion_check",
    # Suite
    "exit_code",
    "run_config",
    "run_identity",
    "run_suite",
    "to_json_lines",
]
