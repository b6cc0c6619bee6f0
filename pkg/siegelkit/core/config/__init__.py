"""
Configuration classes for siegelkit.

This module provides centralized access to the configuration classes used by the
numerical kernels (truncation, finite differences, quadrature) and by the
verification suite.
"""

from .numeric_configs import TruncationPolicy, FDConfig, QuadratureGrid
from .suite_configs import (
    SuiteConfig,
    DEFAULT_IDENTITIES,
    OPTIONAL_IDENTITIES,
    KNOWN_IDENTITIES,
    DEFAULT_TOLERANCES,
)

__all__ = [
    # Numerical kernel configurations
    "TruncationPolicy",
    "FDConfig",
    "QuadratureGrid",
    # Suite configuration
    "SuiteConfig",
    "DEFAULT_IDENTITIES",
    "OPTIONAL_IDENTITIES",
    "KNOWN_IDENTITIES",
    "DEFAULT_TOLERANCES",
]
