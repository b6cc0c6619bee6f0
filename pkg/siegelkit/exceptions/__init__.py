from . import numeric_exceptions
from .numeric_exceptions import (
    SiegelKitException,
    NotSymmetric,
    ImaginaryPartNotPositiveDefinite,
    NotSymplectic,
    SingularDenominator,
    DimensionMismatch,
    RadiusCapExceeded,
    InvalidPolicy,
    IndexOutOfRange,
    WeightMismatch,
    GenusTooLargeForQuadrature,
    NonHermitianCoefficients,
    LeftSiegelDomain,
    ConfigParseError,
    UnknownIdentity,
    IdentityFailed,
)

__all__ = [
    "numeric_exceptions",
    "SiegelKitException",
    "NotSymmetric",
    "ImaginaryPartNotPositiveDefinite",
    "NotSymplectic",
    "SingularDenominator",
    "DimensionMismatch",
    "RadiusCapExceeded",
    "InvalidPolicy",
    "IndexOutOfRange",
    "WeightMismatch",
    "GenusTooLargeForQuadrature",
    "NonHermitianCoefficients",
    "LeftSiegelDomain",
    "ConfigParseError",
    "UnknownIdentity",
    "IdentityFailed",
]
