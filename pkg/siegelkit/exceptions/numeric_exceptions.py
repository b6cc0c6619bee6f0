from typing import Union


class SiegelKitException(Exception):
    description = "Numerical error in siegelkit."

    def __init__(self, detail: Union[str, None] = None):
        if not detail:
            detail = self.description
        self.detail = detail
        super().__init__(detail)


class NotSymmetric(SiegelKitException):
    description = "Matrix is not symmetric within tolerance."


class ImaginaryPartNotPositiveDefinite(SiegelKitException):
    description = "Imaginary part of the period matrix is not positive definite."


class NotSymplectic(SiegelKitException):
    description = "Matrix does not preserve the standard symplectic form."


class SingularDenominator(SiegelKitException):
    description = "C tau + D is singular; the matrix is not symplectic or is corrupted."


class DimensionMismatch(SiegelKitException):
    description = "Arguments do not share the same genus."


class RadiusCapExceeded(SiegelKitException):
    description = "Truncation radius exceeds the policy cap."


class InvalidPolicy(SiegelKitException):
    description = "Truncation policy is invalid."


class IndexOutOfRange(SiegelKitException):
    description = "Basis index is out of range."


class WeightMismatch(SiegelKitException):
    description = "Sections carry different tensor powers of the theta bundle."


class GenusTooLargeForQuadrature(SiegelKitException):
    description = "Torus quadrature is only available for g <= 2."


class NonHermitianCoefficients(SiegelKitException):
    description = "Coefficient matrix of a real (1,1)-form must be Hermitian."


class LeftSiegelDomain(SiegelKitException):
    description = "A finite-difference stencil point left the Siegel upper half space."


class ConfigParseError(SiegelKitException):
    description = "Verification config could not be parsed."


class UnknownIdentity(SiegelKitException):
    description = "Unknown verification identity."


class IdentityFailed(SiegelKitException):
    def __init__(self, identity: str, cause: Exception):
        self.identity = identity
        self.cause = cause
        super().__init__(f"{identity}: {type(cause).__name__}: {cause}")
