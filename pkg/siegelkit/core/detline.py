"""
Determinant line bundles over the Siegel space: the rho functional, the
analytic torsion of a polarized abelian variety, Quillen factors, and the
bookkeeping of duals and roots of log-metrics.

A log-metric is the function f = -log ||sigma||^2 of a fixed holomorphic frame
sigma; its curvature is the (1,1)-form ddbar f. Dual metrics negate f and a
k-th root divides it by k, so curvature follows the same arithmetic.
"""

import logging
import math
from fractions import Fraction
from typing import Annotated, Any, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.functional_validators import field_validator

from ..exceptions import DimensionMismatch, NonHermitianCoefficients
from ..types import ComplexArray, LogMetricCallable, MatrixLike
from .siegel import SiegelPoint

logger = logging.getLogger(__name__)

HERMITIAN_RTOL = 1e-12
QUILLEN_RTOL = 1e-12


def saturating_exp(x: float) -> float:
    """exp(x), with overflow mapped to inf (underflow already gives 0.0)."""
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


# ------------- Domain types -------------
class PolarizationData(BaseModel):
    """
    The two rho invariants entering the torsion of (A, omega, L, h).

    Attributes:
        g: Dimension of the abelian variety.
        rho_c1: rho(c1(L, h)).
        rho_omega: rho(omega) of the Kaehler form.
    """

    model_config = ConfigDict(frozen=True)

    g: Annotated[int, Field(ge=1)]
    rho_c1: Annotated[float, Field(gt=0.0, allow_inf_nan=False)]
    rho_omega: Annotated[float, Field(gt=0.0, allow_inf_nan=False)]


class TorsionResult(BaseModel):
    """
    Analytic torsion T and the Quillen factor e^T = h_Q / h_L2.

    The factor saturates to ``inf`` or ``0.0`` outside the float range, so
    comparisons that must hold for every T go through ``log_quillen_factor``.

    Example:
        >>> TorsionResult.from_torsion(0.0).quillen_factor
        1.0
    """

    model_config = ConfigDict(frozen=True)

    torsion: Annotated[float, Field(allow_inf_nan=False)]
    quillen_factor: Annotated[float, Field(ge=0.0)]

    @model_validator(mode="after")
    def check_factor(self) -> "TorsionResult":
        expected = saturating_exp(self.torsion)
        if expected == 0.0 or math.isinf(expected):
            consistent = self.quillen_factor == expected
        else:
            consistent = abs(self.quillen_factor - expected) <= QUILLEN_RTOL * expected
        if not consistent:
            raise ValueError(
                f"quillen_factor {self.quillen_factor} != exp({self.torsion}) = {expected}"
            )
        return self

    @property
    def log_quillen_factor(self) -> float:
        return self.torsion

    @classmethod
    def from_torsion(cls, torsion: float) -> "TorsionResult":
        return cls(torsion=torsion, quillen_factor=saturating_exp(torsion))


class TorsionReadings(BaseModel):
    """
    Torsion of the theta bundle L and of its square, both independent of tau.

    Attributes:
        g: Dimension.
        line: T for (L, h), which equals (g/2) log 2 pi.
        square: T for (L^2, h^2), which equals 2^{g-1} g log pi.
    """

    model_config = ConfigDict(frozen=True)

    g: int
    line: TorsionResult
    square: TorsionResult


class LogMetricForm(BaseModel):
    """
    f = -log ||sigma||^2 for a holomorphic frame sigma of a line bundle over the Siegel space.

    Attributes:
        function: Maps a symmetric complex g x g matrix to a real number.
        g: Genus.
        power: Tensor power of the reference bundle that the frame lives in.
        dual: Whether the metric is the dual of the one the frame was built from.
        label: Name used in logs and reports.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    function: LogMetricCallable
    g: Annotated[int, Field(ge=1)]
    power: Fraction = Fraction(1)
    dual: bool = False
    label: str = "f"

    @field_validator("power", mode="before")
    @classmethod
    def coerce_power(cls, value: Any) -> Fraction:
        return Fraction(value)

    def __call__(self, tau: Union[SiegelPoint, ComplexArray]) -> float:
        matrix = tau.tau if isinstance(tau, SiegelPoint) else np.asarray(tau)
        return float(self.function(matrix))

    def shifted(self, constant: float) -> "LogMetricForm":
        """Return f + constant, the log-metric of the metric scaled by exp(-constant)."""
        base = self.function
        return self.model_copy(update={"function": lambda tau: base(tau) + constant})


# ------------- rho functional -------------
def rho_invariant_form(g: int, coefficient_matrix: MatrixLike, tau: SiegelPoint) -> float:
    """
    rho(alpha) = (1/g!) integral of alpha^g over the torus, for translation-invariant alpha.

    ``alpha = (i/2) sum H_ij dz_i ^ dz-bar_j`` with Hermitian H. The principal
    polarization omega_tau has H = (Im tau)^{-1} and rho = 1, and rho is the
    ratio of determinants, rho(alpha) = det(H) det(Im tau).

    Raises:
        NonHermitianCoefficients: If H differs from its conjugate transpose.
        DimensionMismatch: If H is not g x g or tau has another genus.

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> tau = validate_siegel([[2j]])
        >>> rho_invariant_form(1, 2 * tau.imag_inverse, tau)
        2.0
    """
    H = np.atleast_2d(np.asarray(coefficient_matrix, dtype=np.complex128))
    if H.shape != (g, g) or tau.g != g:
        raise DimensionMismatch(f"H has shape {H.shape}, tau has genus {tau.g}, g={g}")
    scale = float(np.max(np.abs(H))) if H.size else 0.0
    if scale and float(np.max(np.abs(H - H.conj().T))) > HERMITIAN_RTOL * scale:
        raise NonHermitianCoefficients()
    return float(np.real(np.linalg.det(H)) * tau.det_imag)


def polarization_for_power(g: int, k: int, tau: SiegelPoint) -> PolarizationData:
    """rho data of (L^k, h^k) with the flat Kaehler form omega_tau: rho(c1) = k^g, rho(omega) = 1."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    P = tau.imag_inverse
    return PolarizationData(
        g=g,
        rho_c1=rho_invariant_form(g, k * P, tau),
        rho_omega=rho_invariant_form(g, P, tau),
    )


# ------------- Torsion and Quillen factors -------------
def bost_torsion(p: PolarizationData) -> TorsionResult:
    """
    T = -(1/2) rho(c1) log(rho(c1) / ((2 pi)^g rho(omega))).

    Example:
        >>> round(bost_torsion(PolarizationData(g=1, rho_c1=1.0, rho_omega=1.0)).torsion, 10)
        0.9189385332
    """
    ratio = p.rho_c1 / ((2.0 * math.pi) ** p.g * p.rho_omega)
    torsion = -0.5 * p.rho_c1 * math.log(ratio)
    logger.debug(
        "bost_torsion: g=%d rho_c1=%.6g rho_omega=%.6g T=%.15g",
        p.g,
        p.rho_c1,
        p.rho_omega,
        torsion,
    )
    return TorsionResult.from_torsion(torsion)


def log_quillen_factor_principal(g: int) -> float:
    """(g/2) log 2 pi, the torsion of a principally polarized (A, omega, L, h)."""
    if g < 1:
        raise ValueError(f"g must be positive, got {g}")
    return 0.5 * g * math.log(2.0 * math.pi)


def quillen_factor_principal(g: int) -> float:
    """(2 pi)^{g/2}, the ratio h_Q / h_L2 for a principally polarized (A, omega, L, h)."""
    return saturating_exp(log_quillen_factor_principal(g))


def torsion_report(g: int) -> TorsionReadings:
    """Both torsion values: for L itself and for L^2 (whose sections span lambda(Theta^2))."""
    principal = PolarizationData(g=g, rho_c1=1.0, rho_omega=1.0)
    square = PolarizationData(g=g, rho_c1=float(2**g), rho_omega=1.0)
    return TorsionReadings(g=g, line=bost_torsion(principal), square=bost_torsion(square))


# ------------- Log-metrics -------------
def _log_det_imag(tau: ComplexArray) -> float:
    sign, logdet = np.linalg.slogdet(np.asarray(tau).imag)
    if sign <= 0:
        return math.nan
    return float(logdet)


def root_dual_logmetric(f: LogMetricForm, k: int) -> LogMetricForm:
    """
    Log-metric of the k-th root of the dual metric: f' = -f / k, dual flag toggled.

    Curvature transforms as R' = -R / k.
    """
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    base = f.function
    return LogMetricForm(
        function=lambda tau: -base(tau) / k,
        g=f.g,
        power=f.power / k,
        dual=not f.dual,
        label=f"root{k}(dual {f.label})" if k > 1 else f"dual {f.label}",
    )


def hodge_determinant_logmetric(g: int) -> LogMetricForm:
    """-log ||dz_1 ^ ... ^ dz_g||^2 = -log(2^g det Im tau), the L2 metric on det E."""
    offset = g * math.log(2.0)
    return LogMetricForm(
        function=lambda tau: -(offset + _log_det_imag(tau)), g=g, label="det E"
    )


def hodge_line_logmetric(g: int) -> LogMetricForm:
    """The dual metric on (det E)^*, whose curvature is (i/2) omega_S."""
    return root_dual_logmetric(hodge_determinant_logmetric(g), 1)


def theta_determinant_logmetric(g: int) -> LogMetricForm:
    """-log (det Im tau)^{2^{g-1}}, the L2 metric of v* on lambda(Theta^2) = (det E)^{-2^{g-1}}."""
    exponent = 2 ** (g - 1)
    return LogMetricForm(
        function=lambda tau: -exponent * _log_det_imag(tau),
        g=g,
        power=exponent,
        label="lambda(Theta^2)",
    )


def quillen_logmetric(f: LogMetricForm, torsion: float) -> LogMetricForm:
    """Log-metric of h_Q = e^T h_L2, i.e. f - T."""
    return f.shifted(-torsion)
