"""
Riemann theta functions with characteristics and the theta line bundle.

    theta[a, b](z, tau) = sum_m exp(pi i (m+a)^T tau (m+a) + 2 pi i (m+a)^T (z+b))

The series is truncated to a whitened ellipsoid centred at the peak of the
Gaussian envelope (see ``lattice``). The absolute truncation error is at most
``policy.epsilon * exp(pi Im(z)^T Im(tau)^{-1} Im(z))``; that envelope is
reported alongside the value.
"""

import itertools
import logging
import math
from typing import Annotated, Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.functional_validators import field_validator

from ...exceptions import DimensionMismatch, IndexOutOfRange, RadiusCapExceeded
from ...types import ComplexArray, RealArray, VectorLike
from ..config import TruncationPolicy
from ..siegel import SiegelPoint
from .lattice import (
    EllipsoidPoints,
    enumerate_ellipsoid,
    shortest_vector_bound,
    truncation_radius,
    whitening_factor,
)
from .summation import compensated_sum

logger = logging.getLogger(__name__)

DEFAULT_POLICY = TruncationPolicy()
MAX_ENVELOPE_EXPONENT = 700.0
MAX_BATCH_TERMS = 1 << 22


# ------------- Domain types -------------
class ThetaCharacteristic(BaseModel):
    """
    Characteristic (a, b) shifting the theta lattice sum; (0, 0) is Riemann's theta.

    Example:
        >>> ThetaCharacteristic.zero(2).is_half_integer
        True
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: np.ndarray
    b: np.ndarray

    @field_validator("a", "b", mode="before")
    @classmethod
    def coerce_vector(cls, value: Any) -> RealArray:
        array = np.atleast_1d(np.array(value, dtype=np.float64))
        if array.ndim != 1:
            raise DimensionMismatch(f"Characteristic entries must be vectors, got {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("Characteristic entries must be finite")
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def check_lengths(self) -> "ThetaCharacteristic":
        if self.a.shape != self.b.shape:
            raise DimensionMismatch(f"a has length {self.a.size}, b has length {self.b.size}")
        return self

    @classmethod
    def zero(cls, g: int) -> "ThetaCharacteristic":
        return cls(a=np.zeros(g), b=np.zeros(g))

    @property
    def g(self) -> int:
        return int(self.a.size)

    @property
    def is_half_integer(self) -> bool:
        both = np.concatenate([self.a, self.b])
        return bool(np.all(np.isin(both, (0.0, 0.5))))


class LatticeVector(BaseModel):
    """A period gamma = m + tau n of the lattice Z^g + tau Z^g."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    m: np.ndarray
    n: np.ndarray

    @field_validator("m", "n", mode="before")
    @classmethod
    def coerce_integers(cls, value: Any) -> np.ndarray:
        raw = np.atleast_1d(np.array(value))
        if raw.dtype.kind == "f" and not np.all(raw == np.round(raw)):
            raise ValueError("Lattice coordinates must be integers")
        array = raw.astype(np.int64)
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def check_lengths(self) -> "LatticeVector":
        if self.m.shape != self.n.shape:
            raise DimensionMismatch(f"m has length {self.m.size}, n has length {self.n.size}")
        return self

    @property
    def g(self) -> int:
        return int(self.m.size)

    def translation(self, tau: SiegelPoint) -> ComplexArray:
        """Return the complex vector m + tau n."""
        if tau.g != self.g:
            raise DimensionMismatch(f"gamma has genus {self.g}, tau has genus {tau.g}")
        return self.m.astype(np.complex128) + tau.tau @ self.n

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(m=self.m + other.m, n=self.n + other.n)

    @classmethod
    def random(cls, g: int, rng: np.random.Generator, bound: int = 2) -> "LatticeVector":
        return cls(
            m=rng.integers(-bound, bound + 1, size=g),
            n=rng.integers(-bound, bound + 1, size=g),
        )


class ThetaEvalResult(BaseModel):
    """
    A theta value together with its truncation record.

    Attributes:
        value: The truncated lattice sum.
        terms: Number of lattice points summed.
        radius: Whitened truncation radius.
        envelope: ``exp(pi Im(z)^T Im(tau)^{-1} Im(z))``; the error is at most epsilon times this.
    """

    model_config = ConfigDict(frozen=True)

    value: complex
    terms: Annotated[int, Field(ge=0)]
    radius: float
    envelope: float


# ------------- Helpers -------------
def _as_vector(z: VectorLike, g: int) -> ComplexArray:
    array = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if array.shape != (g,):
        raise DimensionMismatch(f"z has shape {array.shape}, expected ({g},)")
    if not np.all(np.isfinite(array)):
        raise ValueError("z must be finite")
    return array


def _check_genus(char: ThetaCharacteristic, tau: SiegelPoint) -> None:
    if char.g != tau.g:
        raise DimensionMismatch(f"Characteristic has genus {char.g}, tau has genus {tau.g}")


def _envelope_exponent(imag: RealArray, centre: RealArray) -> float:
    # pi y^T Y^{-1} y with centre = Y^{-1} y
    exponent = math.pi * float(centre @ imag @ centre)
    if exponent > MAX_ENVELOPE_EXPONENT:
        raise RadiusCapExceeded(f"Gaussian envelope exp({exponent:.1f}) overflows")
    return exponent


def _truncate(
    tau: SiegelPoint, shift: RealArray, policy: TruncationPolicy, spread: float = 0.0
) -> EllipsoidPoints:
    U = whitening_factor(tau.imag)
    rho = shortest_vector_bound(U)
    radius = truncation_radius(tau.g, rho, policy) + spread
    if radius > policy.max_radius:
        raise RadiusCapExceeded(f"Radius {radius:.3f} exceeds cap {policy.max_radius}")
    return enumerate_ellipsoid(U, shift, radius, rho)


def _term_exponents(
    char: ThetaCharacteristic, points: np.ndarray, Z: ComplexArray, tau: SiegelPoint
) -> ComplexArray:
    shifted = points + char.a
    quadratic = np.einsum("ti,ij,tj->t", shifted, tau.tau, shifted)
    linear = shifted @ (Z + char.b).T
    return 1j * math.pi * (quadratic[:, None] + 2.0 * linear)


# ------------- Evaluation -------------
def theta_eval_detailed(
    char: ThetaCharacteristic,
    z: VectorLike,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
) -> ThetaEvalResult:
    """
    Evaluate theta[a, b](z, tau) and report the truncation that produced it.

    Args:
        char: Characteristic (a, b).
        z: Complex g-vector.
        tau: Point of the Siegel space.
        policy: Truncation policy; defaults to epsilon=1e-14, max_radius=40.

    Returns:
        ThetaEvalResult with the value, the number of terms and the radius.

    Raises:
        RadiusCapExceeded: If Im tau is too ill-conditioned or Im z too large.
        InvalidPolicy: If the policy is out of range.
        DimensionMismatch: If the genera of char, z and tau differ.
    """
    policy = policy or DEFAULT_POLICY
    _check_genus(char, tau)
    vector = _as_vector(z, tau.g)
    imag = tau.imag
    centre = np.linalg.solve(imag, vector.imag)
    exponent = _envelope_exponent(imag, centre)
    ellipsoid = _truncate(tau, char.a + centre, policy)
    terms = np.exp(_term_exponents(char, ellipsoid.points, vector[None, :], tau))
    value = complex(compensated_sum(terms)[0]) if ellipsoid.count else 0j
    return ThetaEvalResult(
        value=value,
        terms=ellipsoid.count,
        radius=ellipsoid.radius,
        envelope=math.exp(exponent),
    )


def theta_eval(
    char: ThetaCharacteristic,
    z: VectorLike,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
) -> complex:
    """
    Evaluate the theta function with characteristic at (z, tau).

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> round(theta_eval(ThetaCharacteristic.zero(1), [0.0], validate_siegel([[1j]])).real, 12)
        1.086434811213
    """
    return theta_eval_detailed(char, z, tau, policy).value


def theta_eval_many(
    char: ThetaCharacteristic,
    Z: ComplexArray,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
) -> ComplexArray:
    """
    Evaluate theta[a, b] at every row of Z (shape (N, g)) from one enumeration.

    The lattice points are enumerated once around the midpoint of the recentring
    shifts, with the radius enlarged by their whitened spread, so each row is
    summed over a superset of its own ellipsoid and keeps the same error bound.
    Rows are processed in chunks; every chunk sums its terms in the same
    norm-sorted order.
    """
    policy = policy or DEFAULT_POLICY
    _check_genus(char, tau)
    points_z = np.asarray(Z, dtype=np.complex128).reshape(-1, tau.g)
    if points_z.shape[0] == 0:
        return np.zeros(0, dtype=np.complex128)
    imag = tau.imag
    centres = np.linalg.solve(imag, points_z.imag.T).T
    exponents = math.pi * np.einsum("pi,ij,pj->p", centres, imag, centres)
    if float(np.max(exponents)) > MAX_ENVELOPE_EXPONENT:
        raise RadiusCapExceeded("Gaussian envelope overflows for some evaluation points")

    middle = 0.5 * (centres.min(axis=0) + centres.max(axis=0))
    U = whitening_factor(imag)
    spread = float(np.max(np.linalg.norm((centres - middle) @ U.T, axis=1)))
    ellipsoid = _truncate(tau, char.a + middle, policy, spread=spread)

    chunk = max(1, MAX_BATCH_TERMS // max(ellipsoid.count, 1))
    values = np.empty(points_z.shape[0], dtype=np.complex128)
    for start in range(0, points_z.shape[0], chunk):
        block = points_z[start : start + chunk]
        terms = np.exp(_term_exponents(char, ellipsoid.points, block, tau))
        values[start : start + chunk] = compensated_sum(terms)
    logger.debug(
        "theta_eval_many: points=%d terms=%d radius=%.4f",
        points_z.shape[0],
        ellipsoid.count,
        ellipsoid.radius,
    )
    return values


# ------------- Factor of automorphy -------------
def factor_of_automorphy(gamma: LatticeVector, z: VectorLike, tau: SiegelPoint) -> complex:
    """
    Classical factor e_gamma(z) = exp(-pi i <n, 2z + tau n>) for gamma = m + tau n.

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> gamma = LatticeVector(m=[0], n=[1])
        >>> round(factor_of_automorphy(gamma, [0.0], validate_siegel([[1j]])).real, 9)
        23.140692633
    """
    if gamma.g != tau.g:
        raise DimensionMismatch(f"gamma has genus {gamma.g}, tau has genus {tau.g}")
    vector = _as_vector(z, tau.g)
    n = gamma.n.astype(np.float64)
    return complex(np.exp(-1j * math.pi * (n @ (2.0 * vector + tau.tau @ n))))


# ------------- Bases of sections -------------
def section_space_dimension(g: int, k: int) -> int:
    """Dimension k^g of the space of sections of L^k on a principally polarized torus."""
    if g < 1 or k < 1:
        raise ValueError(f"g and k must be positive, got g={g}, k={k}")
    return k**g


def level_k_characteristic(k: int, i: int, g: int) -> ThetaCharacteristic:
    """
    Characteristic (sigma_i / k, 0), sigma_i the i-th element (1-based) of
    {0..k-1}^g in lexicographic order.

    Raises:
        IndexOutOfRange: If i is outside 1..k^g.
    """
    size = section_space_dimension(g, k)
    if not (1 <= i <= size):
        raise IndexOutOfRange(f"Index {i} outside 1..{size}")
    sigma = next(itertools.islice(itertools.product(range(k), repeat=g), i - 1, None))
    return ThetaCharacteristic(a=np.array(sigma, dtype=np.float64) / k, b=np.zeros(g))


def level_k_normalization(g: int, k: int) -> float:
    """Constant (2k)^{g/4} making every basis section have squared norm det(Im tau)^{-1/2}."""
    return float((2.0 * k) ** (0.25 * g))


def _scaled_point(tau: SiegelPoint, k: int) -> SiegelPoint:
    return SiegelPoint(g=tau.g, tau=k * tau.tau)


def level_k_basis(
    k: int,
    i: int,
    z: VectorLike,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
    normalize: bool = True,
) -> complex:
    """
    The i-th basis section of L^k: theta[sigma_i/k, 0](k z, k tau).

    With ``normalize`` the value carries the constant (2k)^{g/4}, which makes
    the basis orthonormal up to the common factor det(Im tau)^{-1/2}.
    """
    char = level_k_characteristic(k, i, tau.g)
    value = theta_eval(char, k * _as_vector(z, tau.g), _scaled_point(tau, k), policy)
    return value * level_k_normalization(tau.g, k) if normalize else value


def level_k_basis_many(
    k: int,
    i: int,
    Z: ComplexArray,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
    normalize: bool = True,
) -> ComplexArray:
    char = level_k_characteristic(k, i, tau.g)
    values = theta_eval_many(char, k * np.asarray(Z), _scaled_point(tau, k), policy)
    return values * level_k_normalization(tau.g, k) if normalize else values


def second_order_basis(
    i: int,
    z: VectorLike,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
    normalize: bool = True,
) -> complex:
    """
    The i-th of the 2^g basis sections of L^2: theta[sigma_i/2, 0](2z, 2 tau).

    sigma_i runs over {0,1}^g in lexicographic order, i is 1-based. Each section
    satisfies s(z + gamma) = e_gamma(z)^2 s(z) and depends holomorphically on tau.
    With ``normalize`` (default) the value is multiplied by 2^{g/2}, so that
    every basis vector has squared L2 norm det(Im tau)^{-1/2}; the raw series
    is returned otherwise.

    Raises:
        IndexOutOfRange: If i is outside 1..2^g.

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> round(second_order_basis(1, [0.0], validate_siegel([[1j]]), normalize=False).real, 7)
        1.0037349
    """
    return level_k_basis(2, i, z, tau, policy, normalize)
