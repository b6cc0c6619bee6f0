"""
The Siegel upper half space, the action of Sp(2g, Z) and the Siegel form.

A point of the Siegel space is a symmetric complex g x g matrix tau whose
imaginary part is positive definite. Sp(2g, Z) acts by
``tau -> (A tau + B)(C tau + D)^{-1}`` and leaves the Kaehler form

    omega_S = (i/2) (Im tau)^{ik} (Im tau)^{mj} dtau_{km} ^ dtau-bar_{ij}

invariant, where raised indices denote entries of ``(Im tau)^{-1}``.

All values are immutable after construction and every operation is a pure
function of its inputs.
"""

import logging
from typing import Any

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, model_validator
from pydantic.functional_validators import field_validator

from ..exceptions import (
    DimensionMismatch,
    ImaginaryPartNotPositiveDefinite,
    NotSymmetric,
    NotSymplectic,
    SingularDenominator,
)
from ..types import ComplexArray, MatrixLike, RealArray
from .forms import Form11Value

logger = logging.getLogger(__name__)

SYMMETRY_RTOL = 1e-12
SYMPLECTIC_ATOL = 1e-10
PUSHFORWARD_SYMMETRY_TOL = 1e-8
PIVOT_RTOL = 1e-12


# ------------- Matrix predicates -------------
def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _square_complex(value: Any) -> ComplexArray:
    array = np.array(value, dtype=np.complex128)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise DimensionMismatch(f"Expected a square matrix, got shape {array.shape}")
    return array


def symmetry_defect(matrix: ComplexArray) -> float:
    """Return max |M_ij - M_ji| relative to max |M_ij| (0 for the zero matrix)."""
    scale = float(np.max(np.abs(matrix))) if matrix.size else 0.0
    defect = float(np.max(np.abs(matrix - matrix.T))) if matrix.size else 0.0
    if scale == 0.0:
        return defect
    return defect / scale


def is_positive_definite(matrix: RealArray) -> bool:
    """
    Test positive definiteness of a real symmetric matrix by Cholesky factorization.

    The factorization must succeed and its smallest pivot must exceed
    ``1e-12 * trace / g``.

    Example:
        >>> is_positive_definite(np.eye(2))
        True
        >>> is_positive_definite(-np.eye(1))
        False
    """
    g = matrix.shape[0]
    trace = float(np.trace(matrix))
    if not np.all(np.isfinite(matrix)) or trace <= 0.0:
        return False
    try:
        lower = scipy.linalg.cholesky(matrix, lower=True)
    except np.linalg.LinAlgError:
        return False
    pivots = np.diag(lower) ** 2
    return bool(np.min(pivots) > PIVOT_RTOL * trace / g)


def standard_symplectic_form(g: int) -> RealArray:
    """Return J = [[0, I], [-I, 0]] of size 2g."""
    identity = np.eye(g)
    zero = np.zeros((g, g))
    return np.block([[zero, identity], [-identity, zero]])


# ------------- Domain types -------------
class SiegelPoint(BaseModel):
    """
    A validated point tau of the Siegel upper half space of genus g.

    Construction never repairs its input: an asymmetric matrix raises
    ``NotSymmetric`` and a matrix whose imaginary part is not positive definite
    raises ``ImaginaryPartNotPositiveDefinite``.

    Attributes:
        g: Genus, the size of the period matrix.
        tau: Read-only complex g x g period matrix.

    Example:
        >>> point = validate_siegel(1j * np.eye(2))
        >>> point.g
        2
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: int
    tau: np.ndarray

    @field_validator("tau", mode="before")
    @classmethod
    def coerce_tau(cls, value: Any) -> ComplexArray:
        return _frozen(_square_complex(value))

    @model_validator(mode="after")
    def check_siegel(self) -> "SiegelPoint":
        if self.tau.shape != (self.g, self.g):
            raise DimensionMismatch(
                f"tau has shape {self.tau.shape}, expected ({self.g}, {self.g})"
            )
        if not np.all(np.isfinite(self.tau)):
            raise NotSymmetric("tau has non-finite entries")
        defect = symmetry_defect(self.tau)
        if defect > SYMMETRY_RTOL:
            raise NotSymmetric(f"tau is not symmetric (relative defect {defect:.3e})")
        if not is_positive_definite(self.tau.imag):
            raise ImaginaryPartNotPositiveDefinite()
        return self

    @property
    def real(self) -> RealArray:
        return np.ascontiguousarray(self.tau.real)

    @property
    def imag(self) -> RealArray:
        return np.ascontiguousarray(self.tau.imag)

    @property
    def imag_inverse(self) -> RealArray:
        """Return (Im tau)^{-1}, the matrix of raised indices."""
        inverse = np.linalg.inv(self.imag)
        return 0.5 * (inverse + inverse.T)

    @property
    def det_imag(self) -> float:
        return float(np.linalg.det(self.imag))


class SymplecticMatrix(BaseModel):
    """
    An element M = [[A, B], [C, D]] of Sp(2g, R), usually with integer entries.

    Attributes:
        g: Genus.
        A, B, C, D: Real g x g blocks.

    Example:
        >>> inversion = SymplecticMatrix.from_matrix([[0, -1], [1, 0]])
        >>> symplectic_act(inversion, validate_siegel([[1j]])).tau
        array([[0.+1.j]])
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: int
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    @field_validator("A", "B", "C", "D", mode="before")
    @classmethod
    def coerce_block(cls, value: Any) -> RealArray:
        array = np.array(value, dtype=np.float64)
        if array.ndim == 0:
            array = array.reshape(1, 1)
        return _frozen(array)

    @model_validator(mode="after")
    def check_symplectic(self) -> "SymplecticMatrix":
        for name in ("A", "B", "C", "D"):
            if getattr(self, name).shape != (self.g, self.g):
                raise DimensionMismatch(f"Block {name} must be {self.g}x{self.g}")
        residual = self.symplectic_residual()
        if residual > SYMPLECTIC_ATOL:
            raise NotSymplectic(f"M^T J M - J has entry of size {residual:.3e}")
        return self

    @classmethod
    def from_matrix(cls, matrix: MatrixLike) -> "SymplecticMatrix":
        full = np.array(matrix, dtype=np.float64)
        if full.ndim != 2 or full.shape[0] != full.shape[1] or full.shape[0] % 2:
            raise DimensionMismatch(f"Expected a 2g x 2g matrix, got {full.shape}")
        g = full.shape[0] // 2
        return cls(
            g=g, A=full[:g, :g], B=full[:g, g:], C=full[g:, :g], D=full[g:, g:]
        )

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        return cls.from_matrix(np.eye(2 * g))

    @property
    def matrix(self) -> RealArray:
        return np.block([[self.A, self.B], [self.C, self.D]])

    def symplectic_residual(self) -> float:
        full = self.matrix
        J = standard_symplectic_form(self.g)
        return float(np.max(np.abs(full.T @ J @ full - J)))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return compose(self, other)

    def inverse(self) -> "SymplecticMatrix":
        """Return M^{-1} = -J M^T J."""
        J = standard_symplectic_form(self.g)
        return SymplecticMatrix.from_matrix(-J @ self.matrix.T @ J)


class TangentDirection(BaseModel):
    """
    A holomorphic tangent vector to the Siegel space: a symmetric complex matrix.

    Attributes:
        g: Genus.
        X: Read-only complex symmetric g x g matrix.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    g: int
    X: np.ndarray

    @field_validator("X", mode="before")
    @classmethod
    def coerce_direction(cls, value: Any) -> ComplexArray:
        return _frozen(_square_complex(value))

    @model_validator(mode="after")
    def check_direction(self) -> "TangentDirection":
        if self.X.shape != (self.g, self.g):
            raise DimensionMismatch(f"X has shape {self.X.shape}, expected g={self.g}")
        if not np.all(np.isfinite(self.X)):
            raise NotSymmetric("X has non-finite entries")
        defect = symmetry_defect(self.X)
        if defect > SYMMETRY_RTOL:
            raise NotSymmetric(f"X is not symmetric (relative defect {defect:.3e})")
        return self

    @classmethod
    def from_matrix(cls, matrix: MatrixLike) -> "TangentDirection":
        array = _square_complex(matrix)
        return cls(g=array.shape[0], X=array)

    @classmethod
    def zero(cls, g: int) -> "TangentDirection":
        return cls(g=g, X=np.zeros((g, g), dtype=np.complex128))


# ------------- Operations -------------
def validate_siegel(tau: MatrixLike) -> SiegelPoint:
    """
    Validate a square complex matrix as a point of the Siegel upper half space.

    Args:
        tau: Square complex matrix (a scalar is read as a 1 x 1 matrix).

    Returns:
        The validated, read-only SiegelPoint.

    Raises:
        NotSymmetric: If tau has a non-finite entry or differs from its transpose
            beyond 1e-12 relative.
        ImaginaryPartNotPositiveDefinite: If the Cholesky factorization of Im tau fails.

    Example:
        >>> validate_siegel([[1j, 2], [0, 1j]])
        Traceback (most recent call last):
        ...
        siegelkit.exceptions.numeric_exceptions.NotSymmetric: tau is not symmetric (relative defect 1.000e+00)
    """
    array = _square_complex(tau)
    return SiegelPoint(g=array.shape[0], tau=array)


def compose(first: SymplecticMatrix, second: SymplecticMatrix) -> SymplecticMatrix:
    """Return the product first @ second."""
    if first.g != second.g:
        raise DimensionMismatch(f"Cannot compose genus {first.g} with genus {second.g}")
    return SymplecticMatrix.from_matrix(first.matrix @ second.matrix)


def _act_on_matrix(M: SymplecticMatrix, tau: ComplexArray) -> ComplexArray:
    numerator = M.A @ tau + M.B
    denominator = M.C @ tau + M.D
    try:
        condition = np.linalg.cond(denominator)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise SingularDenominator() from exc
    if not np.isfinite(condition) or condition > 1e13:
        raise SingularDenominator(f"C tau + D has condition number {condition:.3e}")
    # X = N D^{-1}  <=>  D^T X^T = N^T
    return np.linalg.solve(denominator.T, numerator.T).T


def symplectic_act(M: SymplecticMatrix, tau: SiegelPoint) -> SiegelPoint:
    """
    Apply tau -> (A tau + B)(C tau + D)^{-1}.

    Args:
        M: Symplectic matrix of the same genus as tau.
        tau: Point of the Siegel space.

    Returns:
        The image point, validated.

    Raises:
        DimensionMismatch: If M and tau have different genus.
        SingularDenominator: If C tau + D is numerically singular.

    Example:
        >>> translation = SymplecticMatrix.from_matrix([[1, 1], [0, 1]])
        >>> symplectic_act(translation, validate_siegel([[1j]])).tau
        array([[1.+1.j]])
    """
    if M.g != tau.g:
        raise DimensionMismatch(f"M has genus {M.g}, tau has genus {tau.g}")
    image = _act_on_matrix(M, tau.tau)
    # the image is symmetric in exact arithmetic; remove rounding asymmetry
    image = 0.5 * (image + image.T)
    return SiegelPoint(g=tau.g, tau=image)


def siegel_form(tau: SiegelPoint, X: TangentDirection, Y: TangentDirection) -> Form11Value:
    """
    Evaluate the Siegel form omega_S at tau on the ordered pair (X, Y).

    Computes ``(i/2) sum P_ik P_mj X_km conj(Y_ij)`` with ``P = (Im tau)^{-1}``
    and unrestricted sums over all index pairs.

    Raises:
        DimensionMismatch: If the arguments do not share g.

    Example:
        >>> one = TangentDirection.from_matrix([[1.0]])
        >>> siegel_form(validate_siegel([[1j]]), one, one).value
        0.5j
    """
    if not (tau.g == X.g == Y.g):
        raise DimensionMismatch(f"tau, X, Y have genus {tau.g}, {X.g}, {Y.g}")
    P = tau.imag_inverse
    total = np.einsum("ik,mj,km,ij->", P, P, X.X, np.conj(Y.X))
    return Form11Value(value=0.5j * complex(total))


def tangent_pushforward(
    M: SymplecticMatrix, tau: SiegelPoint, X: TangentDirection
) -> TangentDirection:
    """
    Differential of ``symplectic_act(M, .)`` at tau applied to X.

    The action is holomorphic, so the four-point complex stencil

        [f(tau+hX) - f(tau-hX) - i f(tau+ihX) + i f(tau-ihX)] / (4h)

    cancels the h^2 and h^3 terms and leaves an O(h^4) error. The step is scaled
    so that every stencil point stays inside the Siegel space.

    Raises:
        SingularDenominator: If C tau + D is singular at a stencil point.
        NotSymmetric: If the computed differential is asymmetric beyond 1e-8.
    """
    if not (M.g == tau.g == X.g):
        raise DimensionMismatch(f"M, tau, X have genus {M.g}, {tau.g}, {X.g}")
    size = float(np.max(np.abs(X.X)))
    if size == 0.0:
        return TangentDirection.zero(tau.g)
    smallest = float(np.min(np.linalg.eigvalsh(tau.imag)))
    h = 1e-3 * smallest / size
    base = tau.tau

    def act(point: ComplexArray) -> ComplexArray:
        return _act_on_matrix(M, point)

    derivative = (
        act(base + h * X.X)
        - act(base - h * X.X)
        - 1j * act(base + 1j * h * X.X)
        + 1j * act(base - 1j * h * X.X)
    ) / (4.0 * h)
    scale = max(1.0, float(np.max(np.abs(derivative))))
    defect = float(np.max(np.abs(derivative - derivative.T))) / scale
    if defect > PUSHFORWARD_SYMMETRY_TOL:
        raise NotSymmetric(f"Pushforward is asymmetric (defect {defect:.3e})")
    logger.debug("tangent_pushforward step=%.3e symmetry defect=%.3e", h, defect)
    return TangentDirection(g=tau.g, X=0.5 * (derivative + derivative.T))


def tangent_pushforward_closed_form(
    M: SymplecticMatrix, tau: SiegelPoint, X: TangentDirection
) -> TangentDirection:
    """Closed form (C tau + D)^{-T} X (C tau + D)^{-1}, kept as a cross-check."""
    if not (M.g == tau.g == X.g):
        raise DimensionMismatch(f"M, tau, X have genus {M.g}, {tau.g}, {X.g}")
    denominator = M.C @ tau.tau + M.D
    inverse = np.linalg.inv(denominator)
    image = inverse.T @ X.X @ inverse
    return TangentDirection(g=tau.g, X=0.5 * (image + image.T))


# ------------- Generators and sampling -------------
def _unit(g: int, i: int, j: int) -> RealArray:
    E = np.zeros((g, g))
    E[i, j] = 1.0
    return E


def symplectic_generators(g: int) -> list[SymplecticMatrix]:
    """
    Generators of Sp(2g, Z): elementary translations, the inversion, and the
    block rotations diag(U, U^{-T}) for elementary unipotent U.
    """
    identity = np.eye(g)
    zero = np.zeros((g, g))
    generators: list[SymplecticMatrix] = []
    for i in range(g):
        for j in range(i, g):
            S = _unit(g, i, j) + (_unit(g, j, i) if i != j else 0.0)
            generators.append(SymplecticMatrix(g=g, A=identity, B=S, C=zero, D=identity))
    generators.append(SymplecticMatrix(g=g, A=zero, B=-identity, C=identity, D=zero))
    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            U = identity + _unit(g, i, j)
            generators.append(
                SymplecticMatrix(g=g, A=U, B=zero, C=zero, D=np.linalg.inv(U).T)
            )
    return generators


def random_symplectic(
    g: int, rng: np.random.Generator, length: int = 3
) -> SymplecticMatrix:
    """Product of ``length`` generators or their inverses drawn from ``rng``."""
    generators = symplectic_generators(g)
    pool = generators + [generator.inverse() for generator in generators]
    product = SymplecticMatrix.identity(g)
    for _ in range(length):
        product = compose(product, pool[int(rng.integers(len(pool)))])
    return product


def random_siegel_point(
    g: int,
    rng: np.random.Generator,
    eigenvalue_range: tuple[float, float] = (0.7, 1.6),
    real_scale: float = 0.5,
) -> SiegelPoint:
    """
    Draw a well-conditioned point: Re tau entries in [-1/2, 1/2], Im tau with
    eigenvalues in ``eigenvalue_range``.
    """
    real = rng.uniform(-real_scale, real_scale, size=(g, g))
    real = np.triu(real) + np.triu(real, 1).T
    Q, _ = np.linalg.qr(rng.standard_normal((g, g)))
    eigenvalues = rng.uniform(*eigenvalue_range, size=g)
    imag = Q @ np.diag(eigenvalues) @ Q.T
    imag = 0.5 * (imag + imag.T)
    return SiegelPoint(g=g, tau=real + 1j * imag)


def random_tangent(g: int, rng: np.random.Generator) -> TangentDirection:
    """Symmetric matrix with standard complex Gaussian entries."""
    raw = rng.standard_normal((g, g)) + 1j * rng.standard_normal((g, g))
    return TangentDirection(g=g, X=0.5 * (raw + raw.T))
