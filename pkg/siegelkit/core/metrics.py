"""
Hermitian metrics on the theta line bundle and L2 products of its sections.

On the torus C^g / (Z^g + tau Z^g) a section of L^k is a holomorphic function
with s(z + gamma) = e_gamma(z)^k s(z). Its pointwise norm is

    ||s(z)|| = |s(z)| exp(-k pi H(y, y)),    y = Im z,

with H(z, w) = conj(z)^T (Im tau)^{-1} w, and L2 products integrate against the
translation-invariant volume form of total mass one. In the coordinates
z = u + tau v, (u, v) in [0, 1)^{2g}, that measure is the uniform probability
measure, and H(y, y) = v^T Im(tau) v.
"""

import logging
import math
from typing import Annotated, Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..exceptions import DimensionMismatch, GenusTooLargeForQuadrature, WeightMismatch
from ..types import ComplexArray, RealArray, SectionCallable, VectorLike
from .config import QuadratureGrid, TruncationPolicy
from .siegel import SiegelPoint
from .theta import (
    LatticeVector,
    ThetaCharacteristic,
    factor_of_automorphy,
    level_k_basis_many,
    pairwise_tree_sum,
    section_space_dimension,
    theta_eval_many,
)

logger = logging.getLogger(__name__)

MAX_QUADRATURE_GENUS = 2


# ------------- Hermitian form -------------
class HermitianPairing(BaseModel):
    """
    H(z, w) = sum_ij (Im tau)^{-1}_ij conj(z_i) w_j, conjugate-linear in z.

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> HermitianPairing(tau=validate_siegel([[2j]]))([1j], [1j])
        (0.5+0j)
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: SiegelPoint

    def __call__(self, z: VectorLike, w: VectorLike) -> complex:
        left = np.asarray(z, dtype=np.complex128)
        right = np.asarray(w, dtype=np.complex128)
        if left.shape != (self.tau.g,) or right.shape != (self.tau.g,):
            raise DimensionMismatch(f"Vectors must have length {self.tau.g}")
        return complex(np.conj(left) @ self.tau.imag_inverse @ right)

    def quadratic(self, y: RealArray) -> RealArray:
        """H(y, y) for real rows y of shape (N, g)."""
        rows = np.asarray(y, dtype=np.float64).reshape(-1, self.tau.g)
        return np.einsum("pi,ij,pj->p", rows, self.tau.imag_inverse, rows)


def hermitian_pairing(tau: SiegelPoint, z: VectorLike, w: VectorLike) -> complex:
    return HermitianPairing(tau=tau)(z, w)


# ------------- Sections -------------
class SectionEvaluator(BaseModel):
    """
    A holomorphic section of L^k in the classical trivialization.

    Attributes:
        function: Maps an (N, g) array of points to their N complex values.
        weight_power: The tensor power k.
        g: Genus of the torus.
        label: Human readable name used in logs and reports.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    function: SectionCallable
    weight_power: Annotated[int, Field(ge=0)]
    g: Annotated[int, Field(ge=1)]
    label: str = "section"

    def __call__(self, z: Any) -> ComplexArray:
        points = np.asarray(z, dtype=np.complex128).reshape(-1, self.g)
        return np.asarray(self.function(points), dtype=np.complex128).reshape(-1)

    def value(self, z: VectorLike) -> complex:
        return complex(self(z)[0])

    def spot_check(
        self,
        tau: SiegelPoint,
        rng: np.random.Generator,
        samples: int = 5,
        bound: int = 2,
    ) -> float:
        """
        Largest section-property defect over random (z, gamma), in the metric of L^k.

        The defect |s(z + gamma) - e_gamma(z)^k s(z)| is multiplied by the weight
        exp(-k pi H(y', y')) at the translated point y' = Im(z + gamma).
        """
        pairing = HermitianPairing(tau=tau)
        worst = 0.0
        for _ in range(samples):
            z = tau.tau @ rng.uniform(-0.5, 0.5, size=self.g) + rng.uniform(-0.5, 0.5, size=self.g)
            gamma = LatticeVector.random(self.g, rng, bound)
            moved = z + gamma.translation(tau)
            factor = factor_of_automorphy(gamma, z, tau) ** self.weight_power
            defect = abs(self.value(moved) - factor * self.value(z))
            weight = math.exp(-self.weight_power * math.pi * float(pairing.quadratic(moved.imag)[0]))
            worst = max(worst, defect * weight)
        return worst


def theta_section(tau: SiegelPoint, policy: Optional[TruncationPolicy] = None) -> SectionEvaluator:
    """Riemann's theta function as a section of L (weight 1)."""
    char = ThetaCharacteristic.zero(tau.g)
    return SectionEvaluator(
        function=lambda Z: theta_eval_many(char, Z, tau, policy),
        weight_power=1,
        g=tau.g,
        label="theta",
    )


def level_k_section(
    k: int,
    i: int,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
    normalize: bool = True,
) -> SectionEvaluator:
    return SectionEvaluator(
        function=lambda Z: level_k_basis_many(k, i, Z, tau, policy, normalize),
        weight_power=k,
        g=tau.g,
        label=f"theta[{k}]_{i}",
    )


def second_order_section(
    i: int,
    tau: SiegelPoint,
    policy: Optional[TruncationPolicy] = None,
    normalize: bool = True,
) -> SectionEvaluator:
    """The i-th second-order theta function as a section of L^2."""
    return level_k_section(2, i, tau, policy, normalize)


def constant_section(g: int) -> SectionEvaluator:
    """The constant function 1, a section of the trivial bundle (weight 0)."""
    return SectionEvaluator(
        function=lambda Z: np.ones(Z.shape[0], dtype=np.complex128),
        weight_power=0,
        g=g,
        label="one",
    )


# ------------- Pointwise and L2 norms -------------
def pointwise_norm(
    s: SectionEvaluator,
    z: VectorLike,
    tau: SiegelPoint,
    weight_power: Optional[int] = None,
) -> float:
    """
    Pointwise norm |s(z)| exp(-k pi H(y, y)) in the metric h^k.

    Args:
        s: Section of L^k.
        z: Complex g-vector.
        tau: Period matrix the section belongs to.
        weight_power: Power of the metric to use; must equal ``s.weight_power`` if given.

    Raises:
        WeightMismatch: If weight_power differs from the section's power.
        DimensionMismatch: If the genera differ.

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> pointwise_norm(constant_section(1), [0.3 + 2j], validate_siegel([[1j]]))
        1.0
    """
    if weight_power is not None and weight_power != s.weight_power:
        raise WeightMismatch(
            f"Section has weight {s.weight_power}, metric has weight {weight_power}"
        )
    if s.g != tau.g:
        raise DimensionMismatch(f"Section has genus {s.g}, tau has genus {tau.g}")
    point = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if point.shape != (tau.g,):
        raise DimensionMismatch(f"z has shape {point.shape}, expected ({tau.g},)")
    h = float(HermitianPairing(tau=tau).quadratic(point.imag)[0])
    return float(abs(s.value(point)) * math.exp(-s.weight_power * math.pi * h))


def _check_quadrature(tau: SiegelPoint, grid: QuadratureGrid) -> None:
    if grid.g != tau.g:
        raise DimensionMismatch(f"Grid has genus {grid.g}, tau has genus {tau.g}")
    if tau.g > MAX_QUADRATURE_GENUS:
        raise GenusTooLargeForQuadrature(f"g={tau.g}")


def _grid_weights(tau: SiegelPoint, grid: QuadratureGrid, k: int) -> tuple[ComplexArray, RealArray]:
    _, v = grid.unit_coordinates()
    nodes = grid.nodes(tau)
    quadratic = np.einsum("pi,ij,pj->p", v, tau.imag, v)
    return nodes, np.exp(-2.0 * k * math.pi * quadratic)


def _grid_mean(values: ComplexArray, grid: QuadratureGrid) -> complex:
    return pairwise_tree_sum(values) * grid.weight


def l2_inner(
    s1: SectionEvaluator,
    s2: SectionEvaluator,
    tau: SiegelPoint,
    grid: Optional[QuadratureGrid] = None,
) -> complex:
    """
    L2 product <s1, s2>, conjugate-linear in the second argument.

    The integrand s1(z) conj(s2(z)) exp(-2 k pi H(y, y)) is averaged over the
    grid nodes with a fixed pairwise tree, so <s2, s1> is exactly the complex
    conjugate of <s1, s2>.

    Raises:
        WeightMismatch: If the sections have different powers.
        DimensionMismatch: If the grid, sections and tau disagree on g.
        GenusTooLargeForQuadrature: If g > 2.
    """
    if s1.weight_power != s2.weight_power:
        raise WeightMismatch(f"weights {s1.weight_power} and {s2.weight_power}")
    if not (s1.g == s2.g == tau.g):
        raise DimensionMismatch(f"sections have genus {s1.g}, {s2.g}, tau has {tau.g}")
    grid = grid or QuadratureGrid.default_for(tau.g)
    _check_quadrature(tau, grid)
    nodes, weights = _grid_weights(tau, grid, s1.weight_power)
    integrand = s1(nodes) * np.conj(s2(nodes)) * weights
    return _grid_mean(integrand, grid)


def gram_matrix(
    tau: SiegelPoint,
    grid: Optional[QuadratureGrid] = None,
    policy: Optional[TruncationPolicy] = None,
    k: int = 2,
) -> ComplexArray:
    """
    Gram matrix of the normalized level-k theta basis (second order by default).

    Expected value: det(Im tau)^{-1/2} times the identity.

    Raises:
        GenusTooLargeForQuadrature: If g > 2.
    """
    grid = grid or QuadratureGrid.default_for(tau.g)
    _check_quadrature(tau, grid)
    size = section_space_dimension(tau.g, k)
    nodes, weights = _grid_weights(tau, grid, k)
    values = [level_k_section(k, i, tau, policy)(nodes) for i in range(1, size + 1)]
    gram = np.empty((size, size), dtype=np.complex128)
    for row in range(size):
        for col in range(row, size):
            entry = _grid_mean(values[row] * np.conj(values[col]) * weights, grid)
            gram[row, col] = entry
            gram[col, row] = np.conj(entry)
    logger.debug("gram_matrix: g=%d k=%d nodes=%d", tau.g, k, grid.size)
    return gram


# ------------- Hodge bundle -------------
def hodge_form_gram(tau: SiegelPoint) -> RealArray:
    """
    Pointwise Gram matrix <dz_i, dz_j> of holomorphic 1-forms.

    The flat Kaehler metric (i/2) (Im tau)^{-1}_ij dz_i ^ dz-bar_j has coefficient
    matrix (Im tau)^{-1}/2 on tangent vectors; 1-forms carry its inverse, 2 Im tau.
    """
    metric = 0.5 * tau.imag_inverse
    dual = np.linalg.inv(metric)
    return 0.5 * (dual + dual.T)


def l2_hodge_gram(tau: SiegelPoint, grid: Optional[QuadratureGrid] = None) -> ComplexArray:
    """Integral over the torus of ``hodge_form_gram``, entry by entry."""
    grid = grid or QuadratureGrid.default_for(tau.g)
    _check_quadrature(tau, grid)
    pointwise = hodge_form_gram(tau)
    gram = np.empty((tau.g, tau.g), dtype=np.complex128)
    for i in range(tau.g):
        for j in range(tau.g):
            gram[i, j] = _grid_mean(np.full(grid.size, pointwise[i, j], dtype=np.complex128), grid)
    return gram


def det_hodge_norm(tau: SiegelPoint) -> float:
    """
    Squared L2 norm of dz_1 ^ ... ^ dz_g, i.e. 2^g det(Im tau).

    Example:
        >>> from siegelkit.core.siegel import validate_siegel
        >>> round(det_hodge_norm(validate_siegel(np.diag([1j, 3j]))), 12)
        12.0
    """
    return float(2.0**tau.g * tau.det_imag)
