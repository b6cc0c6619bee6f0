"""
Ellipsoid truncation of Gaussian lattice sums.

The modulus of a theta term is ``exp(-||U (m + s)||^2)`` times a z-dependent
envelope, where ``pi Im(tau) = U^T U`` is the upper Cholesky factorization and
``s`` is the characteristic plus the recentring shift. The sum is therefore
cut to the integer points of a whitened ball of radius R, and R is chosen from
the Gaussian tail bound

    (g/2) (2/rho)^g Gamma(g/2, (R - rho/2)^2),    R > (sqrt(g) + rho)/2,

where rho bounds the shortest nonzero whitened lattice vector from below.
"""

import logging
import math
from typing import Annotated

import numpy as np
import scipy.linalg
import scipy.special
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from ...exceptions import ImaginaryPartNotPositiveDefinite, RadiusCapExceeded
from ...types import IntArray, RealArray
from ..config import TruncationPolicy

logger = logging.getLogger(__name__)

RADIUS_XTOL = 1e-10


# ------------- Whitening -------------
def whitening_factor(imag: RealArray) -> RealArray:
    """
    Upper triangular U with ``U^T U = pi Im(tau)``.

    Raises:
        ImaginaryPartNotPositiveDefinite: If the factorization fails.
    """
    try:
        return scipy.linalg.cholesky(math.pi * imag, lower=False)
    except np.linalg.LinAlgError as exc:
        raise ImaginaryPartNotPositiveDefinite() from exc


def shortest_vector_bound(U: RealArray) -> float:
    """
    Lower bound for min ||U m|| over nonzero integer m.

    For the last nonzero coordinate k of m the k-th entry of U m is ``U_kk m_k``,
    so the smallest diagonal entry is a bound; the smallest singular value is
    another. The larger of the two is returned.
    """
    diagonal = float(np.min(np.abs(np.diag(U))))
    singular = float(np.min(scipy.linalg.svdvals(U)))
    return max(diagonal, singular)


# ------------- Radius selection -------------
def tail_bound(radius: float, g: int, rho: float) -> float:
    """
    Bound on the sum of ``exp(-||x||^2)`` over whitened lattice points outside the ball.

    Only valid for ``radius > (sqrt(g) + rho) / 2``; returns ``inf`` below that.

    Example:
        >>> tail_bound(6.0, 1, math.sqrt(math.pi)) < 1e-14
        True
    """
    if radius <= minimal_radius(g, rho):
        return math.inf
    shape = 0.5 * g
    x = (radius - 0.5 * rho) ** 2
    upper_gamma = scipy.special.gammaincc(shape, x) * scipy.special.gamma(shape)
    return float(shape * (2.0 / rho) ** g * upper_gamma)


def minimal_radius(g: int, rho: float) -> float:
    return 0.5 * (math.sqrt(g) + rho)


def truncation_radius(g: int, rho: float, policy: TruncationPolicy) -> float:
    """
    Smallest whitened radius whose tail bound is below ``policy.epsilon``.

    Raises:
        RadiusCapExceeded: If that radius exceeds ``policy.max_radius``.
    """
    policy.ensure_valid()
    low = minimal_radius(g, rho) * (1.0 + 1e-9) + 1e-12
    if low > policy.max_radius:
        raise RadiusCapExceeded(
            f"Minimal admissible radius {low:.3f} exceeds cap {policy.max_radius}"
        )
    if tail_bound(low, g, rho) < policy.epsilon:
        return low
    high = max(2.0 * low, low + 1.0)
    while tail_bound(high, g, rho) >= policy.epsilon:
        if high >= policy.max_radius:
            raise RadiusCapExceeded(
                f"Tail bound at cap {policy.max_radius} is still above epsilon={policy.epsilon}"
            )
        high = min(2.0 * high, policy.max_radius)

    root = brentq(
        lambda r: tail_bound(r, g, rho) - policy.epsilon, low, high, xtol=RADIUS_XTOL
    )
    return float(min(root + 2.0 * RADIUS_XTOL, high))


# ------------- Enumeration -------------
class EllipsoidPoints(BaseModel):
    """
    Integer points m with ``||U (m + shift)|| <= radius``, sorted by whitened norm.

    Attributes:
        points: Integer array of shape (N, g).
        norms: Squared whitened norms ``||U (m + shift)||^2``, non-decreasing.
        radius: Whitened radius of the ball.
        rho: Shortest-vector bound used for the tail estimate.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    points: np.ndarray
    norms: np.ndarray
    radius: Annotated[float, Field(gt=0.0)]
    rho: Annotated[float, Field(gt=0.0)]

    @property
    def count(self) -> int:
        return int(self.points.shape[0])


def _enumerate(U: RealArray, shift: RealArray, radius: float) -> IntArray:
    """Fincke-Pohst enumeration, innermost coordinate vectorized."""
    g = U.shape[0]
    diagonal = np.diag(U)
    found: list[IntArray] = []
    prefix = np.zeros(g, dtype=np.int64)

    def descend(level: int, remaining: float) -> None:
        # x_j = m_j + shift_j for j > level are fixed in prefix
        x_tail = prefix[level + 1 :] + shift[level + 1 :]
        offset = float(U[level, level + 1 :] @ x_tail) / diagonal[level]
        half_width = math.sqrt(max(remaining, 0.0)) / diagonal[level]
        lo = math.ceil(-offset - shift[level] - half_width)
        hi = math.floor(-offset - shift[level] + half_width)
        if hi < lo:
            return
        if level == 0:
            block = np.zeros((hi - lo + 1, g), dtype=np.int64)
            block[:, 0] = np.arange(lo, hi + 1, dtype=np.int64)
            block[:, 1:] = prefix[1:]
            found.append(block)
            return
        for value in range(lo, hi + 1):
            prefix[level] = value
            component = diagonal[level] * (value + shift[level] + offset)
            descend(level - 1, remaining - component * component)
        prefix[level] = 0

    descend(g - 1, radius * radius)
    if not found:
        return np.zeros((0, g), dtype=np.int64)
    return np.concatenate(found, axis=0)


def enumerate_ellipsoid(
    U: RealArray, shift: RealArray, radius: float, rho: float
) -> EllipsoidPoints:
    """
    Enumerate the lattice points of the whitened ball and order them.

    Points are ordered by increasing whitened norm, ties broken
    lexicographically on m, so the summation order is reproducible.
    """
    points = _enumerate(U, np.asarray(shift, dtype=np.float64), radius)
    whitened = (points + shift) @ U.T
    norms = np.einsum("ij,ij->i", whitened, whitened)
    keep = norms <= radius * radius * (1.0 + 1e-12)
    points, norms = points[keep], norms[keep]
    keys = tuple(points[:, j] for j in reversed(range(points.shape[1]))) + (norms,)
    order = np.lexsort(keys)
    logger.debug("ellipsoid enumeration: radius=%.4f points=%d", radius, len(order))
    return EllipsoidPoints(points=points[order], norms=norms[order], radius=radius, rho=rho)
