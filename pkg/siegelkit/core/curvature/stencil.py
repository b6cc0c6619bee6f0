"""
Finite-difference complex Hessians.

For a smooth real function F of two complex parameters s = a + i b and
t = c + i d, the mixed Wirtinger derivative is

    d_s dbar_t F = (1/4) [F_ac + i F_ad - i F_bc + F_bd],

and every real mixed partial is a four-point central difference. The sixteen
stencil values are combined in a fixed order.
"""

import logging
from typing import Callable

import numpy as np

from ...exceptions import DimensionMismatch, LeftSiegelDomain
from ...types import ComplexArray
from ..config import FDConfig
from ..detline import LogMetricForm
from ..forms import Form11Value
from ..siegel import SiegelPoint, TangentDirection, is_positive_definite

logger = logging.getLogger(__name__)

# (direction of s, direction of t, weight) for F_ac, F_ad, F_bc, F_bd
_PARTIALS = ((1.0, 1.0, 1.0), (1.0, 1j, 1j), (1j, 1.0, -1j), (1j, 1j, 1.0))
_SIGNS = ((1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0))


def mixed_wirtinger(F: Callable[[complex, complex], float], h: float) -> complex:
    """Central-difference value of d_s dbar_t F at s = t = 0 with real step h."""
    total = 0j
    for s_dir, t_dir, weight in _PARTIALS:
        partial = 0.0
        for s_sign, t_sign, sign in _SIGNS:
            partial += sign * F(s_sign * h * s_dir, t_sign * h * t_dir)
        total += weight * partial / (4.0 * h * h)
    return 0.25 * total


def richardson_wirtinger(F: Callable[[complex, complex], float], cfg: FDConfig) -> complex:
    """``mixed_wirtinger`` at step h, combined with step h/r when ``cfg.richardson``."""
    coarse = mixed_wirtinger(F, cfg.step)
    if not cfg.richardson:
        return coarse
    ratio2 = cfg.step_ratio**2
    fine = mixed_wirtinger(F, cfg.step / cfg.step_ratio)
    return (ratio2 * fine - coarse) / (ratio2 - 1.0)


def ddbar_fd(
    f: LogMetricForm,
    tau: SiegelPoint,
    X: TangentDirection,
    Y: TangentDirection,
    cfg: FDConfig = FDConfig(),
) -> Form11Value:
    """
    (ddbar f)(X, Y) at tau: the value of d_s dbar_t f(tau + s X + t Y) at s = t = 0.

    Args:
        f: Log-metric to differentiate.
        tau: Base point.
        X: Direction filling the holomorphic slot.
        Y: Direction filling the antiholomorphic slot.
        cfg: Step and extrapolation settings.

    Raises:
        LeftSiegelDomain: If a stencil point has an imaginary part that is not
            positive definite; the caller decides whether to shrink the step.
        DimensionMismatch: If the genera differ.

    Example:
        >>> from siegelkit.core.detline import hodge_determinant_logmetric
        >>> from siegelkit.core.siegel import validate_siegel
        >>> one = TangentDirection.from_matrix([[1.0]])
        >>> value = ddbar_fd(hodge_determinant_logmetric(1), validate_siegel([[1j]]), one, one)
        >>> round(value.value.real, 8)
        0.25
    """
    if not (f.g == tau.g == X.g == Y.g):
        raise DimensionMismatch(f"f, tau, X, Y have genus {f.g}, {tau.g}, {X.g}, {Y.g}")
    base = tau.tau

    def F(s: complex, t: complex) -> float:
        point = base + s * X.X + t * Y.X
        if not is_positive_definite(point.imag):
            raise LeftSiegelDomain(f"stencil point s={s}, t={t} left the Siegel space")
        return f(point)

    value = richardson_wirtinger(F, cfg)
    logger.debug("ddbar_fd[%s]: step=%.1e value=%s", f.label, cfg.step, value)
    return Form11Value(value=value)


def ddbar_fd_torus(
    phi: Callable[[ComplexArray], float],
    z: ComplexArray,
    V: ComplexArray,
    W: ComplexArray,
    cfg: FDConfig = FDConfig(),
) -> Form11Value:
    """(ddbar phi)(V, W) at z for a real function phi on C^g."""
    point = np.asarray(z, dtype=np.complex128)
    v = np.asarray(V, dtype=np.complex128)
    w = np.asarray(W, dtype=np.complex128)
    if not (point.shape == v.shape == w.shape):
        raise DimensionMismatch(f"z, V, W have shapes {point.shape}, {v.shape}, {w.shape}")
    value = richardson_wirtinger(lambda s, t: phi(point + s * v + t * w), cfg)
    return Form11Value(value=value)
