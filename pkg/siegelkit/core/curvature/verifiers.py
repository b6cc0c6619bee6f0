"""
Verifiers for the curvature identities of the Hodge, theta and root metrics.

Every verifier computes a curvature by finite differences of an explicit
log-metric, compares it with kappa times an invariant form taken from
``conventions``, and returns the relative residual.
"""

import logging
import math
from typing import Optional

import numpy as np

from ...types import VectorLike
from ..config import FDConfig, TruncationPolicy
from ..detline import (
    LogMetricForm,
    hodge_determinant_logmetric,
    hodge_line_logmetric,
    quillen_logmetric,
    root_dual_logmetric,
    theta_determinant_logmetric,
    torsion_report,
)
from ..forms import relative_residual
from ..metrics import HermitianPairing
from ..siegel import SiegelPoint, TangentDirection
from ..theta import LatticeVector, ThetaCharacteristic, theta_eval
from . import conventions
from .stencil import ddbar_fd, ddbar_fd_torus

logger = logging.getLogger(__name__)

# the weight of (L, h) is quadratic in z, so any step is exact up to rounding
C1_WEIGHT_STEP = 0.1


def _verify_siegel_identity(
    identity: str,
    f: LogMetricForm,
    tau: SiegelPoint,
    X: TangentDirection,
    Y: TangentDirection,
    cfg: FDConfig,
) -> float:
    measured = ddbar_fd(f, tau, X, Y, cfg)
    expected = conventions.expected_curvature(identity, tau, X, Y)
    residual = relative_residual(measured.value, expected.value)
    logger.debug(
        "%s: measured=%s expected=%s residual=%.3e",
        identity,
        measured.value,
        expected.value,
        residual,
    )
    return residual


def verify_hodge_curvature(
    tau: SiegelPoint, X: TangentDirection, Y: TangentDirection, cfg: FDConfig = FDConfig()
) -> float:
    """
    Relative residual of R(det E, det h_L2) = -(i/2) omega_S.

    The curvature is the complex Hessian of -log(2^g det Im tau), the log-norm of
    the frame dz_1 ^ ... ^ dz_g.
    """
    return _verify_siegel_identity(
        "hodge", hodge_determinant_logmetric(tau.g), tau, X, Y, cfg
    )


def verify_hodge_line_curvature(
    tau: SiegelPoint, X: TangentDirection, Y: TangentDirection, cfg: FDConfig = FDConfig()
) -> float:
    """Relative residual of R((det E)^*, dual metric) = (i/2) omega_S."""
    return _verify_siegel_identity("hodge-line", hodge_line_logmetric(tau.g), tau, X, Y, cfg)


def verify_theta_det_curvature(
    tau: SiegelPoint, X: TangentDirection, Y: TangentDirection, cfg: FDConfig = FDConfig()
) -> float:
    """
    Relative residual of i R(lambda(Theta^2), h_L2) = 2^{g-2} omega_S.

    The Quillen metric differs from h_L2 by the constant e^T, so its curvature
    is computed as well and the larger of the two deviations is returned.
    """
    l2 = theta_determinant_logmetric(tau.g)
    quillen = quillen_logmetric(l2, torsion_report(tau.g).square.torsion)
    residual = _verify_siegel_identity("theta-det", l2, tau, X, Y, cfg)
    agreement = relative_residual(
        ddbar_fd(l2, tau, X, Y, cfg).value, ddbar_fd(quillen, tau, X, Y, cfg).value
    )
    return max(residual, agreement)


def verify_root_curvature(
    tau: SiegelPoint, X: TangentDirection, Y: TangentDirection, cfg: FDConfig = FDConfig()
) -> float:
    """
    Relative residual of R(det E^*, h') = (i/2) omega_S for the root metric.

    h' is the 2^{g-1}-th root of the dual of the L2 metric on lambda(Theta^2).
    """
    root = root_dual_logmetric(theta_determinant_logmetric(tau.g), 2 ** (tau.g - 1))
    return _verify_siegel_identity("root", root, tau, X, Y, cfg)


def verify_c1_theta_bundle(
    tau: SiegelPoint,
    z: VectorLike,
    V: VectorLike,
    W: VectorLike,
    cfg: FDConfig = FDConfig(),
    gamma: Optional[LatticeVector] = None,
    use_section: bool = False,
    policy: Optional[TruncationPolicy] = None,
) -> float:
    """
    Relative residual of c1(L, h) = -(i/2pi) ddbar log ||s||^2_h = omega_tau on the torus.

    By default log ||s||^2_h is replaced by its non-pluriharmonic part
    -2 pi H(y, y); with ``use_section`` it is the log-norm of Riemann's theta
    function itself, which must stay away from the theta divisor. The check is
    repeated at z + gamma, and the returned value also covers the difference of
    the two curvatures.

    Args:
        tau: Period matrix of the torus.
        z: Base point.
        V: Direction in the holomorphic slot.
        W: Direction in the antiholomorphic slot.
        cfg: Stencil settings; the weight-only path uses a step of at least 0.1.
        gamma: Lattice translation; defaults to m = n = (1, ..., 1).
        use_section: Differentiate log ||theta||^2_h instead of the weight alone.
        policy: Truncation policy for theta evaluations.
    """
    point = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    pairing = HermitianPairing(tau=tau)
    gamma = gamma or LatticeVector(m=np.ones(tau.g), n=np.ones(tau.g))
    char = ThetaCharacteristic.zero(tau.g)

    def log_norm(w: np.ndarray) -> float:
        weight = -2.0 * math.pi * float(pairing.quadratic(w.imag)[0])
        if not use_section:
            return weight
        return math.log(abs(theta_eval(char, w, tau, policy)) ** 2) + weight

    if not use_section:
        cfg = cfg.with_step(max(cfg.step, C1_WEIGHT_STEP))
    expected = conventions.expected_torus_curvature(tau, V, W).value
    measured = []
    for base in (point, point + gamma.translation(tau)):
        # R = ddbar f with f = -log ||s||^2
        measured.append(-ddbar_fd_torus(log_norm, base, V, W, cfg).value)
    residual = max(relative_residual(value, expected) for value in measured)
    return max(residual, relative_residual(measured[0], measured[1]))
