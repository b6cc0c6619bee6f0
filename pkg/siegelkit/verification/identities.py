"""
One runner per verifiable identity.

A runner draws ``config.samples`` seeded random inputs for a single genus and
returns the largest residual it observed. Genus limits live in ``GENUS_LIMITS``.
"""

import logging
import math
import zlib
from typing import Callable

import numpy as np

from ..core.config import FDConfig, QuadratureGrid, SuiteConfig, TruncationPolicy
from ..core.curvature import (
    verify_c1_theta_bundle,
    verify_hodge_curvature,
    verify_hodge_line_curvature,
    verify_root_curvature,
    verify_theta_det_curvature,
)
from ..core.detline import (
    PolarizationData,
    bost_torsion,
    log_quillen_factor_principal,
)
from ..core.forms import relative_residual
from ..core.metrics import HermitianPairing, gram_matrix, pointwise_norm, theta_section
from ..core.siegel import (
    SiegelPoint,
    TangentDirection,
    random_siegel_point,
    random_symplectic,
    random_tangent,
    siegel_form,
    symplectic_act,
    tangent_pushforward,
)
from ..core.theta import LatticeVector, ThetaCharacteristic, factor_of_automorphy, theta_eval
from ..exceptions import UnknownIdentity
from .spectral import spectral_torsion_check

logger = logging.getLogger(__name__)

IdentityRunner = Callable[[SuiteConfig, int, np.random.Generator], float]

GENUS_LIMITS: dict[str, int] = {
    "norms": 2,
    "curvature:c1": 2,
    "curvature:c1-section": 2,
    "spectral-torsion": 1,
}

THETA_POLICY = TruncationPolicy(epsilon=1e-14)
DIVISOR_CANDIDATES = 8


def identity_rng(config: SuiteConfig, identity: str, g: int) -> np.random.Generator:
    """Generator seeded from (seed, identity, g), independent of execution order."""
    return np.random.default_rng([config.seed, zlib.crc32(identity.encode("utf-8")), g])


def applicable_genera(identity: str, g_list: list[int]) -> list[int]:
    limit = GENUS_LIMITS.get(identity)
    return [g for g in g_list if limit is None or g <= limit]


# ------------- Runners -------------
def run_norms(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    grid = QuadratureGrid(g=g, n_per_dim=config.quadrature_n_for(g))
    worst = 0.0
    for _ in range(config.samples):
        tau = random_siegel_point(g, rng)
        gram = gram_matrix(tau, grid)
        expected = tau.det_imag**-0.5
        worst = max(worst, float(np.max(np.abs(gram - expected * np.eye(gram.shape[0])))))
    return worst


def run_torsion(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    principal = bost_torsion(PolarizationData(g=g, rho_c1=1.0, rho_omega=1.0))
    worst = relative_residual(principal.log_quillen_factor, log_quillen_factor_principal(g))
    for _ in range(config.samples):
        rho_c1, rho_omega = rng.uniform(0.1, 10.0, size=2)
        result = bost_torsion(PolarizationData(g=g, rho_c1=rho_c1, rho_omega=rho_omega))
        direct = -0.5 * rho_c1 * (
            math.log(rho_c1) - g * math.log(2.0 * math.pi) - math.log(rho_omega)
        )
        worst = max(worst, abs(result.torsion - direct) / max(1.0, abs(direct)))
    return worst


def _curvature_runner(
    verifier: Callable[[SiegelPoint, TangentDirection, TangentDirection, FDConfig], float],
) -> IdentityRunner:
    def run(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
        cfg = FDConfig(step=config.fd_step)
        worst = 0.0
        for _ in range(config.samples):
            tau = random_siegel_point(g, rng)
            X, Y = random_tangent(g, rng), random_tangent(g, rng)
            worst = max(worst, verifier(tau, X, Y, cfg))
        return worst

    return run


def run_c1(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    cfg = FDConfig(step=config.fd_step)
    worst = 0.0
    for _ in range(config.samples):
        tau = random_siegel_point(g, rng)
        z = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        V = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        W = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        gamma = LatticeVector.random(g, rng)
        worst = max(worst, verify_c1_theta_bundle(tau, z, V, W, cfg, gamma=gamma))
    return worst


def _far_from_divisor(tau: SiegelPoint, rng: np.random.Generator) -> np.ndarray:
    """Best of a few cell points by the h-norm of theta, so log ||theta||^2 stays smooth."""
    section = theta_section(tau, THETA_POLICY)
    candidates = [
        rng.uniform(-0.5, 0.5, size=tau.g) + tau.tau @ rng.uniform(-0.5, 0.5, size=tau.g)
        for _ in range(DIVISOR_CANDIDATES)
    ]
    return max(candidates, key=lambda z: pointwise_norm(section, z, tau))


def run_c1_section(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    cfg = FDConfig(step=config.fd_step)
    worst = 0.0
    for _ in range(config.samples):
        tau = random_siegel_point(g, rng)
        z = _far_from_divisor(tau, rng)
        V = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        W = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        gamma = LatticeVector.random(g, rng, bound=1)
        residual = verify_c1_theta_bundle(
            tau, z, V, W, cfg, gamma=gamma, use_section=True, policy=THETA_POLICY
        )
        worst = max(worst, residual)
    return worst


def run_symplectic_invariance(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(config.samples):
        tau = random_siegel_point(g, rng)
        M = random_symplectic(g, rng)
        X, Y = random_tangent(g, rng), random_tangent(g, rng)
        image = symplectic_act(M, tau)
        moved = siegel_form(
            image, tangent_pushforward(M, tau, X), tangent_pushforward(M, tau, Y)
        )
        worst = max(worst, relative_residual(moved.value, siegel_form(tau, X, Y).value))
    return worst


def quasi_periodicity_residual(
    tau: SiegelPoint, z: np.ndarray, gamma: LatticeVector, policy: TruncationPolicy
) -> float:
    """
    Defect of theta(z + gamma) = e_gamma(z) theta(z) and of theta(-z) = theta(z),
    both measured in the metric h at the point where they are evaluated.
    """
    char = ThetaCharacteristic.zero(tau.g)
    pairing = HermitianPairing(tau=tau)
    moved = z + gamma.translation(tau)
    value = theta_eval(char, z, tau, policy)
    shifted = theta_eval(char, moved, tau, policy)
    weight_moved = math.exp(-math.pi * float(pairing.quadratic(moved.imag)[0]))
    weight = math.exp(-math.pi * float(pairing.quadratic(z.imag)[0]))
    periodicity = abs(shifted - factor_of_automorphy(gamma, z, tau) * value) * weight_moved
    evenness = abs(theta_eval(char, -z, tau, policy) - value) * weight
    return max(periodicity, evenness)


def run_quasi_periodicity(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    worst = 0.0
    for _ in range(config.samples):
        tau = random_siegel_point(g, rng)
        # z = u + tau v with u, v in the centred cell [-1/2, 1/2)^g
        z = rng.uniform(-0.5, 0.5, size=g) + tau.tau @ rng.uniform(-0.5, 0.5, size=g)
        gamma = LatticeVector.random(g, rng, bound=2)
        worst = max(worst, quasi_periodicity_residual(tau, z, gamma, THETA_POLICY))
    return worst


def run_spectral_torsion(config: SuiteConfig, g: int, rng: np.random.Generator) -> float:
    return spectral_torsion_check().residual


IDENTITY_RUNNERS: dict[str, IdentityRunner] = {
    "norms": run_norms,
    "torsion": run_torsion,
    "curvature:hodge": _curvature_runner(verify_hodge_curvature),
    "curvature:theta-det": _curvature_runner(verify_theta_det_curvature),
    "curvature:c1": run_c1,
    "curvature:c1-section": run_c1_section,
    "curvature:root": _curvature_runner(verify_root_curvature),
    "curvature:hodge-line": _curvature_runner(verify_hodge_line_curvature),
    "symplectic-invariance": run_symplectic_invariance,
    "quasi-periodicity": run_quasi_periodicity,
    "spectral-torsion": run_spectral_torsion,
}


def get_runner(identity: str) -> IdentityRunner:
    try:
        return IDENTITY_RUNNERS[identity]
    except KeyError:
        raise UnknownIdentity(f"Unknown identity: {identity}") from None
