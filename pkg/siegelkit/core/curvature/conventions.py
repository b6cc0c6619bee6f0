"""
The single conversion table between curvatures and invariant forms.

Curvature of a Hermitian line bundle with frame sigma is R = -d dbar log ||sigma||^2,
so for the log-metric f = -log ||sigma||^2 it is ``ddbar_fd(f)``. Each identity
states R = kappa * base, with base either the Siegel form omega_S on the Siegel
space or the polarization omega_tau on the torus:

    identity     bundle and metric                    kappa            base
    hodge        det E, det h_L2                      -i/2             omega_S
    hodge-line   (det E)^*, dual metric               +i/2             omega_S
    theta-det    lambda(Theta^2), h_L2 or h_Q         -i 2^{g-2}       omega_S
    root         (det E)^*, 2^{g-1}-th root of dual   +i/2             omega_S
    c1           (L, h) on the torus                  -2 pi i          omega_tau

The c1 row says c1(L, h) = (i/2pi) R = omega_tau. For the theta-det row the
same statement reads i R = 2^{g-2} omega_S.
"""

import math

import numpy as np

from ...exceptions import DimensionMismatch, UnknownIdentity
from ...types import VectorLike
from ..forms import Form11Value
from ..siegel import SiegelPoint, TangentDirection, siegel_form

CURVATURE_IDENTITIES: tuple[str, ...] = ("hodge", "hodge-line", "theta-det", "root", "c1")


def curvature_form_coefficient(identity: str, g: int) -> complex:
    """
    Return kappa with R(X, Y) = kappa * base(X, Y) for the named identity.

    Raises:
        UnknownIdentity: If the identity is not in the table.

    Example:
        >>> curvature_form_coefficient("theta-det", 3)
        -2j
    """
    if identity == "hodge":
        return complex(0.0, -0.5)
    if identity in ("hodge-line", "root"):
        return complex(0.0, 0.5)
    if identity == "theta-det":
        return complex(0.0, -(2.0 ** (g - 2)))
    if identity == "c1":
        return complex(0.0, -2.0 * math.pi)
    raise UnknownIdentity(f"No curvature convention for {identity!r}")


def polarization_form(tau: SiegelPoint, V: VectorLike, W: VectorLike) -> Form11Value:
    """omega_tau(V, W) = (i/2) V^T (Im tau)^{-1} conj(W), the flat Kaehler form on the torus."""
    v = np.atleast_1d(np.asarray(V, dtype=np.complex128))
    w = np.atleast_1d(np.asarray(W, dtype=np.complex128))
    if v.shape != (tau.g,) or w.shape != (tau.g,):
        raise DimensionMismatch(f"V, W must have length {tau.g}")
    return Form11Value(value=0.5j * complex(v @ tau.imag_inverse @ np.conj(w)))


def expected_curvature(
    identity: str, tau: SiegelPoint, X: TangentDirection, Y: TangentDirection
) -> Form11Value:
    """kappa * omega_S(X, Y) for one of the Siegel-space identities."""
    return siegel_form(tau, X, Y).scaled(curvature_form_coefficient(identity, tau.g))


def expected_torus_curvature(tau: SiegelPoint, V: VectorLike, W: VectorLike) -> Form11Value:
    return polarization_form(tau, V, W).scaled(curvature_form_coefficient("c1", tau.g))
