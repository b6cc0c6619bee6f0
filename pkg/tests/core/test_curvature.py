"""Tests for the finite-difference curvature engine and the identity verifiers."""

import math

import numpy as np
import pytest

from siegelkit.core.config import FDConfig
from siegelkit.core.curvature import (
    curvature_form_coefficient,
    ddbar_fd,
    ddbar_fd_torus,
    expected_torus_curvature,
    mixed_wirtinger,
    polarization_form,
    verifiers,
    verify_c1_theta_bundle,
    verify_hodge_curvature,
    verify_hodge_line_curvature,
    verify_root_curvature,
    verify_theta_det_curvature,
)
from siegelkit.core.detline import (
    hodge_determinant_logmetric,
    hodge_line_logmetric,
    root_dual_logmetric,
    theta_determinant_logmetric,
)
from siegelkit.core.forms import relative_residual
from siegelkit.core.metrics import HermitianPairing
from siegelkit.core.siegel import (
    TangentDirection,
    random_siegel_point,
    random_tangent,
    siegel_form,
    validate_siegel,
)
from siegelkit.core.theta import LatticeVector
from siegelkit.exceptions import DimensionMismatch, LeftSiegelDomain, UnknownIdentity

ONE = TangentDirection.from_matrix([[1.0]])


class TestStencil:
    """Mixed Wirtinger derivatives of explicit functions."""

    def test_quadratic(self):
        """d_s dbar_t of |s + t|^2 is 1."""
        value = mixed_wirtinger(lambda s, t: abs(s + t) ** 2, 0.1)
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_holomorphic_part_drops_out(self):
        """Re(s t) is pluriharmonic."""
        value = mixed_wirtinger(lambda s, t: (s * t).real + abs(s) ** 2, 0.1)
        assert abs(value) < 1e-12

    def test_torus_stencil(self):
        phi = lambda z: float(np.sum(np.abs(z) ** 2))  # noqa: E731
        value = ddbar_fd_torus(phi, np.zeros(2), np.array([1.0, 0.0]), np.array([1.0, 0.0]))
        assert value.value == pytest.approx(1.0, abs=1e-8)

    def test_torus_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            ddbar_fd_torus(lambda z: 0.0, np.zeros(2), np.zeros(1), np.zeros(2))


class TestDdbarFD:
    """Complex Hessians of log-metrics on the Siegel space."""

    def test_hodge_at_i(self, tau_i):
        value = ddbar_fd(hodge_determinant_logmetric(1), tau_i, ONE, ONE)
        assert value.value == pytest.approx(0.25, abs=1e-8)

    def test_theta_det_genus_two(self, tau_i2):
        E11 = TangentDirection.from_matrix([[1.0, 0.0], [0.0, 0.0]])
        value = ddbar_fd(theta_determinant_logmetric(2), tau_i2, E11, E11)
        assert value.value == pytest.approx(0.5, abs=1e-8)

    def test_constant_shift_invariance(self, rng):
        tau = random_siegel_point(2, rng)
        X, Y = random_tangent(2, rng), random_tangent(2, rng)
        f = hodge_determinant_logmetric(2)
        base = ddbar_fd(f, tau, X, Y).value
        shifted = ddbar_fd(f.shifted(3.7), tau, X, Y).value
        assert abs(base - shifted) < 1e-8

    def test_root_scaling(self, rng):
        """The curvature of the k-th root of the dual is -1/k times the original."""
        for g in (1, 2, 3):
            tau = random_siegel_point(g, rng)
            X, Y = random_tangent(g, rng), random_tangent(g, rng)
            f = theta_determinant_logmetric(g)
            base = ddbar_fd(f, tau, X, Y).value
            for k in (1, 2, 4):
                root = ddbar_fd(root_dual_logmetric(f, k), tau, X, Y).value
                assert relative_residual(root, -base / k) < 1e-8

    def test_zero_direction(self, rng):
        tau = random_siegel_point(2, rng)
        value = ddbar_fd(hodge_determinant_logmetric(2), tau, TangentDirection.zero(2), random_tangent(2, rng))
        assert abs(value.value) < 1e-10

    def test_left_siegel_domain(self):
        """A step larger than Im tau leaves the domain."""
        tau = validate_siegel([[0.01j]])
        with pytest.raises(LeftSiegelDomain):
            ddbar_fd(hodge_determinant_logmetric(1), tau, ONE, ONE, FDConfig(step=0.1))

    def test_genus_mismatch(self, tau_i):
        with pytest.raises(DimensionMismatch):
            ddbar_fd(hodge_determinant_logmetric(2), tau_i, ONE, ONE)


class TestConventions:
    def test_table(self):
        assert curvature_form_coefficient("hodge", 1) == -0.5j
        assert curvature_form_coefficient("hodge-line", 2) == 0.5j
        assert curvature_form_coefficient("root", 3) == 0.5j
        assert curvature_form_coefficient("theta-det", 3) == -2j
        assert curvature_form_coefficient("c1", 1) == pytest.approx(-2j * math.pi)

    def test_unknown(self):
        with pytest.raises(UnknownIdentity):
            curvature_form_coefficient("ricci", 1)

    def test_polarization_form_at_i(self, tau_i):
        assert polarization_form(tau_i, [1.0], [1.0]).value == pytest.approx(0.5j)

    def test_c1_expected_is_real_positive(self, tau_i):
        """R(V, V) = pi / Im tau for the theta bundle in genus one."""
        assert expected_torus_curvature(tau_i, [1.0], [1.0]).value == pytest.approx(math.pi)


class TestVerifiers:
    """Every identity holds to its tolerance at random points."""

    def test_hodge_at_i(self, tau_i):
        assert verify_hodge_curvature(tau_i, ONE, ONE) < 1e-8

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_hodge_random(self, rng, g):
        for _ in range(5):
            tau = random_siegel_point(g, rng)
            X, Y = random_tangent(g, rng), random_tangent(g, rng)
            assert verify_hodge_curvature(tau, X, Y) < 1e-6

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_theta_det_random(self, rng, g):
        for _ in range(3):
            tau = random_siegel_point(g, rng)
            X, Y = random_tangent(g, rng), random_tangent(g, rng)
            assert verify_theta_det_curvature(tau, X, Y) < 1e-6

    def test_theta_det_at_i(self, tau_i):
        assert verify_theta_det_curvature(tau_i, ONE, ONE) < 1e-8

    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_root_random(self, rng, g):
        for _ in range(3):
            tau = random_siegel_point(g, rng)
            X, Y = random_tangent(g, rng), random_tangent(g, rng)
            assert verify_root_curvature(tau, X, Y) < 1e-6

    def test_root_value_at_i(self, tau_i):
        """R' = (i/2) omega_S evaluates to -1/4 at tau = i."""
        root = root_dual_logmetric(theta_determinant_logmetric(1), 1)
        assert ddbar_fd(root, tau_i, ONE, ONE).value == pytest.approx(-0.25, abs=1e-8)

    def test_hodge_line_matches_root(self, rng):
        tau = random_siegel_point(2, rng)
        X, Y = random_tangent(2, rng), random_tangent(2, rng)
        assert verify_hodge_line_curvature(tau, X, Y) < 1e-6

    @pytest.mark.parametrize("g", [1, 2])
    def test_c1_weight(self, rng, g):
        for _ in range(5):
            tau = random_siegel_point(g, rng)
            z, V, W = (rng.standard_normal(g) + 1j * rng.standard_normal(g) for _ in range(3))
            gamma = LatticeVector.random(g, rng)
            assert verify_c1_theta_bundle(tau, z, V, W, gamma=gamma) < 1e-9

    def test_c1_at_i(self, tau_i):
        assert verify_c1_theta_bundle(tau_i, [0.0], [1.0], [1.0]) < 1e-9

    def test_c1_with_section(self, tau_i):
        """log |theta|^2 is pluriharmonic away from the theta divisor."""
        residual = verify_c1_theta_bundle(tau_i, [0.1 + 0.05j], [1.0], [1.0], use_section=True)
        assert residual < 1e-6


def _unit_tangent(g, rng):
    X = random_tangent(g, rng).X
    return TangentDirection.from_matrix(X / np.linalg.norm(X))


class TestExtrapolation:
    """Accuracy of the stencil with and without Richardson extrapolation."""

    def test_richardson_gain_hodge_at_i(self, tau_i):
        f = hodge_determinant_logmetric(1)
        plain = ddbar_fd(f, tau_i, ONE, ONE, FDConfig(step=1e-3, richardson=False)).value
        extrapolated = ddbar_fd(f, tau_i, ONE, ONE, FDConfig(step=1e-3)).value
        plain_error = abs(plain - 0.25)
        assert plain_error > 1e-8
        assert abs(extrapolated - 0.25) <= 1e-2 * plain_error

    def test_richardson_gain_theta_det(self, tau_i2):
        E11 = TangentDirection.from_matrix([[1.0, 0.0], [0.0, 0.0]])
        f = theta_determinant_logmetric(2)
        plain = ddbar_fd(f, tau_i2, E11, E11, FDConfig(richardson=False)).value
        extrapolated = ddbar_fd(f, tau_i2, E11, E11).value
        assert abs(extrapolated - 0.5) <= 1e-2 * abs(plain - 0.5)

    def test_plain_stencil_is_second_order(self, rng):
        tau = random_siegel_point(2, rng)
        X = _unit_tangent(2, rng)
        coarse = verify_hodge_curvature(tau, X, X, FDConfig(step=1e-2, richardson=False))
        fine = verify_hodge_curvature(tau, X, X, FDConfig(step=1e-3, richardson=False))
        assert 25.0 < coarse / fine < 400.0

    @pytest.mark.parametrize("step", [1e-2, 1e-3, 1e-4])
    @pytest.mark.parametrize(
        "verifier", [verify_hodge_curvature, verify_theta_det_curvature, verify_root_curvature]
    )
    def test_step_robustness(self, verifier, step, rng):
        tau = random_siegel_point(2, rng)
        X, Y = _unit_tangent(2, rng), _unit_tangent(2, rng)
        residual = verifier(tau, X, Y, FDConfig(step=step, richardson=False))
        assert residual < 100.0 * step**2 + 1e-5


def _root_logmetric(g):
    return root_dual_logmetric(theta_determinant_logmetric(g), 2 ** (g - 1))


class TestHermitianReality:
    """i R is a real (1,1)-form, so R(X, X) is real with a sign fixed by the metric."""

    @pytest.mark.parametrize(
        "logmetric, sign",
        [
            (hodge_determinant_logmetric, 1.0),
            (hodge_line_logmetric, -1.0),
            (theta_determinant_logmetric, 1.0),
            (_root_logmetric, -1.0),
        ],
    )
    @pytest.mark.parametrize("g", [1, 2, 3])
    def test_siegel_metrics(self, logmetric, sign, g, rng):
        for _ in range(3):
            tau = random_siegel_point(g, rng)
            X = random_tangent(g, rng)
            value = ddbar_fd(logmetric(g), tau, X, X).value
            assert sign * value.real > 0
            assert abs(value.imag) < 1e-8 * abs(value.real)

    def test_sign_matches_siegel_form(self, rng):
        """R(X, X) = kappa omega_S(X, X) with omega_S(X, X) / i > 0."""
        tau = random_siegel_point(2, rng)
        X = random_tangent(2, rng)
        reference = siegel_form(tau, X, X).divide_by_i().real
        value = ddbar_fd(hodge_determinant_logmetric(2), tau, X, X).value
        assert value.real == pytest.approx(0.5 * reference, rel=1e-6)

    @pytest.mark.parametrize("g", [1, 2])
    def test_theta_bundle(self, g, rng):
        tau = random_siegel_point(g, rng)
        pairing = HermitianPairing(tau=tau)

        def log_norm(w):
            return -2.0 * math.pi * float(pairing.quadratic(w.imag)[0])

        for _ in range(3):
            z = rng.standard_normal(g) + 1j * rng.standard_normal(g)
            V = rng.standard_normal(g) + 1j * rng.standard_normal(g)
            value = -ddbar_fd_torus(log_norm, z, V, V, FDConfig(step=0.1)).value
            assert value.real > 0
            assert abs(value.imag) < 1e-8 * value.real


class TestConventionMutation:
    """A sign flip in the conversion table is caught by every verifier."""

    def test_hodge_detects_flip(self, flipped_convention, tau_i):
        assert verify_hodge_curvature(tau_i, ONE, ONE) > 1.0

    def test_root_detects_flip(self, flipped_convention, rng):
        tau = random_siegel_point(2, rng)
        X = random_tangent(2, rng)
        assert verify_root_curvature(tau, X, X) > 1.0

    def test_c1_detects_flip(self, flipped_convention, tau_i):
        assert verify_c1_theta_bundle(tau_i, [0.0], [1.0], [1.0]) > 1.0


class TestSectionPath:
    """The theta-section variant of the c1 check, including its translation leg."""

    @pytest.mark.parametrize("g", [1, 2])
    def test_random_translation(self, g, rng):
        tau = random_siegel_point(g, rng)
        z = 0.2 * (rng.uniform(-0.5, 0.5, size=g) + tau.tau @ rng.uniform(-0.5, 0.5, size=g))
        V = rng.standard_normal(g) + 1j * rng.standard_normal(g)
        gamma = LatticeVector.random(g, rng, bound=1)
        residual = verify_c1_theta_bundle(tau, z, V, V, gamma=gamma, use_section=True)
        assert residual < 1e-6

    def test_non_holomorphic_section_is_caught(self, monkeypatch, tau_i):
        """A theta value spoiled by a |w|^2 factor is no longer pluriharmonic in log."""
        original = verifiers.theta_eval

        def spoiled(char, w, tau, policy=None):
            return original(char, w, tau, policy) * (1.0 + 0.2 * float(np.vdot(w, w).real))

        monkeypatch.setattr(verifiers, "theta_eval", spoiled)
        residual = verify_c1_theta_bundle(tau_i, [0.1 + 0.05j], [1.0], [1.0], use_section=True)
        assert residual > 1e-3

    def test_weight_path_ignores_the_section(self, monkeypatch, tau_i):
        monkeypatch.setattr(verifiers, "theta_eval", lambda *args: math.nan)
        assert verify_c1_theta_bundle(tau_i, [0.1 + 0.05j], [1.0], [1.0]) < 1e-9
