"""Tests for the Siegel space, the symplectic action and the Siegel form."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from siegelkit.core.forms import relative_residual
from siegelkit.core.siegel import (
    SymplecticMatrix,
    TangentDirection,
    _act_on_matrix,
    compose,
    random_siegel_point,
    random_symplectic,
    random_tangent,
    siegel_form,
    standard_symplectic_form,
    symplectic_act,
    symplectic_generators,
    tangent_pushforward,
    tangent_pushforward_closed_form,
    validate_siegel,
)
from siegelkit.exceptions import (
    DimensionMismatch,
    ImaginaryPartNotPositiveDefinite,
    NotSymmetric,
    NotSymplectic,
    SingularDenominator,
)

INVERSION = [[0, -1], [1, 0]]
TRANSLATION = [[1, 1], [0, 1]]


class TestValidateSiegel:
    """Validation of period matrices."""

    def test_accepts_identity_multiple(self):
        """i * I_g is a Siegel point of genus g."""
        point = validate_siegel(1j * np.eye(3))
        assert point.g == 3
        assert point.det_imag == pytest.approx(1.0)

    def test_scalar_is_genus_one(self):
        """A scalar is read as a 1 x 1 matrix."""
        assert validate_siegel(2j).g == 1

    def test_rejects_asymmetric(self):
        """An asymmetric matrix raises NotSymmetric."""
        with pytest.raises(NotSymmetric):
            validate_siegel([[1j, 2], [0, 1j]])

    def test_rejects_negative_imaginary_part(self):
        """tau = -i is outside the Siegel space."""
        with pytest.raises(ImaginaryPartNotPositiveDefinite):
            validate_siegel([[-1j]])

    def test_rejects_semidefinite_imaginary_part(self):
        """A singular imaginary part fails the pivot threshold."""
        with pytest.raises(ImaginaryPartNotPositiveDefinite):
            validate_siegel([[1j, 1j], [1j, 1j]])

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            validate_siegel(np.ones((2, 3)) * 1j)

    @pytest.mark.parametrize(
        "entries",
        [
            [[complex(math.nan, 1.0)]],
            [[complex(math.inf, 1.0)]],
            [[complex(0.0, math.nan)]],
            [[1j, complex(math.nan, 0.0)], [complex(math.nan, 0.0), 1j]],
        ],
    )
    def test_rejects_non_finite_entries(self, entries):
        with pytest.raises(NotSymmetric, match="non-finite"):
            validate_siegel(entries)

    def test_point_is_immutable(self, tau_i2):
        """Neither the model nor its array can be modified."""
        with pytest.raises(ValidationError):
            tau_i2.g = 3
        with pytest.raises(ValueError):
            tau_i2.tau[0, 0] = 2j

    def test_imag_inverse(self):
        point = validate_siegel(np.diag([2j, 4j]))
        np.testing.assert_allclose(point.imag_inverse, np.diag([0.5, 0.25]))


class TestSymplecticMatrix:
    """Construction and group operations."""

    def test_standard_form(self):
        J = standard_symplectic_form(1)
        np.testing.assert_array_equal(J, [[0, 1], [-1, 0]])

    def test_rejects_non_symplectic(self):
        """det = 2 is not symplectic for g = 1."""
        with pytest.raises(NotSymplectic):
            SymplecticMatrix.from_matrix([[2, 0], [0, 1]])

    def test_rejects_odd_size(self):
        with pytest.raises(DimensionMismatch):
            SymplecticMatrix.from_matrix(np.eye(3))

    def test_generators_are_symplectic(self):
        """Every generator passes validation and has an inverse."""
        for g in (1, 2, 3):
            for generator in symplectic_generators(g):
                product = compose(generator, generator.inverse())
                np.testing.assert_allclose(product.matrix, np.eye(2 * g), atol=1e-12)

    def test_compose_rejects_mixed_genus(self):
        with pytest.raises(DimensionMismatch):
            compose(SymplecticMatrix.identity(1), SymplecticMatrix.identity(2))

    def test_random_symplectic_is_deterministic(self):
        first = random_symplectic(2, np.random.default_rng(5))
        second = random_symplectic(2, np.random.default_rng(5))
        np.testing.assert_array_equal(first.matrix, second.matrix)


class TestSymplecticAct:
    """The action tau -> (A tau + B)(C tau + D)^{-1}."""

    def test_inversion_fixes_i(self, tau_i):
        image = symplectic_act(SymplecticMatrix.from_matrix(INVERSION), tau_i)
        assert image.tau[0, 0] == pytest.approx(1j)

    def test_translation(self, tau_i):
        image = symplectic_act(SymplecticMatrix.from_matrix(TRANSLATION), tau_i)
        assert image.tau[0, 0] == pytest.approx(1 + 1j)

    def test_identity_acts_trivially(self, rng):
        tau = random_siegel_point(3, rng)
        image = symplectic_act(SymplecticMatrix.identity(3), tau)
        np.testing.assert_allclose(image.tau, tau.tau, atol=1e-14)

    def test_action_is_a_group_action(self, rng):
        """(M1 M2) . tau = M1 . (M2 . tau)."""
        tau = random_siegel_point(2, rng)
        M1, M2 = random_symplectic(2, rng), random_symplectic(2, rng)
        direct = symplectic_act(compose(M1, M2), tau)
        nested = symplectic_act(M1, symplectic_act(M2, tau))
        np.testing.assert_allclose(direct.tau, nested.tau, atol=1e-10)

    def test_genus_mismatch(self, tau_i):
        with pytest.raises(DimensionMismatch):
            symplectic_act(SymplecticMatrix.identity(2), tau_i)

    def test_singular_denominator(self):
        """C tau + D = 0 for the inversion at tau = 0."""
        with pytest.raises(SingularDenominator):
            _act_on_matrix(SymplecticMatrix.from_matrix(INVERSION), np.zeros((1, 1)))


class TestSiegelForm:
    """The invariant Kaehler form omega_S."""

    def test_genus_one_at_i(self, tau_i):
        one = TangentDirection.from_matrix([[1.0]])
        assert siegel_form(tau_i, one, one).value == pytest.approx(0.5j)

    def test_disjoint_support_vanishes(self, tau_i2):
        E11 = TangentDirection.from_matrix([[1.0, 0.0], [0.0, 0.0]])
        E22 = TangentDirection.from_matrix([[0.0, 0.0], [0.0, 1.0]])
        assert siegel_form(tau_i2, E11, E22).value == 0j

    def test_zero_direction(self, rng):
        tau = random_siegel_point(2, rng)
        X = random_tangent(2, rng)
        assert siegel_form(tau, X, TangentDirection.zero(2)).value == 0j

    def test_positive_on_diagonal(self, rng):
        """omega_S(X, X) / i is real and positive."""
        tau = random_siegel_point(3, rng)
        X = random_tangent(3, rng)
        value = siegel_form(tau, X, X).divide_by_i()
        assert value.real > 0
        assert abs(value.imag) < 1e-12 * value.real

    def test_rejects_asymmetric_direction(self):
        with pytest.raises(NotSymmetric):
            TangentDirection.from_matrix([[0.0, 1.0], [0.0, 0.0]])

    def test_rejects_non_finite_direction(self):
        with pytest.raises(NotSymmetric, match="non-finite"):
            TangentDirection.from_matrix([[math.nan]])


class TestTangentPushforward:
    """Differential of the symplectic action."""

    def test_translation_has_unit_derivative(self, tau_i):
        X = TangentDirection.from_matrix([[0.7 - 0.2j]])
        image = tangent_pushforward(SymplecticMatrix.from_matrix(TRANSLATION), tau_i, X)
        assert image.X[0, 0] == pytest.approx(0.7 - 0.2j, abs=1e-10)

    def test_inversion_at_i(self, tau_i):
        """The derivative of -1/tau at i is 1/tau^2 = -1."""
        one = TangentDirection.from_matrix([[1.0]])
        image = tangent_pushforward(SymplecticMatrix.from_matrix(INVERSION), tau_i, one)
        assert image.X[0, 0] == pytest.approx(-1.0, abs=1e-10)

    def test_matches_closed_form(self, rng):
        for g in (1, 2, 3):
            tau = random_siegel_point(g, rng)
            M = random_symplectic(g, rng)
            X = random_tangent(g, rng)
            numeric = tangent_pushforward(M, tau, X).X
            closed = tangent_pushforward_closed_form(M, tau, X).X
            scale = np.max(np.abs(closed))
            assert np.max(np.abs(numeric - closed)) < 1e-8 * max(scale, 1.0)

    def test_zero_direction(self, tau_i):
        image = tangent_pushforward(
            SymplecticMatrix.from_matrix(INVERSION), tau_i, TangentDirection.zero(1)
        )
        assert np.all(image.X == 0)

    def test_form_is_invariant(self, rng):
        """omega_S(M.tau; dM X, dM Y) = omega_S(tau; X, Y)."""
        for g in (1, 2, 3):
            for _ in range(5):
                tau = random_siegel_point(g, rng)
                M = random_symplectic(g, rng)
                X, Y = random_tangent(g, rng), random_tangent(g, rng)
                moved = siegel_form(
                    symplectic_act(M, tau),
                    tangent_pushforward(M, tau, X),
                    tangent_pushforward(M, tau, Y),
                )
                assert relative_residual(moved.value, siegel_form(tau, X, Y).value) < 1e-6
