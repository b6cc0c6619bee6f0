"""Tests for the spectral cross-check of the torsion formula."""

import math

import numpy as np
import pytest

from siegelkit.verification.spectral import (
    LANDAU_NORMALIZATION,
    landau_torsion,
    magnetic_laplacian,
    spectral_torsion_check,
)


class TestLandauModel:
    def test_closed_form(self):
        """With spacing d the Landau torsion is (d/2) log(2 pi / d)."""
        for d in (1, 2, 3):
            assert landau_torsion(d, float(d)) == pytest.approx(0.5 * d * math.log(2 * math.pi / d))

    def test_vanishes_at_two_pi(self):
        assert landau_torsion(4, 2 * math.pi) == pytest.approx(0.0, abs=1e-14)


class TestMagneticLaplacian:
    def test_hermitian(self):
        operator = magnetic_laplacian(2, 8)
        assert abs(operator - operator.conj().T).max() < 1e-12

    def test_free_laplacian_has_zero_mode(self):
        """Without flux the constant function is harmonic."""
        operator = magnetic_laplacian(0, 6)
        assert np.max(np.abs(operator @ np.ones(36))) < 1e-9

    def test_rejects_non_dividing_degree(self):
        with pytest.raises(ValueError):
            spectral_torsion_check(d=3, n_grid=16)


@pytest.mark.slow
class TestSpectralTorsion:
    def test_matches_closed_form(self):
        result = spectral_torsion_check(d=2, n_grid=64)
        assert result.residual < 1e-2
        assert result.cluster_spread < 1e-2
        assert result.model_deviation < 1e-2
        assert result.torsion_closed_form == pytest.approx(math.log(math.pi))

    def test_raw_spacing_is_the_continuum_value(self):
        """Before normalization the spacing is 4 pi d, the continuum Landau gap."""
        result = spectral_torsion_check(d=2, n_grid=64)
        assert result.raw_spacing == pytest.approx(LANDAU_NORMALIZATION * 2, rel=1e-2)
        assert result.spacing == pytest.approx(result.raw_spacing / LANDAU_NORMALIZATION)

    def test_spacing_grows_linearly_in_degree(self):
        """The ratio of spacings does not depend on the normalization constant."""
        one = spectral_torsion_check(d=1, n_grid=64)
        two = spectral_torsion_check(d=2, n_grid=64)
        assert two.raw_spacing / one.raw_spacing == pytest.approx(2.0, rel=1e-2)
        assert one.residual < 1e-2
