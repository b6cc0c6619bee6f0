import json

import numpy as np
import pytest

from siegelkit.core.curvature import conventions
from siegelkit.core.siegel import SiegelPoint, validate_siegel


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def tau_i() -> SiegelPoint:
    return validate_siegel([[1j]])


@pytest.fixture
def tau_i2() -> SiegelPoint:
    return validate_siegel(1j * np.eye(2))


@pytest.fixture
def tau_file(tmp_path):
    """Write a Siegel point in the JSON encoding and return its path."""

    def write(tau, name: str = "tau.json"):
        matrix = np.atleast_2d(np.asarray(tau, dtype=np.complex128))
        path = tmp_path / name
        path.write_text(
            json.dumps(
                {
                    "g": matrix.shape[0],
                    "tau_re": matrix.real.tolist(),
                    "tau_im": matrix.imag.tolist(),
                }
            ),
            encoding="utf-8",
        )
        return path

    return write


@pytest.fixture
def suite_config_file(tmp_path):
    def write(payload: dict, name: str = "suite.json"):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    return write


@pytest.fixture
def flipped_convention(monkeypatch):
    """Negate every entry of the curvature conversion table."""
    original = conventions.curvature_form_coefficient
    monkeypatch.setattr(
        conventions,
        "curvature_form_coefficient",
        lambda identity, g: -original(identity, g),
    )
