"""Tests for VerificationReport."""

import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from siegelkit.verification import VerificationReport


class TestVerificationReport:
    def test_pass_follows_tolerance(self):
        assert VerificationReport.build("norms", 2, 5, 1, 1e-9, 1e-6, 10.0).passed
        assert not VerificationReport.build("norms", 2, 5, 1, 1e-3, 1e-6, 10.0).passed

    def test_boundary_passes(self):
        assert VerificationReport.build("torsion", 1, 1, 0, 1e-13, 1e-13, 0.0).passed

    def test_inconsistent_pass_rejected(self):
        with pytest.raises(ValidationError):
            VerificationReport(
                identity_name="norms",
                g=1,
                samples=1,
                seed=0,
                max_residual=1.0,
                tolerance=1e-6,
                passed=True,
                wall_time_ms=0.0,
            )

    def test_non_finite_residual_fails(self):
        report = VerificationReport.build("norms", 1, 1, 0, math.nan, 1e-6, 0.0)
        assert report.max_residual is None
        assert not report.passed
        assert "non-finite" in report.error

    def test_error_report(self):
        report = VerificationReport.build("norms", 1, 1, 0, None, 1e-6, 0.0, error="boom")
        assert not report.passed
        assert report.error == "boom"

    def test_json_line_uses_pass_alias(self):
        line = VerificationReport.build("torsion", 3, 5, 9, 0.0, 1e-13, 1.5).to_json_line()
        payload = json.loads(line)
        assert payload["pass"] is True
        assert "passed" not in payload
        assert payload["wall_time_ms"] == 1.5

    def test_json_line_without_timing(self):
        line = VerificationReport.build("torsion", 3, 5, 9, 0.0, 1e-13, 1.5).to_json_line(False)
        assert "wall_time_ms" not in json.loads(line)

    def test_populate_by_alias(self):
        payload = json.loads(VerificationReport.build("norms", 1, 1, 0, 0.0, 1.0, 0.0).to_json_line())
        assert VerificationReport.model_validate(payload).passed

    def test_numpy_residual_gives_plain_types(self, recwarn):
        report = VerificationReport.build("norms", 1, 1, 0, np.float64(1e-9), 1e-6, 0.0)
        assert report.passed is True
        assert type(report.max_residual) is float
        assert json.loads(report.to_json_line())["pass"] is True
        assert not [w for w in recwarn if issubclass(w.category, DeprecationWarning)]

    def test_numpy_failure_gives_plain_false(self):
        report = VerificationReport.build("norms", 1, 1, 0, np.float64(1.0), 1e-6, 0.0)
        assert report.passed is False
