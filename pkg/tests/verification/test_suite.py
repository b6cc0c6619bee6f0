"""Tests for the concurrent verification suite."""

import json

import pytest

from siegelkit.core.config import SuiteConfig
from siegelkit.exceptions import ConfigParseError, RadiusCapExceeded, UnknownIdentity
from siegelkit.verification import (
    exit_code,
    identities,
    run_config,
    run_identity,
    run_suite,
    to_json_lines,
)


class TestRunIdentity:
    def test_torsion(self):
        report = run_identity("torsion", SuiteConfig(identities=["torsion"], g_list=[1, 2, 3]))
        assert report.passed
        assert report.g == 3
        assert report.max_residual < 1e-14

    def test_no_applicable_genus(self):
        report = run_identity("norms", SuiteConfig(identities=["norms"], g_list=[3]))
        assert not report.passed
        assert report.max_residual is None
        assert "norms" in report.error

    def test_numeric_error_is_wrapped(self, monkeypatch):
        def explode(config, g, rng):
            raise RadiusCapExceeded("radius 99 exceeds cap 40")

        monkeypatch.setitem(identities.IDENTITY_RUNNERS, "torsion", explode)
        report = run_identity("torsion", SuiteConfig(identities=["torsion"]))
        assert not report.passed
        assert report.max_residual is None
        assert report.error.startswith("torsion: RadiusCapExceeded")


class TestRunSuite:
    """Suite-level behaviour: selection, ordering, isolation, determinism."""

    def test_only_torsion(self):
        reports = run_suite(only=["torsion"])
        assert len(reports) == 1
        assert reports[0].identity_name == "torsion"
        assert reports[0].max_residual < 1e-14
        assert exit_code(reports) == 0

    def test_order_follows_config(self):
        order = ["symplectic-invariance", "torsion", "curvature:hodge"]
        reports = run_config(SuiteConfig(identities=order, samples=2), max_workers=3)
        assert [report.identity_name for report in reports] == order

    def test_zero_tolerance_fails(self, suite_config_file):
        path = suite_config_file(
            {
                "identities": ["curvature:hodge", "curvature:root"],
                "samples": 2,
                "tolerances": {"curvature:hodge": 0.0, "curvature:root": 0.0},
            }
        )
        reports = run_suite(path)
        assert len(reports) == 2
        assert not any(report.passed for report in reports)
        assert exit_code(reports) == 1

    def test_failure_does_not_abort_others(self, monkeypatch):
        def explode(config, g, rng):
            raise ArithmeticError("overflow")

        monkeypatch.setitem(identities.IDENTITY_RUNNERS, "symplectic-invariance", explode)
        reports = run_suite(only=["symplectic-invariance", "torsion"])
        assert [report.passed for report in reports] == [False, True]
        assert exit_code(reports) == 1

    def test_deterministic_output(self, suite_config_file):
        path = suite_config_file(
            {
                "identities": ["torsion", "curvature:hodge", "quasi-periodicity"],
                "samples": 2,
                "seed": 99,
            }
        )
        first = to_json_lines(run_suite(path), include_timing=False)
        second = to_json_lines(run_suite(path, max_workers=1), include_timing=False)
        assert first == second

    def test_seed_override(self):
        reports = run_suite(only=["symplectic-invariance"], seed=5)
        assert reports[0].seed == 5

    def test_json_lines(self):
        lines = to_json_lines(run_suite(only=["torsion", "curvature:hodge"])).splitlines()
        assert [json.loads(line)["identity_name"] for line in lines] == [
            "torsion",
            "curvature:hodge",
        ]

    def test_unknown_identity(self):
        with pytest.raises(UnknownIdentity):
            run_suite(only=["curvature:ricci"])

    def test_missing_config(self, tmp_path):
        with pytest.raises(ConfigParseError):
            run_suite(tmp_path / "nope.json")

    @pytest.mark.slow
    def test_default_config_passes(self):
        reports = run_suite()
        assert len(reports) == 9
        assert all(report.passed for report in reports), to_json_lines(reports)
