"""
Batch execution of the configured identities.

Identities run concurrently in a thread pool; each produces one report, reports
come back in configuration order, and a failing identity never stops the
others.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence, Union

from ..core.config import SuiteConfig
from ..exceptions import IdentityFailed, SiegelKitException
from .identities import applicable_genera, get_runner, identity_rng
from .reports import VerificationReport

logger = logging.getLogger(__name__)


def run_identity(identity: str, config: SuiteConfig) -> VerificationReport:
    """
    Run one identity over every applicable genus of ``config.g_list``.

    Numerical errors are caught, wrapped with the identity name and recorded
    in the report instead of propagating.
    """
    runner = get_runner(identity)
    tolerance = config.tolerance_for(identity)
    genera = applicable_genera(identity, config.g_list)
    logger.info("identity %s: genera=%s samples=%d", identity, genera, config.samples)
    start = time.perf_counter()
    worst: Optional[float] = None
    error: Optional[str] = None
    try:
        if not genera:
            raise ValueError(f"no genus in {config.g_list} is supported")
        for g in genera:
            residual = runner(config, g, identity_rng(config, identity, g))
            worst = residual if worst is None else max(worst, residual)
    except (SiegelKitException, ArithmeticError, ValueError) as exc:
        failure = IdentityFailed(identity, exc)
        logger.warning("%s", failure.detail)
        error, worst = failure.detail, None
    elapsed = 1000.0 * (time.perf_counter() - start)
    report = VerificationReport.build(
        identity_name=identity,
        g=max(genera) if genera else 0,
        samples=config.samples,
        seed=config.seed,
        max_residual=worst,
        tolerance=tolerance,
        wall_time_ms=elapsed,
        error=error,
    )
    logger.info(
        "identity %s: max_residual=%s pass=%s (%.1f ms)",
        identity,
        report.max_residual,
        report.passed,
        elapsed,
    )
    return report


def run_config(
    config: SuiteConfig, max_workers: Optional[int] = None
) -> list[VerificationReport]:
    """Run every identity of ``config``; the result follows config order."""
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda name: run_identity(name, config), config.identities))


def run_suite(
    config_path: Union[str, Path, None] = None,
    only: Optional[Sequence[str]] = None,
    seed: Optional[int] = None,
    max_workers: Optional[int] = None,
) -> list[VerificationReport]:
    """
    Load a suite configuration and run it.

    Args:
        config_path: JSON configuration; defaults apply when omitted.
        only: Restrict the run to these identities.
        seed: Override the configured seed.
        max_workers: Thread pool size.

    Returns:
        One VerificationReport per identity, in configuration order.

    Raises:
        ConfigParseError: If the configuration file cannot be read or parsed.
        UnknownIdentity: If the configuration or ``only`` names an unknown identity.
    """
    config = SuiteConfig.from_file(config_path) if config_path else SuiteConfig()
    update: dict = {}
    if only:
        update["identities"] = list(only)
    if seed is not None:
        update["seed"] = seed
    if update:
        config = SuiteConfig.model_validate({**config.model_dump(), **update})
    return run_config(config, max_workers=max_workers)


def exit_code(reports: Sequence[VerificationReport]) -> int:
    """0 when every report passes, 1 otherwise."""
    return 0 if all(report.passed for report in reports) else 1


def to_json_lines(reports: Sequence[VerificationReport], include_timing: bool = True) -> str:
    return "\n".join(report.to_json_line(include_timing) for report in reports)
