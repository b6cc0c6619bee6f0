"""
Command-line entry point.

    siegelkit theta eval --tau FILE --z "re,im;..." --char "a;b" --eps 1e-14
    siegelkit verify norms --g 1 [--tau FILE] --n 64
    siegelkit verify torsion --g N
    siegelkit verify curvature --identity hodge --g N --samples K --seed S
    siegelkit run [--config PATH] [--only IDENTITY ...] [--json] [--seed N]

Results go to stdout as JSON, logs to stderr. Exit codes: 0 pass, 1 verification
failure, 2 usage or configuration error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .core.config import FDConfig, QuadratureGrid, TruncationPolicy
from .core.curvature import (
    CURVATURE_IDENTITIES,
    verify_c1_theta_bundle,
    verify_hodge_curvature,
    verify_hodge_line_curvature,
    verify_root_curvature,
    verify_theta_det_curvature,
)
from .core.detline import log_quillen_factor_principal, torsion_report
from .core.forms import relative_residual
from .core.metrics import gram_matrix
from .core.serialization import (
    complex_to_json,
    load_siegel_point,
    parse_characteristic,
    parse_complex_vector,
)
from .core.siegel import (
    SiegelPoint,
    random_siegel_point,
    random_tangent,
    validate_siegel,
)
from .core.theta import ThetaCharacteristic, theta_eval_detailed
from .exceptions import (
    ConfigParseError,
    DimensionMismatch,
    ImaginaryPartNotPositiveDefinite,
    InvalidPolicy,
    LeftSiegelDomain,
    NotSymmetric,
    SiegelKitException,
    UnknownIdentity,
)
from .verification import exit_code, run_suite, to_json_lines

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# malformed input rather than a failed verification
USAGE_ERRORS = (
    ConfigParseError,
    UnknownIdentity,
    InvalidPolicy,
    DimensionMismatch,
    NotSymmetric,
    ImaginaryPartNotPositiveDefinite,
)

MAX_STEP_RETRIES = 2
TORSION_TOLERANCE = 1e-13

SIEGEL_VERIFIERS = {
    "hodge": verify_hodge_curvature,
    "hodge-line": verify_hodge_line_curvature,
    "theta-det": verify_theta_det_curvature,
    "root": verify_root_curvature,
}


def _emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload) + "\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _load_tau(path: Optional[str], g: int) -> SiegelPoint:
    if path is None:
        return validate_siegel(1j * np.eye(g))
    tau = load_siegel_point(path)
    if tau.g != g:
        raise ConfigParseError(f"{path} holds a genus {tau.g} point, expected g={g}")
    return tau


# ------------- Subcommands -------------
def cmd_theta_eval(args: argparse.Namespace) -> int:
    tau = load_siegel_point(args.tau)
    z = parse_complex_vector(args.z)
    if args.char:
        a, b = parse_characteristic(args.char)
        char = ThetaCharacteristic(a=a, b=b)
    else:
        char = ThetaCharacteristic.zero(tau.g)
    policy = TruncationPolicy.build(epsilon=args.eps, max_radius=args.max_radius)
    result = theta_eval_detailed(char, z, tau, policy)
    payload = complex_to_json(result.value)
    payload.update(terms=result.terms, radius=result.radius)
    _emit(payload)
    return EXIT_PASS


def cmd_verify_norms(args: argparse.Namespace) -> int:
    tau = _load_tau(args.tau, args.g)
    grid = QuadratureGrid(g=args.g, n_per_dim=args.n or QuadratureGrid.default_for(args.g).n_per_dim)
    gram = gram_matrix(tau, grid)
    expected = tau.det_imag**-0.5
    deviation = float(np.max(np.abs(gram - expected * np.eye(gram.shape[0]))))
    _emit(
        {
            "gram": [[complex_to_json(entry) for entry in row] for row in gram],
            "expected": expected,
            "max_abs_dev": deviation,
        }
    )
    return EXIT_PASS if deviation <= args.tolerance else EXIT_FAIL


def cmd_verify_torsion(args: argparse.Namespace) -> int:
    readings = torsion_report(args.g)
    matches = (
        relative_residual(
            readings.line.log_quillen_factor, log_quillen_factor_principal(args.g)
        )
        <= TORSION_TOLERANCE
    )
    _emit(
        {
            "T": readings.line.torsion,
            "quillen_factor": readings.line.quillen_factor,
            "matches_closed_form": matches,
            "T_square": readings.square.torsion,
        }
    )
    return EXIT_PASS if matches else EXIT_FAIL


def _curvature_sample(
    identity: str, g: int, rng: np.random.Generator
) -> Callable[[FDConfig], float]:
    tau = random_siegel_point(g, rng)
    if identity == "c1":
        z, V, W = (rng.standard_normal(g) + 1j * rng.standard_normal(g) for _ in range(3))
        return lambda cfg: verify_c1_theta_bundle(tau, z, V, W, cfg)
    X, Y = random_tangent(g, rng), random_tangent(g, rng)
    verifier = SIEGEL_VERIFIERS[identity]
    return lambda cfg: verifier(tau, X, Y, cfg)


def _with_retries(check: Callable[[FDConfig], float], cfg: FDConfig) -> float:
    for attempt in range(MAX_STEP_RETRIES + 1):
        try:
            return check(cfg)
        except LeftSiegelDomain:
            if attempt == MAX_STEP_RETRIES:
                raise
            logger.warning("stencil left the Siegel space at step %.1e; retrying", cfg.step)
            cfg = cfg.with_step(cfg.step / 10.0)
    raise AssertionError("unreachable")  # pragma: no cover


def cmd_verify_curvature(args: argparse.Namespace) -> int:
    if args.identity == "c1" and args.g > 2:
        raise ConfigParseError("the c1 identity is verified for g <= 2")
    rng = np.random.default_rng(args.seed)
    cfg = FDConfig(step=args.step)
    worst = 0.0
    for _ in range(args.samples):
        worst = max(worst, _with_retries(_curvature_sample(args.identity, args.g, rng), cfg))
    passed = worst <= args.tolerance
    _emit({"max_residual": worst, "samples": args.samples, "pass": passed})
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_run(args: argparse.Namespace) -> int:
    reports = run_suite(args.config, only=args.only, seed=args.seed)
    if args.json:
        sys.stdout.write(to_json_lines(reports) + "\n")
    else:
        for report in reports:
            status = "PASS" if report.passed else "FAIL"
            residual = "-" if report.max_residual is None else f"{report.max_residual:.3e}"
            sys.stdout.write(
                f"{status}  {report.identity_name:<24} g<={report.g}  "
                f"residual={residual}  tol={report.tolerance:.1e}  "
                f"{report.wall_time_ms:.0f} ms\n"
            )
            if report.error:
                sys.stdout.write(f"      {report.error}\n")
    return exit_code(reports)


# ------------- Parser -------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelkit",
        description="Numerical verification of metric, curvature and torsion identities "
        "on the Siegel upper half space.",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level for messages on stderr.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    theta = commands.add_parser("theta", help="Theta function evaluation.")
    theta_commands = theta.add_subparsers(dest="theta_command", required=True)
    evaluate = theta_commands.add_parser("eval", help="Evaluate theta[a, b](z, tau).")
    evaluate.add_argument("--tau", required=True, help="JSON file holding the Siegel point.")
    evaluate.add_argument("--z", required=True, help='Complex vector "re,im;re,im;...".')
    evaluate.add_argument("--char", default=None, help='Characteristic "a1,a2;b1,b2".')
    evaluate.add_argument("--eps", type=float, default=1e-14)
    evaluate.add_argument("--max-radius", type=float, default=40.0)
    evaluate.set_defaults(handler=cmd_theta_eval)

    verify = commands.add_parser("verify", help="Verify a single identity.")
    verify_commands = verify.add_subparsers(dest="verify_command", required=True)

    norms = verify_commands.add_parser("norms", help="Gram matrix of the second-order basis.")
    norms.add_argument("--g", type=int, default=1, choices=[1, 2])
    norms.add_argument("--tau", default=None, help="JSON file; defaults to i * identity.")
    norms.add_argument("--n", type=int, default=None, help="Nodes per real direction.")
    norms.add_argument("--tolerance", type=float, default=1e-6)
    norms.set_defaults(handler=cmd_verify_norms)

    torsion = verify_commands.add_parser("torsion", help="Closed-form torsion constants.")
    torsion.add_argument("--g", type=_positive_int, default=1)
    torsion.set_defaults(handler=cmd_verify_torsion)

    curvature = verify_commands.add_parser("curvature", help="Finite-difference curvature.")
    curvature.add_argument("--identity", required=True, choices=list(CURVATURE_IDENTITIES))
    curvature.add_argument("--g", type=int, default=1)
    curvature.add_argument("--samples", type=int, default=5)
    curvature.add_argument("--seed", type=int, default=0)
    curvature.add_argument("--step", type=float, default=1e-3)
    curvature.add_argument("--tolerance", type=float, default=1e-6)
    curvature.set_defaults(handler=cmd_verify_curvature)

    run = commands.add_parser("run", help="Run the verification suite.")
    run.add_argument("--config", default=None, help="JSON suite configuration.")
    run.add_argument("--only", action="append", default=None, help="Identity to run; repeatable.")
    run.add_argument("--json", action="store_true", help="Emit JSON lines.")
    run.add_argument("--seed", type=int, default=None)
    run.set_defaults(handler=cmd_run)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return int(args.handler(args))
    except USAGE_ERRORS as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_USAGE
    except SiegelKitException as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAIL
    except ArithmeticError as exc:
        logger.error("numerical failure: %s", exc)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
