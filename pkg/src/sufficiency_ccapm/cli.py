#!/usr/bin/env python3
"""
Sufficiency CCAPM command line

Subcommands: calibrate | price | premium | classify | simulate.
Reports go to stdout as a text table, or as JSON with --json.
Exit codes: 0 success, 1 input error, 2 numerical failure.
"""

import argparse
import sys
from typing import List, NoReturn, Optional

from . import __version__
from .commands import cmd_calibrate, cmd_classify, cmd_premium, cmd_price, cmd_simulate
from .core.config import get_config, validate_config
from .core.errors import EXIT_INPUT_ERROR, EXIT_OK, CcapmError, ConvergenceError, float_errors_as_numerical
from .core.formatting import format_number
from .core.log import configure_logging
from .models.risk_behavior import PremiumMethod
from .report import Report
from .statsfile import load_stats_file


class CcapmArgumentParser(argparse.ArgumentParser):
    """Argument errors exit with 1; exit code 2 belongs to numerical failures."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _add_output_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="Emit the structured report instead of text")


def _add_growth_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mu", type=float, help="Mean of ln x (default: bundled Table 1 economy)")
    parser.add_argument("--sigma2", type=float, help="Variance of ln x (default: bundled Table 1 economy)")


def build_parser() -> argparse.ArgumentParser:
    parser = CcapmArgumentParser(
        prog="sufficiency-ccapm",
        description="Consumption CAPM with sufficiency factors: calibration, pricing, premia and simulation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    calibrate = commands.add_parser("calibrate", help="Solve the calibration system and print its manifold")
    calibrate.add_argument("stats", nargs="?", help="Statistics file (key = value or .json); default: bundled Table 1")
    calibrate.add_argument("--beta", type=float, help="Override the file's discount factor")
    calibrate.add_argument(
        "--paper-constants",
        action="store_true",
        help="Use the printed six-decimal coefficients instead of deriving them",
    )
    calibrate.add_argument(
        "--guess",
        type=float,
        nargs=3,
        metavar=("ZETA", "XI", "RHO"),
        help="Initial guess for the solver (default: 1 1 2)",
    )
    calibrate.add_argument("--samples", type=int, help="Number of manifold points to tabulate")
    calibrate.add_argument("--rho-max", type=float, help="Largest rho in the manifold table")
    _add_output_flag(calibrate)

    price = commands.add_parser("price", help="Closed-form equity price, expected return and risk-free rate")
    price.add_argument("--rho", type=float, required=True)
    price.add_argument("--zeta", type=float, default=1.0)
    price.add_argument("--xi", type=float, default=1.0)
    price.add_argument("--beta", type=float)
    _add_growth_flags(price)
    price.add_argument("--sigma-xz", type=float, help="Covariance of ln x and ln z (default: sigma2)")
    price.add_argument("--mu-z", type=float, help="Mean of ln z (default: mu)")
    price.add_argument("--sigma2-z", type=float, help="Variance of ln z (default: sigma2)")
    _add_output_flag(price)

    premium = commands.add_parser("premium", help="Risk premium of moving from w_s to an uncertain w_ns")
    premium.add_argument("--rho", type=float, required=True)
    premium.add_argument("--w-s", type=float, required=True, dest="w_s")
    premium.add_argument("--w-ns", type=float, required=True, dest="w_ns")
    premium.add_argument("--beta", type=float)
    premium.add_argument("--eta", type=float, default=1.0)
    premium.add_argument(
        "--delta",
        type=float,
        help="Credit beta * u(w_ns) - delta to the prediction instead of scaling it by eta",
    )
    premium.add_argument(
        "--method",
        choices=[PremiumMethod.EXACT.value, PremiumMethod.FIRST_ORDER.value, "eq27"],
        default=PremiumMethod.EXACT.value,
    )
    premium.add_argument(
        "--literal",
        action="store_true",
        help="eq27 only: weight by rho instead of the absolute risk aversion",
    )
    _add_output_flag(premium)

    classify = commands.add_parser("classify", help="Risk-averse, risk-loving or risk-neutral")
    classify.add_argument("--rho", type=float, required=True)
    classify.add_argument("--w-t", type=float, required=True, dest="w_t", help="Certain wealth")
    classify.add_argument("--w-T", type=float, required=True, dest="w_T", help="Guessed uncertain wealth")
    classify.add_argument("--beta", type=float)
    classify.add_argument("--eta", type=float, default=1.0)
    classify.add_argument("--tol", type=float, help="Risk-neutral band (relative)")
    _add_output_flag(classify)

    simulate = commands.add_parser("simulate", help="Monte Carlo cross-check of the closed forms")
    simulate.add_argument("--rho", type=float, required=True)
    simulate.add_argument("--zeta", type=float, default=1.0)
    simulate.add_argument("--xi", type=float, default=1.0)
    simulate.add_argument("--beta", type=float)
    _add_growth_flags(simulate)
    simulate.add_argument("--periods", type=int, dest="num_periods")
    simulate.add_argument("--seed", type=int)
    simulate.add_argument("--workers", type=int)
    simulate.add_argument("--chunk-size", type=int)
    _add_output_flag(simulate)

    return parser


def _run(args: argparse.Namespace) -> Report:
    if args.command == "calibrate":
        stats = load_stats_file(args.stats) if args.stats else None
        return cmd_calibrate(
            stats=stats,
            beta=args.beta,
            paper_constants=args.paper_constants,
            initial_guess=tuple(args.guess) if args.guess else None,
            samples=args.samples,
            rho_max=args.rho_max,
        )
    if args.command == "price":
        return cmd_price(
            rho=args.rho,
            zeta=args.zeta,
            xi=args.xi,
            beta=args.beta,
            mu=args.mu,
            sigma2=args.sigma2,
            sigma_xz=args.sigma_xz,
            mu_z=args.mu_z,
            sigma2_z=args.sigma2_z,
        )
    if args.command == "premium":
        return cmd_premium(
            rho=args.rho,
            w_s=args.w_s,
            w_ns=args.w_ns,
            beta=args.beta,
            eta=args.eta,
            method=args.method,
            literal=args.literal,
            delta=args.delta,
        )
    if args.command == "classify":
        return cmd_classify(rho=args.rho, w_t=args.w_t, w_T=args.w_T, beta=args.beta, eta=args.eta, tol=args.tol)
    return cmd_simulate(
        rho=args.rho,
        zeta=args.zeta,
        xi=args.xi,
        beta=args.beta,
        mu=args.mu,
        sigma2=args.sigma2,
        num_periods=args.num_periods,
        seed=args.seed,
        workers=args.workers,
        chunk_size=args.chunk_size,
    )


def _report_error(error: CcapmError) -> None:
    print(f"error: {error}", file=sys.stderr)
    if isinstance(error, ConvergenceError):
        iterate = ", ".join(format_number(v) for v in error.last_iterate)
        print(f"  last iterate (zeta, xi, rho): ({iterate})", file=sys.stderr)
        print(f"  sse: {format_number(error.sse)} after {error.iterations} iterations", file=sys.stderr)


def main(argv: Optional[List[str]] = None) -> int:
    """Command-line entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if not validate_config():
        print("Please check your .env file configuration.", file=sys.stderr)
        return EXIT_INPUT_ERROR
    configure_logging(get_config())

    try:
        with float_errors_as_numerical():
            report = _run(args)
    except CcapmError as e:
        _report_error(e)
        return e.exit_code

    sys.stdout.write(report.to_json() + "\n" if args.json else report.render_text())
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
