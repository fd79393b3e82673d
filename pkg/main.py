"""Command-line entry point: python main.py <command> [options]."""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import configure_logging, get_setting, update_app_config
from cli import (
    EXIT_IO,
    EXIT_USAGE,
    VerifyConfig,
    cmd_bounds,
    cmd_crawford,
    cmd_dist,
    cmd_equality,
    cmd_radius,
    cmd_range,
    cmd_verify,
)

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _ensemble_pairs(text: str):
    pairs = []
    for item in text.split(","):
        a, sep, b = item.strip().partition(":")
        if not sep or not a or not b:
            raise argparse.ArgumentTypeError(f"expected ensemble pairs like GINIBRE:NORMAL, got {item!r}")
        pairs.append((a, b))
    return pairs


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Numerical radius, Crawford number and tensor-product bound verification."
    )
    parser.add_argument("--log-level", default=None, help="Logging level (defaults to NR_LOG_LEVEL or INFO).")
    parser.add_argument("--eig-method", choices=["lapack", "jacobi"], default=None,
                        help="Hermitian eigensolver used by every sweep.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [("radius", "Numerical radius w(A) with a certificate."),
                            ("crawford", "Crawford number c(A)."),
                            ("dist", "Numerical radius distance d(A) from the scalars.")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("path", help="Matrix JSON file.")
        p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("bounds", help="Evaluate every bound on A kron B.")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)

    p = sub.add_parser("range", help="Export boundary samples of the numerical range as CSV.")
    p.add_argument("path")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("equality", help="Grid check of an equality characterization.")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.add_argument("--which", choices=["half", "quarter"], default="half")
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("verify", help="Randomized soundness sweep over seeded ensembles.")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dims", type=_int_list, default=[2, 3])
    p.add_argument("--ensembles", type=_ensemble_pairs, default=[("GINIBRE", "GINIBRE")],
                   help="Comma list of A:B ensemble pairs, e.g. SQUARE_ZERO:NORMAL,GINIBRE:UNITARY*2")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--quiet", action="store_true", help="Disable the progress bar.")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    success, message = update_app_config({"log_level": args.log_level, "eig_method": args.eig_method,
                                          "verify_workers": getattr(args, "workers", None)})
    if not success:
        print(f"error: {message}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(log_file="verify.log" if args.command == "verify" else None)

    if args.command == "radius":
        return cmd_radius(args.path, args.tol)
    if args.command == "crawford":
        return cmd_crawford(args.path, args.tol)
    if args.command == "dist":
        return cmd_dist(args.path, args.tol)
    if args.command == "bounds":
        return cmd_bounds(args.path_a, args.path_b, args.tol, args.format, args.out)
    if args.command == "range":
        return cmd_range(args.path, args.points, args.out)
    if args.command == "equality":
        return cmd_equality(args.path_a, args.path_b, args.which, args.grid, args.tol)

    try:
        cfg = VerifyConfig(trials=args.trials, dims=args.dims, ensembles=args.ensembles,
                           master_seed=args.seed, tol=args.tol, out_path=args.out, format=args.format,
                           workers=get_setting("verify_workers"), quiet=args.quiet)
    except (ValidationError, ValueError) as e:
        logger.error(f"Invalid verify configuration: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return cmd_verify(cfg)
    except OSError as e:
        logger.error(f"Could not write verify report: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
