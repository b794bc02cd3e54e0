"""
Limit action: check that the attenuated-space eigenvalues approach those of
J_r(n, m) as q = p^h -> 1 with q^ell = r - 1 held fixed.
"""

import sys
from pathlib import Path
from typing import Optional

from attschemes.data_models.report import VerificationReport
from attschemes.mods.johnson import LimitConfig, intersection_limit_report, limit_check
from attschemes.utils.config import ENV_PRECISION, ENV_THREADS, RunConfig, get_int_param
from attschemes.utils.output_formatter import format_output


def setup_limit_parser(subparsers) -> None:
    """
    Set up the limit command parser.

    Args:
        subparsers: The subparsers object from argparse
    """
    limit_parser = subparsers.add_parser(
        "limit",
        help="Check the q -> 1 limit against the non-binary Johnson scheme",
        description="Evaluates T and U at q = p^h for h = 2^-k, k = h-min-exp..h-max-exp, in high precision.",
    )
    limit_parser.add_argument("-p", type=int, default=None, dest="p", help="Prime base of q = p^h")
    limit_parser.add_argument("-r", type=int, default=None, dest="r", help="Alphabet size r of J_r(n,m) (r >= 3)")
    limit_parser.add_argument("-n", type=int, default=None, dest="n", help="Word length n")
    limit_parser.add_argument("-m", type=int, default=None, dest="m", help="Word weight m")
    limit_parser.add_argument("--h-min-exp", type=int, default=None, dest="h_min_exp", help="Smallest k in h = 2^-k (default: 4)")
    limit_parser.add_argument("--h-max-exp", type=int, default=None, dest="h_max_exp", help="Largest k in h = 2^-k (default: 20)")
    limit_parser.add_argument("--precision", type=int, default=None, help=f"Working precision in bits (or {ENV_PRECISION} env var, default: 256)")
    limit_parser.add_argument(
        "--intersections", action="store_true", default=None, help="Add a report of generator intersection numbers at the last h (not asserted)"
    )
    limit_parser.add_argument("--threads", type=int, default=None, help=f"Worker threads for the intersection report (or {ENV_THREADS} env var)")
    limit_parser.add_argument("-o", "--output", type=Path, default=None, help="Output JSON report path (default: stdout)")
    limit_parser.add_argument("--config", type=Path, default=None, help="JSON file with run settings (command-line values take priority)")
    limit_parser.set_defaults(func=run_limit)


def run_limit(args) -> int:
    """
    Run the limit action.

    Args:
        args: Parsed command line arguments

    Returns:
        Exit code
    """
    config = RunConfig.from_args(args)
    johnson = config.johnson
    p = get_int_param("p", None, config.extra)
    if johnson is None or p is None:
        print("Error: -p, -r, -n and -m are required", file=sys.stderr)
        return 1
    low, high = config.exponents
    limit_config = LimitConfig(p=p, r=johnson.r, n=johnson.n, m=johnson.m, exponents=list(range(low, high + 1)), precision=config.precision)
    return check_limit(limit_config, config.output_path, intersections=bool(getattr(args, "intersections", False)), threads=config.threads)


def check_limit(limit_config: LimitConfig, output_path: Optional[Path] = None, intersections: bool = False, threads: int = 1) -> int:
    """
    Run the convergence checks and write the report.

    Returns:
        Exit code (0 if every quantity converged, 2 otherwise)
    """
    print(f"Evaluating {len(limit_config.exponents)} points at {limit_config.precision} bits...", file=sys.stderr)
    results, sequences = limit_check(limit_config)
    report = VerificationReport({"p": limit_config.p, **limit_config.johnson.to_dict()}, "limit")
    report.extend(results)
    output = report.to_dict(include_timings=False)
    output["sequences"] = sequences
    if intersections:
        output["intersections"] = intersection_limit_report(limit_config, threads=threads)
    format_output(output, output_path)

    if report.passed:
        print(f"  {len(sequences)} sequences converged", file=sys.stderr)
        return 0
    print(f"  Failed checks: {', '.join(report.failed_checks)}", file=sys.stderr)
    return 2
