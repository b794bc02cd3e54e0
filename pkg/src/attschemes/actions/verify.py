"""
Verify action: run a verification scope and emit a schema-versioned report.
"""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from attschemes.actions.build import add_scheme_arguments
from attschemes.data_models.report import VerificationReport
from attschemes.utils.config import ENV_BASES, ENV_RANK_LIMIT, ENV_THREADS, RunConfig
from attschemes.utils.output_formatter import format_output
from attschemes.utils.scheme_io import load_scheme
from attschemes.verifiers import SCOPES, VerificationContext, get_verifier
from attschemes.verifiers.base_verifier import POISON_TABLES

logger = logging.getLogger(__name__)


def setup_verify_parser(subparsers) -> None:
    """
    Set up the verify command parser.

    Args:
        subparsers: The subparsers object from argparse
    """
    verify_parser = subparsers.add_parser(
        "verify",
        help="Verify the identities of a scheme",
        description="Run the selected checks against a scheme file or inline parameters. Exit code 0 iff every check passes.",
    )
    verify_parser.add_argument("--scope", choices=SCOPES, default=None, help="Checks to run (default: all)")
    verify_parser.add_argument("-i", "--input", type=Path, default=None, help="Scheme file written by build (instead of -q/-n/-l/-m)")
    add_scheme_arguments(verify_parser)
    verify_parser.add_argument("-r", type=int, default=None, dest="r", help="Alphabet size of J_r(n,m) for the johnson scope (with -n, -m)")
    verify_parser.add_argument("-o", "--output", type=Path, default=None, help="Output JSON report path (default: stdout)")
    verify_parser.add_argument(
        "--bases",
        default=None,
        help=f"Comma-separated base vertices for the subconstituent scope (or {ENV_BASES} env var, default: first, middle, last)",
    )
    verify_parser.add_argument("--threads", type=int, default=None, help=f"Worker threads (or {ENV_THREADS} env var, default: CPU count)")
    verify_parser.add_argument(
        "--rank-limit", type=int, default=None, dest="rank_limit", help=f"Largest |X| ranked by elimination (or {ENV_RANK_LIMIT} env var, default: 200)"
    )
    verify_parser.add_argument(
        "--no-timings", action="store_true", default=None, dest="no_timings", help="Omit wall-clock timings so reports are byte-identical"
    )
    verify_parser.add_argument("--poison", choices=POISON_TABLES, default=None, help="Corrupt one formula entry of the p or q table (harness self-test)")
    verify_parser.add_argument("--config", type=Path, default=None, help="JSON file with run settings (command-line values take priority)")
    verify_parser.set_defaults(func=run_verify)


def run_verify(args) -> int:
    """
    Run the verify action.

    Args:
        args: Parsed command line arguments

    Returns:
        Exit code
    """
    config = RunConfig.from_args(args)
    return verify_scheme(
        config=config,
        scope=config.extra.get("scope", "all"),
        include_timings=not getattr(args, "no_timings", False),
        poison=getattr(args, "poison", None),
    )


def verify_scheme(config: RunConfig, scope: str = "all", include_timings: bool = True, poison: Optional[str] = None) -> int:
    """
    Run one scope and write its report.

    Args:
        config: Resolved run configuration
        scope: Scope name
        include_timings: Include per-check wall-clock seconds
        poison: Formula table to corrupt, if any

    Returns:
        Exit code (0 if every check passed, 2 otherwise)
    """
    instance = load_scheme(config.input_path) if config.input_path is not None else None
    context = VerificationContext(params=config.params, johnson=config.johnson, instance=instance, threads=config.threads)
    verifier = get_verifier(scope, threads=config.threads, rank_limit=config.rank_limit, bases=config.bases, poison=poison)

    print(f"Verifying scope {scope}...", file=sys.stderr)
    report = VerificationReport(_report_params(context), scope)
    report.extend(verifier.verify(context))
    format_output(report.to_dict(include_timings), config.output_path)
    for line in summarize(report):
        logger.info(line)

    if report.passed:
        print(f"  All {len(report.checks)} checks passed", file=sys.stderr)
        return 0
    print(f"  Failed checks: {', '.join(report.failed_checks)}", file=sys.stderr)
    return 2


def _report_params(context: VerificationContext) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    if context.params is not None:
        params.update(context.params.to_dict())
    if context.johnson is not None:
        params["johnson"] = context.johnson.to_dict()
    return params


def summarize(report: VerificationReport) -> List[str]:
    """One line per check, for -v runs."""
    return [f"{check.status:4}  {check.name}  ({check.checked} checked)" for check in report.checks]
