"""
Embed action: map J_(q^ell + 1)(n, m) into A_q(n, ell, m) and check the map exhaustively.
"""

import sys
from pathlib import Path
from typing import Optional

from attschemes.actions.build import add_scheme_arguments
from attschemes.data_models.report import VerificationReport
from attschemes.data_models.scheme_params import SchemeParams
from attschemes.mods.johnson import MAX_JOHNSON_VERTICES, embedding_phi
from attschemes.utils.config import RunConfig
from attschemes.utils.output_formatter import format_output


def setup_embed_parser(subparsers) -> None:
    """
    Set up the embed command parser.

    Args:
        subparsers: The subparsers object from argparse
    """
    embed_parser = subparsers.add_parser("embed", help="Check the embedding of J_(q^ell+1)(n,m) into A_q(n,ell,m)")
    add_scheme_arguments(embed_parser)
    embed_parser.add_argument("--show-map", action="store_true", default=None, dest="show_map", help="Include the word -> vertex index map in the report")
    embed_parser.add_argument("-o", "--output", type=Path, default=None, help="Output JSON report path (default: stdout)")
    embed_parser.add_argument("--config", type=Path, default=None, help="JSON file with run settings (command-line values take priority)")
    embed_parser.set_defaults(func=run_embed)


def run_embed(args) -> int:
    """
    Run the embed action.

    Args:
        args: Parsed command line arguments

    Returns:
        Exit code
    """
    config = RunConfig.from_args(args)
    if config.params is None:
        print("Error: -q, -n, -l and -m are required", file=sys.stderr)
        return 1
    return check_embedding(config.params, config.output_path, show_map=bool(getattr(args, "show_map", False)))


def check_embedding(params: SchemeParams, output_path: Optional[Path] = None, show_map: bool = False) -> int:
    """
    Run the embedding check and write its report.

    Returns:
        Exit code (0 on success, 1 if the schemes are too large, 2 on a failed check)
    """
    if params.vertex_count > MAX_JOHNSON_VERTICES:
        print(f"Error: {params} has {params.vertex_count} vertices, limit is {MAX_JOHNSON_VERTICES}", file=sys.stderr)
        return 1

    mapping, result = embedding_phi(params)
    report = VerificationReport(params.to_dict(), "embed")
    report.extend([result])
    output = report.to_dict(include_timings=False)
    if show_map:
        output["map"] = [[word, vertex] for word, vertex in sorted(mapping.items())]
    format_output(output, output_path)

    if report.passed:
        print(f"  {result.detail.get('images', 0)} words embedded into {params}", file=sys.stderr)
        return 0
    print(f"  Failed checks: {', '.join(report.failed_checks)}", file=sys.stderr)
    return 2
