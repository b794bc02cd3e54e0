"""
Build action: enumerate A_q(n, ell, m), verify the axioms and write a scheme file.
"""

import sys
from pathlib import Path

from attschemes.data_models.scheme_params import SchemeParams
from attschemes.exceptions import VerificationFailure
from attschemes.mods.attenuated import build_scheme
from attschemes.utils.config import ENV_THREADS, RunConfig
from attschemes.utils.scheme_io import save_scheme


def setup_build_parser(subparsers) -> None:
    """
    Set up the build command parser.

    Args:
        subparsers: The subparsers object from argparse
    """
    build_parser = subparsers.add_parser("build", help="Build A_q(n,ell,m), verify the scheme axioms and save it")
    add_scheme_arguments(build_parser)
    build_parser.add_argument("-o", "--output", type=Path, default=None, help="Output scheme file path")
    build_parser.add_argument(
        "--threads", type=int, default=None, help=f"Worker threads for the pair and product sweeps (or {ENV_THREADS} env var, default: CPU count)"
    )
    build_parser.add_argument("--config", type=Path, default=None, help="JSON file with run settings (command-line values take priority)")
    build_parser.set_defaults(func=run_build)


def add_scheme_arguments(parser, required: bool = False) -> None:
    """
    Add the -q/-n/-l/-m options shared by the attenuated-space actions.

    Args:
        parser: Subcommand parser
        required: Whether the values must be given on the command line
    """
    parser.add_argument("-q", type=int, default=None, required=required, dest="q", help="Field order (prime power in the field table)")
    parser.add_argument("-n", type=int, default=None, required=required, dest="n", help="Dimension n of the ambient part")
    parser.add_argument("-l", "--ell", type=int, default=None, required=required, dest="ell", help="Dimension ell of the attenuating subspace w")
    parser.add_argument("-m", type=int, default=None, required=required, dest="m", help="Subspace dimension m")


def run_build(args) -> int:
    """
    Run the build action.

    Args:
        args: Parsed command line arguments

    Returns:
        Exit code
    """
    config = RunConfig.from_args(args)
    return build_to_file(params=config.params, output_path=config.output_path, threads=config.threads)


def build_to_file(params: SchemeParams, output_path: Path, threads: int = 1) -> int:
    """
    Build, verify and save a scheme.

    Args:
        params: Scheme parameters (None is a usage error)
        output_path: Scheme file to write
        threads: Worker threads

    Returns:
        Exit code (0 on success, 1 on missing parameters, 2 on an axiom failure)
    """
    if params is None:
        print("Error: -q, -n, -l and -m are required", file=sys.stderr)
        return 1
    if output_path is None:
        print("Error: -o/--output is required", file=sys.stderr)
        return 1

    print(f"Building {params} ({params.vertex_count} vertices)...", file=sys.stderr)
    try:
        instance = build_scheme(params, verify=True, threads=threads)
    except VerificationFailure as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2

    save_scheme(instance, output_path)
    print(f"  Saved {instance.vertex_count} vertices, {len(instance.domain)} relations to {output_path}", file=sys.stderr)
    return 0
