"""
Tables action: emit exact eigenvalue, structure-constant and polynomial tables.
"""

import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from attschemes.actions.build import add_scheme_arguments
from attschemes.data_models.scheme_params import SchemeParams
from attschemes.mods.spectra import EigenGrid
from attschemes.mods.structure import bivariate_v, bivariate_v_star, intersection_formula, krein_formula, polynomial_rows
from attschemes.utils.config import OUTPUT_FORMATS, RunConfig, collect_kwargs
from attschemes.utils.output_formatter import format_rows
from attschemes.utils.scheme_io import load_scheme

TABLE_KINDS = ("eigen", "p", "q", "v", "vstar")

# CSV columns per table kind
TABLE_COLUMNS = {
    "eigen": ("i", "j", "r", "s", "T", "U"),
    "p": ("key", "index", "target", "value"),
    "q": ("key", "index", "target", "value"),
    "v": ("i", "j", "poly"),
    "vstar": ("i", "j", "poly"),
}


def setup_tables_parser(subparsers) -> None:
    """
    Set up the tables command parser.

    Args:
        subparsers: The subparsers object from argparse
    """
    tables_parser = subparsers.add_parser(
        "tables",
        help="Emit exact tables (eigenvalues, intersection numbers, Krein parameters, polynomials)",
        description="Rationals are written as num/den strings; index pairs in CSV cells as i;j.",
    )
    tables_parser.add_argument("--kind", choices=TABLE_KINDS, default=None, help="Table to emit (default: eigen)")
    tables_parser.add_argument("--format", choices=OUTPUT_FORMATS, default=None, help="Output format (default: csv)")
    tables_parser.add_argument("-i", "--input", type=Path, default=None, help="Scheme file written by build (instead of -q/-n/-l/-m)")
    add_scheme_arguments(tables_parser)
    tables_parser.add_argument("-o", "--output", type=Path, default=None, help="Output file path (default: stdout)")
    tables_parser.add_argument("--config", type=Path, default=None, help="JSON file with run settings (command-line values take priority)")
    tables_parser.set_defaults(func=run_tables)


def run_tables(args) -> int:
    """
    Run the tables action.

    Args:
        args: Parsed command line arguments

    Returns:
        Exit code
    """
    kwargs = collect_kwargs(args)
    kwargs.setdefault("format", "csv")
    config = RunConfig.from_kwargs(args.action, kwargs)
    params = config.params
    if config.input_path is not None:
        params = load_scheme(config.input_path).params
    if not isinstance(params, SchemeParams):
        print("Error: attenuated-space parameters required (-q -n -l -m or -i FILE)", file=sys.stderr)
        return 1
    return emit_table(params, config.extra.get("kind", "eigen"), config.output_format, config.output_path)


def build_table(params: SchemeParams, kind: str) -> Tuple[List[Dict[str, Any]], Sequence[str]]:
    """
    Rows and CSV columns of one table.

    Raises:
        ValueError: If the kind is unknown
        ConfigError: For v/vstar on a scheme without both generators
    """
    if kind == "eigen":
        rows = EigenGrid.from_params(params).to_rows()
    elif kind == "p":
        rows = intersection_formula(params).to_rows()
    elif kind == "q":
        rows = krein_formula(params).to_rows()
    elif kind == "v":
        rows = polynomial_rows(bivariate_v(params, intersection_formula(params)))
    elif kind == "vstar":
        rows = polynomial_rows(bivariate_v_star(params, krein_formula(params)))
    else:
        raise ValueError(f"Unknown table kind: {kind}")
    return rows, TABLE_COLUMNS[kind]


def emit_table(params: SchemeParams, kind: str, output_format: str = "csv", output_path: Optional[Path] = None) -> int:
    """
    Compute and write one table.

    Returns:
        Exit code
    """
    rows, columns = build_table(params, kind)
    format_rows(rows, output_format, output_path, columns)
    if output_path:
        print(f"  Wrote {len(rows)} {kind} rows to {output_path}", file=sys.stderr)
    return 0
