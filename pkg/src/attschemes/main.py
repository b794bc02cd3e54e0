#!/usr/bin/env python3
"""
Attenuated Schemes Tool

Builds association schemes on attenuated spaces and verifies their eigenvalues,
structure constants and algebraic relations in exact arithmetic.
"""

import argparse
import logging
import sys
from typing import List, Optional

from attschemes import __version__
from attschemes.actions.build import setup_build_parser
from attschemes.actions.embed import setup_embed_parser
from attschemes.actions.limit import setup_limit_parser
from attschemes.actions.tables import setup_tables_parser
from attschemes.actions.verify import setup_verify_parser
from attschemes.exceptions import InvariantViolation, SchemeError, VerificationFailure

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_INVARIANT = 3
EXIT_CANCELLED = 130


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with EXIT_USAGE."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def create_parser() -> argparse.ArgumentParser:
    """Create the main argument parser."""
    parser = CliParser(prog="attenuated-schemes", description="Association schemes on attenuated spaces, verified exactly")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="Log progress to stderr (-v: info, -vv: debug)")

    # Create subparsers for different actions
    subparsers = parser.add_subparsers(dest="action", help="Action to perform", required=True)

    setup_build_parser(subparsers)
    setup_verify_parser(subparsers)
    setup_tables_parser(subparsers)
    setup_limit_parser(subparsers)
    setup_embed_parser(subparsers)

    return parser


def configure_logging(verbosity: int) -> None:
    """Send library logging to stderr at WARNING, INFO (-v) or DEBUG (-vv)."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.verbose)

    try:
        # Each action has its own func set by set_defaults()
        if hasattr(args, "func"):
            return args.func(args)
        else:
            parser.error(f"Unknown action: {args.action}")
            return EXIT_USAGE

    except KeyboardInterrupt:
        print("\nOperation cancelled by user", file=sys.stderr)
        return EXIT_CANCELLED
    except InvariantViolation as e:
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except VerificationFailure as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except (SchemeError, ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logging.getLogger(__name__).debug("Unhandled exception", exc_info=True)
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
