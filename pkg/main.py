#!/usr/bin/env python3
"""
Brauer complex toolkit
Main entry point for the command-line interface
"""
import argparse
import logging
import sys
from typing import List, Optional

from rich.console import Console
from rich.logging import RichHandler

from brauer_cli.config import Config
from brauer_cli.errors import ErrorHandler, ParseError
from brauer_cli.workbench import BrauerWorkbench


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit 1 like every other input error"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        ErrorHandler.report(ParseError(message, code="bad-arguments"))
        sys.exit(1)


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments"""
    parser = ArgumentParser(
        description="Brauer complexes of symmetric special biserial algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
    Examples:
    %(prog)s invariants fixtures/e2.json            # Invariant signature
    %(prog)s transform fixtures/e5.json --edge 0    # Tilting move at edge 0
    %(prog)s equiv a.json b.json --witness          # Genus-0 verdict with move logs
    %(prog)s orbit fixtures/e4_c1.json              # Orbit under tilting moves
    %(prog)s census --edges 3 --mult 1 --csv out.csv
    %(prog)s fixtures                               # List shipped examples
        """,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")
    parser.add_argument("--plain", action="store_true", help="No colours, tables or notes")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    cmd = commands.add_parser("invariants", help="Invariant signature as JSON")
    cmd.add_argument("file")

    cmd = commands.add_parser("transform", help="Apply a tilting move")
    cmd.add_argument("file")
    cmd.add_argument("--edge", "-e", type=int, required=True, help="Edge id (minimal dart)")
    cmd.add_argument("--out", "-o", metavar="FILE", help="Write the moved complex here")

    cmd = commands.add_parser("tilting", help="Tilting complex checks at an edge")
    cmd.add_argument("file")
    cmd.add_argument("--edge", "-e", type=int, required=True)

    cmd = commands.add_parser("equiv", help="Genus-0 chain equivalence")
    cmd.add_argument("first")
    cmd.add_argument("second")
    cmd.add_argument("--witness", "-w", action="store_true", help="Include move logs")

    cmd = commands.add_parser("orbit", help="Orbit under tilting moves")
    cmd.add_argument("file")
    cmd.add_argument("--budget", "-b", type=int, help="Maximum number of complexes")

    cmd = commands.add_parser("census", help="Orbits per invariant signature")
    cmd.add_argument("--edges", type=int, required=True)
    cmd.add_argument("--mult", type=int, default=1)
    cmd.add_argument("--csv", metavar="FILE", help="Also write the table as CSV")

    cmd = commands.add_parser("center", help="Center of the algebra")
    cmd.add_argument("file")

    cmd = commands.add_parser("quiver", help="Extended quiver as JSON")
    cmd.add_argument("file")

    cmd = commands.add_parser("export-dot", help="1-skeleton in DOT")
    cmd.add_argument("file")

    cmd = commands.add_parser("fixtures", help="List or print shipped examples")
    cmd.add_argument("name", nargs="?")

    return parser.parse_args(argv)


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point"""
    args = parse_arguments(argv)
    setup_logging(args.verbose)
    bench = BrauerWorkbench(Config.from_env(), plain=args.plain)

    if args.command == "invariants":
        return bench.invariants(args.file)
    if args.command == "transform":
        return bench.transform(args.file, args.edge, args.out)
    if args.command == "tilting":
        return bench.tilting(args.file, args.edge)
    if args.command == "equiv":
        return bench.equiv(args.first, args.second, args.witness)
    if args.command == "orbit":
        return bench.orbit(args.file, args.budget)
    if args.command == "census":
        return bench.census(args.edges, args.mult, args.csv)
    if args.command == "center":
        return bench.center(args.file)
    if args.command == "quiver":
        return bench.quiver(args.file)
    if args.command == "export-dot":
        return bench.export_dot(args.file)
    return bench.fixtures(args.name)


if __name__ == "__main__":
    sys.exit(main())
