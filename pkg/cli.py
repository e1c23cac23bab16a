"""
Command-line interface for the circulant toolkit.

Results go to stdout as JSON (or CSV for the census); logging and error
objects go to stderr.
"""

import argparse
import json
import sys

import uvicorn
from colorama import Fore, Style, just_fix_windows_console
from pydantic import ValidationError

from analyzer import CirculantAnalyzer
from config import Settings, configure_logging
from errors import CirculantError, InvalidInputError
from structure.census import MethodComparison, to_csv, to_json

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Decompose, compare and enumerate arc-transitive circulant digraphs."
    )
    parser.add_argument("--verbose", "-v", action="count", default=0,
                        help="Log progress to stderr (-v info, -vv debug)")
    parser.add_argument("--aut-bound", type=int, help="Largest order handed to backtracking search (default: 64)")
    parser.add_argument("--group-budget", type=int,
                        help="Largest group order whose elements may be enumerated (default: 10000000)")
    parser.add_argument("--exhaustive-bound", type=int, help="Largest order for the exhaustive census (default: 16)")
    parser.add_argument("--threads", type=int, help="Worker processes for the census (default: 1)")
    parser.add_argument("--json", action="store_true", help="Read circulant arguments as JSON objects")

    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    decompose_parser = subparsers.add_parser("decompose", help="Decompose a connected arc-transitive circulant")
    decompose_parser.add_argument("circulant", help='Circulant as "n:s1,s2,..."')
    decompose_parser.add_argument("--verify", action="store_true", help="Check the decomposition independently")

    iso_parser = subparsers.add_parser("iso", help="Test two circulants for isomorphism (exit 1 if not)")
    iso_parser.add_argument("first")
    iso_parser.add_argument("second")

    for name, text in (("aut", "Automorphism group generators and order"),
                       ("arc-transitive", "Test arc-transitivity"),
                       ("normal", "Test normality")):
        sub = subparsers.add_parser(name, help=text)
        sub.add_argument("circulant")

    census_parser = subparsers.add_parser("census", help="List connected arc-transitive circulants of order n")
    census_parser.add_argument("n", type=int)
    census_parser.add_argument("--method", choices=["exhaustive", "constructive", "both"], default="exhaustive")
    census_parser.add_argument("--format", choices=["csv", "json"], default="json")

    product_parser = subparsers.add_parser("product", help="Tensor or lexicographic product")
    product_group = product_parser.add_mutually_exclusive_group(required=True)
    product_group.add_argument("--tensor", nargs=2, metavar=("C1", "C2"), help="Tensor product of two circulants")
    product_group.add_argument("--lex", nargs=2, metavar=("C", "B"),
                               help="Lexicographic product with the edgeless digraph on B vertices")

    verify_parser = subparsers.add_parser("verify-paper", aliases=["verify-theorems"],
                                          help="Run the structural checks and print a table")
    verify_parser.add_argument("--max-n", type=int, default=20, help="Largest order swept (default: 20)")
    verify_parser.add_argument("--only", action="append", help="Run only the named check (repeatable)")

    web_parser = subparsers.add_parser("web", help="Start the HTTP interface")
    web_parser.add_argument("--host", default="127.0.0.1", help="Host to run the server on (default: 127.0.0.1)")
    web_parser.add_argument("--port", type=int, default=8000, help="Port to run the server on (default: 8000)")

    return parser


def main(argv=None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    if args.command is None:
        parser.print_help()
        return EXIT_NEGATIVE

    try:
        settings = Settings.load({
            "aut_bound": args.aut_bound,
            "group_budget": args.group_budget,
            "exhaustive_bound": args.exhaustive_bound,
            "threads": args.threads,
        })
        analyzer = CirculantAnalyzer(settings, json_input=args.json)
        return COMMANDS[args.command](analyzer, args)
    except (CirculantError, ValidationError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return EXIT_ERROR


def _emit(result) -> None:
    print(json.dumps(result, indent=2))


def decompose_command(analyzer: CirculantAnalyzer, args) -> int:
    result = analyzer.decompose(args.circulant, verify=args.verify)
    _emit(result)
    if args.verify and not result["verification"]["passed"]:
        return EXIT_NEGATIVE
    return EXIT_OK


def iso_command(analyzer: CirculantAnalyzer, args) -> int:
    result = analyzer.isomorphism(args.first, args.second)
    _emit(result)
    return EXIT_OK if result["isomorphic"] else EXIT_NEGATIVE


def aut_command(analyzer: CirculantAnalyzer, args) -> int:
    _emit(analyzer.automorphisms(args.circulant))
    return EXIT_OK


def arc_transitive_command(analyzer: CirculantAnalyzer, args) -> int:
    _emit(analyzer.arc_transitivity(args.circulant))
    return EXIT_OK


def normal_command(analyzer: CirculantAnalyzer, args) -> int:
    _emit(analyzer.normality(args.circulant))
    return EXIT_OK


def census_command(analyzer: CirculantAnalyzer, args) -> int:
    if args.method != "both":
        entries = analyzer.census(args.n, args.method)
        print(to_csv(entries) if args.format == "csv" else to_json(entries), end="" if args.format == "csv" else "\n")
        return EXIT_OK

    exhaustive = analyzer.census(args.n, "exhaustive")
    constructive = analyzer.census(args.n, "constructive")
    comparison = MethodComparison(args.n, [e.canonical_s for e in exhaustive], [e.canonical_s for e in constructive])
    if args.format == "csv":
        print(to_csv(exhaustive), end="")
    else:
        _emit({"comparison": comparison.to_dict(), "entries": [e.to_dict() for e in exhaustive]})
    return EXIT_OK if comparison.agree else EXIT_NEGATIVE


def product_command(analyzer: CirculantAnalyzer, args) -> int:
    if args.tensor:
        _emit(analyzer.tensor(*args.tensor))
        return EXIT_OK
    circulant, b = args.lex
    if not b.isdigit():
        raise InvalidInputError(f"b must be a positive integer, got {b!r}")
    _emit(analyzer.lex(circulant, int(b)))
    return EXIT_OK


def verify_command(analyzer: CirculantAnalyzer, args) -> int:
    """Print one row per check, coloured when stdout is a terminal."""
    just_fix_windows_console()
    colour = sys.stdout.isatty()
    outcomes = analyzer.verify_theorems(args.max_n, args.only)
    width = max((len(o["name"]) for o in outcomes), default=10)
    for outcome in outcomes:
        status = "PASS" if outcome["passed"] else "FAIL"
        if colour:
            status = (Fore.GREEN if outcome["passed"] else Fore.RED) + status + Style.RESET_ALL
        print(f"{outcome['name']:<{width}}  {status}  {outcome['seconds']:>8.2f}s  {outcome['detail']}")
    failed = [o["name"] for o in outcomes if not o["passed"]]
    print(f"{len(outcomes) - len(failed)}/{len(outcomes)} checks passed")
    return EXIT_NEGATIVE if failed else EXIT_OK


def web_command(analyzer: CirculantAnalyzer, args) -> int:
    print(f"Starting web server at http://{args.host}:{args.port}", file=sys.stderr)
    uvicorn.run("web_app:app", host=args.host, port=args.port)
    return EXIT_OK


COMMANDS = {
    "decompose": decompose_command,
    "iso": iso_command,
    "aut": aut_command,
    "arc-transitive": arc_transitive_command,
    "normal": normal_command,
    "census": census_command,
    "product": product_command,
    "verify-paper": verify_command,
    "verify-theorems": verify_command,
    "web": web_command,
}


if __name__ == "__main__":
    sys.exit(main())
