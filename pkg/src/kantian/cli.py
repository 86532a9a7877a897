"""Command line interface: ``kantian {solve,compare,sample,verify}``.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 symmetry violation.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis
from .analysis import GameSpec, GameSpecError, InputError
from .game_core import DEFAULT_TOL

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_MALFORMED = 2
EXIT_ASYMMETRIC = 3

FORMATS = ("human", "json-lines", "csv")


def _add_game_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--game", action="append", default=[], metavar="A00,A01,A10,A11",
        help="symmetric game payoffs of the row player (repeatable)")
    parser.add_argument(
        "--input", metavar="FILE",
        help="JSON-lines file, one game per line: {\"symmetric\": [...]} or "
             "{\"bimatrix\": {\"a\": [[..],[..]], \"b\": [[..],[..]]}}, optional \"label\"")
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="branch tolerance (default: %(default)g)")
    parser.add_argument("--sym-tol", type=float, default=DEFAULT_TOL,
                        help="symmetry check tolerance (default: %(default)g)")


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=FORMATS, default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kantian",
        description="Simple Kantian equilibria of symmetric 2x2 games, classical and EWL quantum.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve games, stopping at the first bad input")
    _add_game_args(p)
    _add_format(p)

    p = sub.add_parser("compare", help="compare classical and quantum SKE for a batch")
    _add_game_args(p)
    _add_format(p)

    p = sub.add_parser("sample", help="estimate the share of games with quantum advantage")
    p.add_argument("--n", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--low", type=float, default=0.0)
    p.add_argument("--high", type=float, default=1.0)
    p.add_argument("--workers", type=int, default=1)
    _add_format(p)

    p = sub.add_parser("verify", help="check closed forms against numerical oracles")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--grid", type=int, default=16)
    _add_format(p)
    return parser


def _collect_specs(args) -> list[GameSpec | InputError]:
    items: list[GameSpec | InputError] = []
    for i, text in enumerate(args.game, start=1):
        try:
            items.append(GameSpec.parse(text))
        except GameSpecError as exc:
            items.append(InputError(f"--game #{i}", str(exc), EXIT_MALFORMED))
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                items.extend(analysis.read_game_specs(fh))
        except OSError as exc:
            items.append(InputError(args.input, str(exc), EXIT_MALFORMED))
    return items


def _run_games(args, stop_on_error: bool, out, err) -> int:
    specs = _collect_specs(args)
    if not specs:
        print("kantian: no games given (use --game or --input)", file=err)
        return EXIT_MALFORMED
    results = analysis.compare_games(specs, args.tol, args.sym_tol)
    errors = [r for r in results if isinstance(r, InputError)]
    for e in errors:
        print(f"kantian: {e.source}: {e.message}", file=err)
    if stop_on_error and errors:
        return errors[0].code
    out.write(analysis.emit_report(results, args.format))
    return max((e.code for e in errors), default=EXIT_OK)


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)

    if args.command == "solve":
        return _run_games(args, True, out, err)
    if args.command == "compare":
        return _run_games(args, False, out, err)
    if args.command == "sample":
        try:
            report = analysis.sample(args.n, args.seed, args.low, args.high, args.workers)
        except ValueError as exc:
            print(f"kantian: {exc}", file=err)
            return EXIT_MALFORMED
        out.write(analysis.emit_sample(report, args.format))
        return EXIT_OK
    if args.command == "verify":
        try:
            summary = analysis.verify(args.n, args.seed, args.tol, args.grid)
        except ValueError as exc:
            print(f"kantian: {exc}", file=err)
            return EXIT_MALFORMED
        out.write(analysis.emit_verify(summary, args.format))
        return EXIT_OK if summary.passed else EXIT_VERIFY_FAILED
    return EXIT_MALFORMED  # unreachable: argparse enforces the subcommand


if __name__ == "__main__":
    sys.exit(main())
