"""Command-line interface.

    isostab solve <file> [--svg out.svg] [--json out.json] [--exhaustive]
    isostab heuristic <file> --runs N --seed S [--csv out.csv]
    isostab serve --bind HOST:PORT
    isostab --list-configs

Exit codes: 0 success (including line/rejected statuses), 1 parse error,
2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys

from .io import parse_instance, result_to_doc, ParseError
from .solver import solve
from .heuristic import heuristic_stats
from .configurations import registry_text
from .geom import scalar_str
from . import svg as svgmod
from . import service


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isostab",
                                 description="minimum-area convex polygon stabber "
                                             "for isothetic segments")
    ap.add_argument("--list-configs", action="store_true",
                    help="print the canonical configuration registry and exit")
    sub = ap.add_subparsers(dest="command")

    sp = sub.add_parser("solve", help="solve an instance file")
    sp.add_argument("file")
    sp.add_argument("--svg", metavar="OUT")
    sp.add_argument("--json", metavar="OUT")
    sp.add_argument("--exhaustive", action="store_true",
                    help="disable search-space reductions (oracle runs)")

    hp = sub.add_parser("heuristic", help="random-hull stabber statistics")
    hp.add_argument("file")
    hp.add_argument("--runs", type=int, default=50)
    hp.add_argument("--seed", type=int, default=0)
    hp.add_argument("--csv", metavar="OUT")

    vp = sub.add_parser("serve", help="run the JSON-over-HTTP service")
    vp.add_argument("--bind", default="127.0.0.1:8765", metavar="HOST:PORT")
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if args.list_configs:
        print(registry_text())
        return 0
    if args.command is None:
        ap.print_help()
        return 0
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "heuristic":
            return _cmd_heuristic(args)
        if args.command == "serve":
            service.serve(args.bind)
            return 0
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 1
    except RuntimeError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2
    return 0


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(str(e))


def _cmd_solve(args) -> int:
    segments, _name = parse_instance(_read(args.file))
    result = solve(segments, exhaustive=args.exhaustive)
    doc = result_to_doc(result)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svgmod.render_svg(segments, result))
    if result.status == "polygon":
        print(f"status: polygon  area: {scalar_str(result.best.area)}  "
              f"config: {result.best.family.value}:{result.best.code}")
    elif result.status == "line":
        print(f"status: line  {result.line}")
    else:
        print(f"status: rejected  reason: {result.rejection.reason.value}")
    return 0


def _cmd_heuristic(args) -> int:
    segments, _name = parse_instance(_read(args.file))
    result = solve(segments)
    optimal = result.best.area if result.status == "polygon" else None
    report = heuristic_stats(segments, args.runs, args.seed, optimal)
    doc = {
        "runs": report.runs,
        "mean": scalar_str(report.mean),
        "min": scalar_str(report.min),
        "max": scalar_str(report.max),
        "mean_float": float(report.mean),
        "ratio_to_optimal": (None if report.ratio_to_optimal is None
                             else float(report.ratio_to_optimal)),
        "solver_status": result.status,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("run,area\n")
            for i, a in enumerate(report.areas):
                fh.write(f"{i},{scalar_str(a)}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
