"""``fanocheck verify <scenario>``: run the checks of one scenario and print a report.

Exit codes: 0 all selected checks pass (or are evidence-only / flagged), 1 some check
fails, 2 usage error (unknown scenario or no matching check), 3 internal error.
"""
from __future__ import annotations

import argparse
import fnmatch
import sys
from typing import Sequence

from .assets import SCENARIOS
from .report import CheckReport, to_json, to_markdown

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def run_scenario(scenario: str, depth: int | None = None, grid: int | None = None) -> list[CheckReport]:
    if scenario == "3-17":
        from .scen317 import run_all_317
        return run_all_317(depth=depth, grid=grid)
    if scenario == "2-16":
        from .scen216 import run_all_216
        return run_all_216()
    raise UsageError(f"unknown scenario {scenario!r}; choose from {', '.join(SCENARIOS)}")


def select(reports: Sequence[CheckReport], pattern: str | None) -> list[CheckReport]:
    chosen = [r for r in reports if pattern is None or fnmatch.fnmatchcase(r.checkId, pattern)]
    if not chosen:
        raise UsageError(f"no check matches {pattern!r}")
    return sorted(chosen, key=lambda r: r.checkId)


def exit_code(reports: Sequence[CheckReport]) -> int:
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _text(reports: Sequence[CheckReport]) -> str:
    width = max(len(r.checkId) for r in reports)
    return "\n".join(f"{r.checkId:<{width}}  {r.status:<19}  {r.computed}" for r in reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fanocheck", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run the checks of one scenario")
    v.add_argument("scenario", help="one of " + ", ".join(SCENARIOS))
    v.add_argument("--check", metavar="GLOB", help="only checks whose id matches GLOB")
    v.add_argument("--report", choices=("json", "md", "text"), default="text")
    v.add_argument("--depth", type=int, metavar="N", help="chain depth (3-17)")
    v.add_argument("--grid", type=int, metavar="N", help="integer grid bound for the families (3-17)")
    v.add_argument("--list", action="store_true", help="list check ids with their anchors")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    for name in ("depth", "grid"):
        value = getattr(args, name)
        if value is not None and value < 1:
            print(f"fanocheck: --{name} must be positive", file=sys.stderr)
            return EXIT_USAGE
    try:
        if args.scenario not in SCENARIOS:
            raise UsageError(f"unknown scenario {args.scenario!r}; choose from {', '.join(SCENARIOS)}")
        reports = select(run_scenario(args.scenario, args.depth, args.grid), args.check)
    except UsageError as e:
        print(f"fanocheck: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:  # invariant violations inside a check
        print(f"fanocheck: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.list:
        width = max(len(r.checkId) for r in reports)
        print("\n".join(f"{r.checkId:<{width}}  {r.anchor}" for r in reports))
        return EXIT_OK
    if args.report == "json":
        print(to_json(reports))
    elif args.report == "md":
        print(to_markdown(reports))
    else:
        print(_text(reports))
    return exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
