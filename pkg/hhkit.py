#!/usr/bin/env python3
"""Command-line entry point: gen, params, table and verify"""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from config import Config
from graphs.core_graph import Graph
from graphs.families import complete_graph, hh_graph, kneser_graph, shift_graph
from models import FamilyParams, HHKitError, Report
from report_store import ReportStore
from suites import VERIFY_SUITES, ParamsSuite, get_suite, get_table_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def parse_instances(text: str) -> List[FamilyParams]:
    """Parse "5:2,6:2" into instances"""
    instances = []
    for item in text.split(","):
        n, sep, r = item.strip().partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"instance {item!r} is not of the form n:r")
        try:
            instances.append(FamilyParams(n=int(n), r=int(r)))
        except (ValueError, ValidationError) as e:
            raise argparse.ArgumentTypeError(f"bad instance {item!r}: {e}")
    return instances


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hhkit", description="Haggkvist-Hell graph toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a graph to a file")
    gen.add_argument("family", choices=["hh", "kneser", "complete", "shift"])
    gen.add_argument("n", type=int)
    gen.add_argument("r", type=int, nargs="?")
    gen.add_argument("--out", required=True)
    gen.add_argument("--format", choices=["edges", "json"], default="edges")

    params = sub.add_parser("params", help="closed forms against computed values")
    params.add_argument("n", type=int)
    params.add_argument("r", type=int)

    table = sub.add_parser("table", help="recompute a published table")
    table.add_argument("which", type=int, choices=[1, 2, 3])

    verify = sub.add_parser("verify", help="run a theorem verification suite")
    verify.add_argument("theorem", choices=list(VERIFY_SUITES))
    verify.add_argument("--instances", type=parse_instances)
    verify.add_argument("--n-max", type=int)

    for command in (params, table, verify):
        command.add_argument("--budget", type=float, default=Config.BUDGET_SECONDS)
        command.add_argument("--out", help="write the JSON report here")
    return parser


def make_graph(family: str, n: int, r: Optional[int]) -> Graph:
    if family in ("hh", "kneser"):
        if r is None:
            raise HHKitError(f"{family} graphs need both n and r")
        p = FamilyParams(n=n, r=r)
        return hh_graph(p) if family == "hh" else kneser_graph(p)
    if family == "complete":
        return complete_graph(n)
    return shift_graph(n)


def print_report(report: Report) -> None:
    print(f"{report.command}  ({report.elapsed_ms} ms)")
    width = max((len(result.name) for result in report.results), default=0)
    for result in report.results:
        status = "ok" if result.match else "MISMATCH"
        if not result.exact:
            status += " (not exact)"
        print(f"  {result.name:<{width}}  {result.value!s:>12}  {result.expected!s:>12}  {status}")
    print("PASS" if report.passed else "FAIL")


def cmd_gen(args: argparse.Namespace, store: ReportStore) -> int:
    g = make_graph(args.family, args.n, args.r)
    if args.format == "edges":
        store.save_edges(g, args.out)
    else:
        store.save_json(g, args.out)
    print(f"p {g.vertex_count} {g.edge_count}")
    return EXIT_OK


def cmd_params(args: argparse.Namespace) -> Report:
    p = FamilyParams(n=args.n, r=args.r)
    p.require(p.r >= 2 and p.n >= 2 * p.r, "params needs r >= 2 and n >= 2r")
    return ParamsSuite().run([p], budget=args.budget, command="params")


def cmd_table(args: argparse.Namespace) -> Report:
    return get_table_suite(args.which).run(budget=args.budget, command=f"table {args.which}")


def cmd_verify(args: argparse.Namespace) -> Report:
    return get_suite(args.theorem).run(
        instances=args.instances, n_max=args.n_max, budget=args.budget
    )


REPORT_COMMANDS = {"params": cmd_params, "table": cmd_table, "verify": cmd_verify}


def run(args: argparse.Namespace) -> int:
    store = ReportStore()
    if args.command == "gen":
        return cmd_gen(args, store)

    report = REPORT_COMMANDS[args.command](args)
    print_report(report)
    if args.out:
        store.save_report(report, args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (HHKitError, ValidationError) as e:
        logger.error(f"{args.command} rejected its arguments: {e}")
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
