"""Command-line front end.

Exit codes: 0 consistent / entailed, 1 inconsistent / not entailed,
2 usage or parse error, 3 resource budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import oracle
from .engine import DEFAULT_NODE_BUDGET, check_consistency, format_trace
from .errors import BudgetExceededError, UnknownNameError
from .extraction import model_from_verdict
from .inference import (
    entails_equality,
    entails_inequality,
    entails_instance,
    entails_metamodelling,
    entails_subsumption,
    is_meta_concept,
)
from .parser import ParseError, parse_concept, parse_kb, parse_query
from .semantics import interpretation_to_json


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="alcm",
        description="Consistency and entailment for ALCM knowledge bases.")
    sub = p.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide consistency of a KB file")
    check.add_argument("file")
    check.add_argument("--oracle", action="store_true",
                       help="use the naive completion-forest tableau instead")
    check.add_argument("--model", metavar="OUT",
                       help="write a model of a consistent KB as JSON")
    check.add_argument("--trace", metavar="OUT",
                       help="write the and-or graph expansion trace")
    check.add_argument("--stats", action="store_true",
                       help="print graph statistics")
    check.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                       metavar="N", help="node budget (default %(default)s)")

    ent = sub.add_parser("entails", help="decide an entailment query")
    ent.add_argument("file")
    ent.add_argument("query",
                     help="'C sub D', 'C(a)', 'a = b', 'a != b' or 'a =m A'")
    ent.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, metavar="N")

    meta = sub.add_parser("meta", help="decide whether a =m A is entailed")
    meta.add_argument("file")
    meta.add_argument("individual")
    meta.add_argument("concept_name")
    meta.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, metavar="N")

    mc = sub.add_parser("metaconcept", help="decide whether C is a meta-concept")
    mc.add_argument("file")
    mc.add_argument("concept")
    mc.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, metavar="N")
    return p


def _load_kb(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_kb(fh.read(), origin=path)


def _run_check(args) -> int:
    kb = _load_kb(args.file)
    if args.oracle:
        if args.model or args.trace:
            print("error: --model/--trace need the and-or graph engine",
                  file=sys.stderr)
            return 2
        verdict = oracle.decide(kb)
    else:
        verdict = check_consistency(kb, args.budget)
    print("consistent" if verdict.consistent else "inconsistent")
    if not verdict.consistent and verdict.certificate is not None:
        print(verdict.certificate.describe())
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(format_trace(verdict.graph, verdict))
    if args.model:
        if verdict.consistent:
            interp = model_from_verdict(kb, verdict)
            with open(args.model, "w", encoding="utf-8") as fh:
                json.dump(interpretation_to_json(interp), fh, indent=2)
                fh.write("\n")
        else:
            print("no model: KB is inconsistent", file=sys.stderr)
    if args.stats and verdict.graph is not None:
        g = verdict.graph
        counts = {k: g.kinds.count(k) for k in ("and", "or", "end", "bot")}
        print(f"nodes: {len(g.labels)}")
        print(f"edges: {sum(len(e) for e in g.edges)}")
        print("kinds: " + " ".join(f"{k}={v}" for k, v in counts.items()))
    return 0 if verdict.consistent else 1


def _run_entails(args) -> int:
    kb = _load_kb(args.file)
    q = parse_query(args.query)
    if q[0] == "sub":
        answer = entails_subsumption(kb, q[1], q[2], args.budget)
    elif q[0] == "instance":
        answer = entails_instance(kb, q[1], q[2], args.budget)
    elif q[0] == "eq":
        answer = entails_equality(kb, q[1], q[2], args.budget)
    elif q[0] == "neq":
        answer = entails_inequality(kb, q[1], q[2], args.budget)
    else:
        answer = entails_metamodelling(kb, q[1], q[2], args.budget)
    print("entailed" if answer else "not entailed")
    return 0 if answer else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "check":
            return _run_check(args)
        if args.command == "entails":
            return _run_entails(args)
        if args.command == "meta":
            kb = _load_kb(args.file)
            answer = entails_metamodelling(kb, args.individual,
                                           args.concept_name, args.budget)
            print("entailed" if answer else "not entailed")
            return 0 if answer else 1
        kb = _load_kb(args.file)
        answer = is_meta_concept(kb, parse_concept(args.concept), args.budget)
        print("meta-concept" if answer else "not a meta-concept")
        return 0 if answer else 1
    except ParseError as e:
        print(f"error: {args.file if hasattr(args, 'file') else ''}:{e}",
              file=sys.stderr)
        return 2
    except UnknownNameError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e.filename}: no such file", file=sys.stderr)
        return 2
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
