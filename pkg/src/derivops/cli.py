"""Command-line front end.

Exit status: 0 on success / HOLDS / PROVED, 1 on REFUTED, 2 on usage or
input errors.  Every command prints one JSON document on standard output.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .bounds import bound_fd, bound_fg, bound_rc
from .catalog import CatalogEntry, applicable_bounds, catalog_list, get_entry
from .derived import DerivedOperation, apply, orders, used_derivations
from .identities import (Limits, Mode, Sampler, Side, Verdict, kary_standard,
                         search_min_degree, standard, verify)
from .parsing import PolynomialSyntaxError, parse_polynomial
from .problem import ProblemError, load_problem

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _add_operation_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--op", help="catalog operation, NAME or NAME:PARAM (e.g. rc:2)")
    group.add_argument("--problem", help="JSON problem file")


def _add_limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--naive-cap", type=int, default=8)
    p.add_argument("--dp-cap", type=int, default=22)
    p.add_argument("--exhaustive-budget", type=int, default=10 ** 7)


def _add_sampler_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--poly-degree", type=int, default=3,
                   help="maximal total degree of sampled polynomials")
    p.add_argument("--coeff-bound", type=int, default=5)
    p.add_argument("--homogeneous", action="store_true",
                   help="sample weight-homogeneous polynomials")
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derivops", description="Standard identities of derived operations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in operations")
    p.add_argument("--op", help="show a single entry")

    p = sub.add_parser("eval", help="evaluate an operation or a standard polynomial")
    _add_operation_args(p)
    p.add_argument("--arg", action="append", default=[], metavar="POLY",
                   help="argument polynomial literal (repeat per argument)")
    p.add_argument("--side", choices=[s.value for s in Side])
    p.add_argument("--degree", type=int, help="standard polynomial degree (needs --side)")
    p.add_argument("--kary", type=int, metavar="D", help="k-ary standard polynomial of degree D")
    p.add_argument("--method", choices=["dp", "naive"], default="dp")
    _add_limit_args(p)

    p = sub.add_parser("verify", help="check a standard identity")
    _add_operation_args(p)
    p.add_argument("--side", choices=[s.value for s in Side], required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="random")
    _add_sampler_args(p)
    _add_limit_args(p)

    p = sub.add_parser("search", help="locate the smallest non-refuted degree")
    _add_operation_args(p)
    p.add_argument("--side", choices=[s.value for s in Side], required=True)
    p.add_argument("--max-degree", type=int, required=True, help="largest degree d to test")
    _add_sampler_args(p)
    _add_limit_args(p)

    p = sub.add_parser("bound", help="closed-form degree bounds")
    p.add_argument("--theorem", choices=["fg", "fd", "rc"], required=True)
    _add_operation_args(p, required=False)
    p.add_argument("--n", type=int, help="number of derivations (fg) or bracket index (rc)")
    p.add_argument("--m", type=int, help="operation order")
    p.add_argument("--dim-g", type=int, help="dimension of the Lie algebra (fd)")
    p.add_argument("--g-order", type=int, help="override the g-order used by fd")
    return parser


def _operation(args) -> tuple[DerivedOperation, Optional[CatalogEntry]]:
    if args.op:
        entry = get_entry(args.op)
        return entry.operation, entry
    return load_problem(args.problem), None


def _limits(args) -> Limits:
    return Limits(args.naive_cap, args.dp_cap, args.exhaustive_budget)


def _sampler(args) -> Sampler:
    return Sampler(args.seed, args.poly_degree, args.coeff_bound, args.trials, args.homogeneous)


def cmd_catalog(args) -> int:
    entries = [get_entry(args.op)] if args.op else catalog_list()
    _emit({"entries": [e.as_dict() for e in entries]})
    return EXIT_OK


def cmd_eval(args) -> int:
    op, _ = _operation(args)
    polys = [parse_polynomial(text, op.ctx) for text in args.arg]
    doc = {"operation": op.name, "args": [str(p) for p in polys]}
    if args.kary is not None:
        value = kary_standard(op, args.kary, polys, _limits(args), method=args.method)
        doc.update(kind="kary_standard", degree=args.kary)
    elif args.degree is not None:
        if not args.side:
            raise UsageError("--degree needs --side")
        value = standard(op, Side(args.side), args.degree, polys, _limits(args), method=args.method)
        doc.update(kind="standard", side=args.side, degree=args.degree)
    else:
        value = apply(op, polys)
        doc.update(kind="apply")
    doc["value"] = str(value)
    _emit(doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    op, _ = _operation(args)
    report = verify(op, Side(args.side), args.degree, Mode(args.mode), _sampler(args),
                    _limits(args), jobs=args.jobs)
    _emit(report.as_dict())
    return EXIT_REFUTED if report.verdict is Verdict.REFUTED else EXIT_OK


def cmd_search(args) -> int:
    op, _ = _operation(args)
    result = search_min_degree(op, Side(args.side), args.max_degree, _sampler(args),
                               _limits(args), jobs=args.jobs)
    _emit(result.as_dict())
    return EXIT_OK


def cmd_bound(args) -> int:
    doc = {}
    op = entry = None
    if args.op or args.problem:
        op, entry = _operation(args)
        doc["operation"] = op.name
        doc["orders"] = orders(op).as_dict()
    if args.theorem == "rc":
        if args.n is None:
            raise UsageError("bound --theorem rc needs --n")
        result = bound_rc(args.n)
    elif args.theorem == "fg":
        n = args.n if args.n is not None else (len(used_derivations(op)) if op else None)
        m = args.m if args.m is not None else (orders(op).total_order if op else None)
        if n is None or m is None:
            raise UsageError("bound --theorem fg needs --n and --m (or --op/--problem)")
        result = bound_fg(n, m)
    else:
        dim_g = args.dim_g if args.dim_g is not None else (entry.dim_g if entry else None)
        m = args.g_order if args.g_order is not None else args.m
        if m is None and op is not None:
            m = orders(op).total_order
        if dim_g is None or m is None:
            raise UsageError("bound --theorem fd needs --dim-g and --m (or a catalog --op)")
        result = bound_fd(dim_g, m)
    doc.update(result.as_dict())
    if entry is not None:
        doc["all_bounds"] = [b.as_dict() for b in applicable_bounds(
            entry.operation, entry.dim_g, args.g_order, _rc_param(entry))]
    _emit(doc)
    return EXIT_OK


def _rc_param(entry: CatalogEntry) -> Optional[int]:
    if entry.name.startswith("rc("):
        return int(entry.name[3:-1])
    return None


COMMANDS = {"catalog": cmd_catalog, "eval": cmd_eval, "verify": cmd_verify,
            "search": cmd_search, "bound": cmd_bound}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PolynomialSyntaxError, ProblemError, KeyError, ValueError,
            OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"derivops {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
