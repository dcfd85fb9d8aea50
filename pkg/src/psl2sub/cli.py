"""Command line entry point: ``psl2sub <command> ...``.

Exit codes: 0 success, 1 selftest mismatch, 2 usage or input error,
3 failed exact division (internal inconsistency).
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .core import (
    CombinatorialType,
    GraphError,
    IsomorphismType,
    from_json,
    is_connected,
    is_cyclically_reduced,
    to_dot,
    to_json,
)
from .counting import CountTable, ExactDivisionError, types_of_size
from .sampler import (
    EmptyTypeError,
    RandomSource,
    random_cyclically_reduced_graph,
    random_reduced_graph,
    random_subgroup_iso,
)
from .silhouette import silhouette
from .words import member


class UsageError(Exception):
    pass


def _read_graph(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return from_json(text)


def _table(args) -> CountTable:
    if getattr(args, "table", None):
        return CountTable.load(args.table)
    return CountTable()


def _emit(g, fmt: str) -> None:
    print(to_dot(g) if fmt == "dot" else to_json(g))


def _seed(args):
    if args.seed is not None:
        return args.seed
    if sys.stdin.isatty():
        seed = int.from_bytes(os.urandom(8), "big")
        print(f"seed: {seed}", file=sys.stderr)
        return seed
    raise UsageError("--seed is required when not running interactively")


# -- commands ------------------------------------------------------------


def cmd_count(args) -> int:
    table = _table(args)
    if args.what_kind == "type":
        tau = CombinatorialType(args.n, args.k2, args.k3, args.l2, args.l3)
        value = {"s": table.s, "L": table.L, "H": table.H}[args.what](tau)
    elif args.what_kind == "iso":
        sigma = IsomorphismType(args.l2, args.l3, args.r)
        if args.subgroups:
            value = table.count_iso_subgroups(args.n, sigma, args.cyclic)
        else:
            value = table.count_iso(args.n, sigma, args.cyclic)
    else:
        value = table.count_silhouette(args.n)
    print(value)
    return 0


def cmd_sample(args) -> int:
    if args.count < 0:
        raise UsageError("--count must be non-negative")
    rng = RandomSource(_seed(args))
    table = _table(args)
    for _ in range(args.count):
        if args.what_kind == "type":
            tau = CombinatorialType(args.n, args.k2, args.k3, args.l2, args.l3)
            if args.rooted:
                g = random_reduced_graph(tau, rng, table, faithful=args.faithful)
            else:
                g = random_cyclically_reduced_graph(tau, rng, table, faithful=args.faithful)
        else:
            sigma = IsomorphismType(args.l2, args.l3, args.r)
            g = random_subgroup_iso(args.n, sigma, rng, args.cyclic, table, faithful=args.faithful)
        _emit(g, args.format)
    if args.trace_bits:
        print(f"bits consumed: {rng.bits_consumed}", file=sys.stderr)
    return 0


def cmd_silhouette(args) -> int:
    g = _read_graph(args.input)
    trace: list = []
    h = silhouette(g, trace=trace)
    if args.trace:
        for m in trace:
            print(m, file=sys.stderr)
    _emit(h, args.format)
    return 0


def cmd_member(args) -> int:
    g = _read_graph(args.graph)
    print("true" if member(g, args.word) else "false")
    return 0


def cmd_enumerate(args) -> int:
    from . import oracle

    if args.rooted:
        graphs = oracle.enumerate_reduced(args.size)
        if args.type:
            from .core import combinatorial_type

            graphs = (g for g in graphs if tuple(combinatorial_type(g)) == tuple(args.type))
    else:
        graphs = oracle.enumerate_cyclically_reduced(args.size, args.type)
    for g in graphs:
        print(to_json(g))
    return 0


def cmd_selftest(args) -> int:
    from . import oracle

    table = _table(args)
    failures = 0

    def report(label: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {label}{' ' + detail if detail else ''}")

    if args.max_n < 1 or args.max_n > oracle.MAX_ENUMERATION_SIZE:
        raise UsageError(f"--max-n must lie in 1..{oracle.MAX_ENUMERATION_SIZE}")
    for n in range(1, args.max_n + 1):
        found = oracle.count_by_type(n)
        bad = [t for t in set(found) | set(types_of_size(n)) if found.get(t, 0) != table.s(t)]
        report(f"s(tau) for n={n}", not bad, f"mismatch at {bad[0]}" if bad else f"{sum(found.values())} graphs")
    for n in range(1, min(args.max_n, 6) + 1):
        found = oracle.count_reduced_by_type(n)
        bad = [t for t in set(found) | set(types_of_size(n)) if found.get(t, 0) != table.L(t)]
        report(f"L(tau) for n={n}", not bad, f"mismatch at {bad[0]}" if bad else f"{sum(found.values())} rooted graphs")
    brute = sum(1 for _ in oracle.enumerate_cyclically_reduced(6, (6, 3, 0, 0, 0)))
    report("silhouette count n=6", brute == table.count_silhouette(6) == 600, str(brute))
    report("fixed-matching count n=6", oracle.silhouette_count_fixed_matching(6) == 600)
    return 1 if failures else 0


def cmd_precompute(args) -> int:
    table = CountTable().precompute(args.max_n)
    table.save(args.out)
    print(f"{len(table)} entries written to {args.out}")
    return 0


# -- parser --------------------------------------------------------------


def _type_args(p: argparse.ArgumentParser) -> None:
    for name in ("n", "k2", "k3", "l2", "l3"):
        p.add_argument(name, type=int)


def _iso_args(p: argparse.ArgumentParser) -> None:
    for name in ("n", "l2", "l3", "r"):
        p.add_argument(name, type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="psl2sub", description="Count and sample subgroups of PSL2(Z).")
    parser.add_argument("--table", help="count table cache written by 'precompute'")
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="exact counts")
    csub = count.add_subparsers(dest="what_kind", required=True)
    p = csub.add_parser("type", help="by combinatorial type")
    _type_args(p)
    p.add_argument("--what", choices=("s", "L", "H"), default="s")
    p = csub.add_parser("iso", help="labeled rooted graphs by isomorphism type")
    _iso_args(p)
    p.add_argument("--cyclic", action="store_true", help="cyclically reduced graphs only")
    p.add_argument("--subgroups", action="store_true", help="divide by n! to count subgroups")
    p = csub.add_parser("silhouette", help="labeled silhouette graphs of size n")
    p.add_argument("n", type=int)
    count.set_defaults(func=cmd_count)

    sample = sub.add_parser("sample", help="uniform random graphs")
    ssub = sample.add_subparsers(dest="what_kind", required=True)
    p = ssub.add_parser("type", help="by combinatorial type")
    _type_args(p)
    p.add_argument("--rooted", action="store_true", help="rooted reduced instead of cyclically reduced")
    p2 = ssub.add_parser("iso", help="rooted, by isomorphism type")
    _iso_args(p2)
    p2.add_argument("--cyclic", action="store_true")
    for q in (p, p2):
        q.add_argument("--seed", type=int)
        q.add_argument("--count", type=int, default=1)
        q.add_argument("--format", choices=("json", "dot"), default="json")
        q.add_argument("--faithful", action="store_true", help="draw every expansion parameter explicitly")
        q.add_argument("--trace-bits", action="store_true", help="report random bits consumed on stderr")
    sample.set_defaults(func=cmd_sample)

    p = sub.add_parser("silhouette", help="silhouette of a cyclically reduced graph")
    p.add_argument("--in", dest="input", required=True, help="JSON graph file, '-' for stdin")
    p.add_argument("--trace", action="store_true", help="list applied moves on stderr")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_silhouette)

    p = sub.add_parser("member", help="test membership of a word")
    p.add_argument("--graph", required=True, help="rooted JSON graph file, '-' for stdin")
    p.add_argument("--word", required=True)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("enumerate", help="stream every labeled graph of a size")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--type", type=int, nargs=5, metavar=("N", "K2", "K3", "L2", "L3"))
    p.add_argument("--rooted", action="store_true", help="rooted reduced graphs")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", help="compare recurrences with brute force")
    p.add_argument("--max-n", type=int, default=7)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("precompute", help="fill and save a count table")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_precompute)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExactDivisionError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 3
    except (UsageError, EmptyTypeError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
