"""Command-line front end.

Exit codes: 0 success or feasible, 1 infeasible or failed verification,
2 invalid input.
"""

from __future__ import annotations

import argparse
import sys

from . import formats
from .applications import cost, min_max_load, optimal_semi_matching, quasi_matching
from .bench import FAMILIES, format_table, run_bench
from .errors import SemiMatchingError, TooLarge
from .graph import Violation, check_semi_matching
from .oracle import brute_force_max
from .solver import certify_maximum, solve_max, solve_max_single

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path: str) -> formats.Instance:
    try:
        return formats.parse_instance(_read(path))
    except SemiMatchingError as exc:
        raise InputError(f"{path}: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_solve(args) -> int:
    graph, caps = _load_instance(args.instance)
    solver = solve_max if args.algorithm == "phases" else solve_max_single
    M, stats = solver(graph, caps, warm_start=args.warm_start)
    _write(formats.emit_solution(M, stats), args.output)
    if args.stats:
        print(
            f"size={M.size} phases={stats.phases} bound={stats.phase_bound():.2f} "
            f"elapsed={stats.elapsed:.4f}s",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    graph, caps = _load_instance(args.instance)
    try:
        sol = formats.parse_solution(_read(args.solution))
    except SemiMatchingError as exc:
        raise InputError(f"{args.solution}: {exc}") from None
    ids = []
    for u, v in sol.pairs:
        e = graph.edge_id(u, v) if 0 <= u < graph.nu and 0 <= v < graph.nv else None
        if e is None:
            print(f"edge ({u + 1}, {v + 1}) is not in the instance", file=sys.stderr)
            return EXIT_FAIL
        ids.append(e)
    if len(set(ids)) != len(ids):
        print("solution lists an edge twice", file=sys.stderr)
        return EXIT_FAIL
    if sol.size != len(ids):
        print(f"declared size {sol.size} but {len(ids)} edges listed", file=sys.stderr)
        return EXIT_FAIL
    result = check_semi_matching(graph, caps, ids)
    if isinstance(result, Violation):
        print(f"capacity violated: {result}", file=sys.stderr)
        return EXIT_FAIL
    if args.check_max:
        cert = certify_maximum(graph, caps, result)
        if not cert:
            print(f"not maximum: augmenting path {cert.witness}", file=sys.stderr)
            return EXIT_FAIL
    print(f"ok size {result.size}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    graph, caps = _load_instance(args.instance)
    try:
        size, ids = brute_force_max(graph, caps)
    except TooLarge as exc:
        raise InputError(str(exc)) from None
    lines = [f"s size {size}"] + [f"m {graph.eu[e] + 1} {graph.ev[e] + 1}" for e in ids]
    print("\n".join(lines))
    return EXIT_OK


def cmd_optimal(args) -> int:
    graph, caps = _load_instance(args.instance)
    if any(c != 1 for c in caps.f):
        raise InputError("optimal requires f(u) = 1 for every task")
    try:
        M, report = optimal_semi_matching(graph)
    except SemiMatchingError as exc:
        raise InputError(str(exc)) from None
    lines = [f"s cost {report.total}", f"s maxload {report.max_load}"]
    lines += [f"m {u + 1} {v + 1}" for u, v in M.pairs()]
    if args.check:
        k = min_max_load(graph)
        lines.append(f"i minmaxload {k}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_quasi(args) -> int:
    graph, caps = _load_instance(args.instance)
    M = quasi_matching(graph, caps)
    if M is None:
        print("s infeasible")
        return EXIT_FAIL
    lines = ["s feasible", f"s size {M.size}"] + [f"m {u + 1} {v + 1}" for u, v in M.pairs()]
    print("\n".join(lines))
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        inst = formats.generate(args.nu, args.nv, args.m, args.fmax, args.gmax, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(inst.to_text(), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(float(x)) for x in args.sizes.split(",") if x]
    except ValueError:
        raise InputError(f"bad size list {args.sizes!r}") from None
    rows = run_bench(args.family, sizes, args.seed)
    sys.stdout.write(format_table(rows))
    return EXIT_OK if all(r.within_bound for r in rows) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semimatch", description="Maximum (f,g)-semi-matchings in bipartite graphs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a maximum (f,g)-semi-matching")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=["phases", "single"], default="phases")
    p.add_argument("--warm-start", action="store_true", help="start from a greedy semi-matching")
    p.add_argument("--stats", action="store_true", help="print timing and phase count to stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--check-max", action="store_true", help="also require maximality")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive maximum (small instances only)")
    p.add_argument("instance")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("optimal", help="minimum-cost semi-matching (all f(u) = 1)")
    p.add_argument("instance")
    p.add_argument("--check", action="store_true", help="also report the min-max load by binary search")
    p.set_defaults(func=cmd_optimal)

    p = sub.add_parser("quasi", help="find an (f,g)-quasi-matching")
    p.add_argument("instance")
    p.set_defaults(func=cmd_quasi)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--nv", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--fmax", type=int, default=1)
    p.add_argument("--gmax", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="phase counts against 2*sqrt(s)")
    p.add_argument("--family", choices=sorted(FAMILIES), default="random")
    p.add_argument("--sizes", default="1000,10000,100000", help="comma-separated edge counts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
