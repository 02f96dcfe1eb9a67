"""Phase-count benchmark over instance families of growing edge count."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .formats import Instance, generate
from .graph import BipartiteGraph, Capacities
from .solver import solve_max


def _random(m: int, seed: int) -> Instance:
    n = max(1, m // 10)
    return generate(n, n, min(m, n * n), fmax=4, gmax=4, seed=seed)


def _unit(m: int, seed: int) -> Instance:
    n = max(1, m // 10)
    return generate(n, n, min(m, n * n), seed=seed)


def _complete(m: int, seed: int) -> Instance:
    n = max(1, math.isqrt(m))
    graph = BipartiteGraph(n, n, [(u, v) for u in range(n) for v in range(n)])
    return Instance(graph, Capacities.uniform(graph))


FAMILIES: dict[str, Callable[[int, int], Instance]] = {
    "random": _random,
    "unit": _unit,
    "complete": _complete,
}


@dataclass(frozen=True)
class BenchRow:
    m: int
    size: int
    phases: int
    bound: float
    elapsed: float

    @property
    def within_bound(self) -> bool:
        return self.phases <= self.bound + 1


def run_bench(family: str, sizes: list[int], seed: int = 0) -> list[BenchRow]:
    try:
        make = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    rows = []
    for m in sizes:
        graph, caps = make(m, seed)
        M, stats = solve_max(graph, caps)
        rows.append(BenchRow(graph.m, M.size, stats.phases, 2 * math.sqrt(M.size), stats.elapsed))
    return rows


def fitted_constant(rows: list[BenchRow]) -> float:
    """Smallest c with phases <= c*sqrt(s) on every row."""
    return max((r.phases / math.sqrt(r.size) for r in rows if r.size), default=0.0)


def format_table(rows: list[BenchRow]) -> str:
    lines = [f"{'m':>9} {'s':>9} {'phases':>7} {'2sqrt(s)':>9} {'elapsed':>9}"]
    for r in rows:
        lines.append(f"{r.m:>9} {r.size:>9} {r.phases:>7} {r.bound:>9.2f} {r.elapsed:>9.3f}")
    lines.append(f"fitted c = {fitted_constant(rows):.3f}  (phases <= c*sqrt(s))")
    return "\n".join(lines) + "\n"
