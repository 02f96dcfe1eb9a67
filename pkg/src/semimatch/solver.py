"""Maximum (f,g)-semi-matching driver and maximality certificate."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .augmenting import find_shortest_path, layered_bfs, run_phase
from .graph import AlternatingPath, BipartiteGraph, Capacities, SemiMatching, apply_path

__all__ = [
    "PhaseRecord",
    "SolveStats",
    "Certificate",
    "solve_max",
    "solve_max_single",
    "certify_maximum",
    "greedy_start",
]


@dataclass(frozen=True)
class PhaseRecord:
    path_length: int
    augmentations: int


@dataclass
class SolveStats:
    records: list[PhaseRecord] = field(default_factory=list)
    initial_size: int = 0
    elapsed: float = 0.0

    @property
    def phases(self) -> int:
        return len(self.records)

    @property
    def path_lengths(self) -> list[int]:
        return [r.path_length for r in self.records]

    @property
    def augmentations(self) -> int:
        return sum(r.augmentations for r in self.records)

    @property
    def size(self) -> int:
        return self.initial_size + self.augmentations

    def phase_bound(self) -> float:
        """2*sqrt(s) + 1, the loop bound for a cold start reaching size s."""
        return 2.0 * math.sqrt(self.size) + 1.0

    def within_phase_bound(self) -> bool:
        return self.phases <= self.phase_bound()

    def lengths_increasing(self) -> bool:
        ts = self.path_lengths
        return all(t % 2 == 1 for t in ts) and all(a < b for a, b in zip(ts, ts[1:]))


def greedy_start(graph: BipartiteGraph, caps: Capacities) -> SemiMatching:
    """Scan edges in id order, keeping every edge that still fits."""
    M = SemiMatching(graph, caps)
    f, g = caps.f, caps.g
    du, dv = M.deg_u, M.deg_v
    for e, (u, v) in enumerate(zip(graph.eu, graph.ev)):
        if du[u] < f[u] and dv[v] < g[v]:
            M.in_matching[e] = 1
            du[u] += 1
            dv[v] += 1
            M.size += 1
    return M


def _initial(graph, caps, warm_start, initial):
    caps.check(graph)
    if initial is not None:
        return initial.copy()
    if warm_start:
        return greedy_start(graph, caps)
    return SemiMatching(graph, caps)


def solve_max(
    graph: BipartiteGraph,
    caps: Capacities,
    warm_start: bool = False,
    initial: SemiMatching | None = None,
) -> tuple[SemiMatching, SolveStats]:
    """Compute a maximum (f,g)-semi-matching by phases of shortest augmentations.

    Each phase layers the graph by alternating distance and then augments
    along every disjoint shortest path it can find; the shortest length
    grows from phase to phase, and the loop ends when no augmenting path
    is left.  Runs in O(m * min(sqrt(f(U)), sqrt(g(V)))).

    Args:
        graph: the bipartite graph.
        caps: capacities f on U and g on V.
        warm_start: begin from a greedy semi-matching instead of the empty one.
        initial: begin from (a copy of) this semi-matching.

    Returns:
        The semi-matching and per-phase statistics.
    """
    start = time.perf_counter()
    M = _initial(graph, caps, warm_start, initial)
    stats = SolveStats(initial_size=M.size)
    while True:
        layers = layered_bfs(graph, caps, M)
        if layers.t is None:
            break
        _, count = run_phase(graph, caps, M, layers)
        stats.records.append(PhaseRecord(layers.t, count))
    stats.elapsed = time.perf_counter() - start
    return M, stats


def solve_max_single(
    graph: BipartiteGraph,
    caps: Capacities,
    warm_start: bool = False,
    initial: SemiMatching | None = None,
) -> tuple[SemiMatching, SolveStats]:
    """Baseline: augment along one shortest path per BFS.  O(s*m)."""
    start = time.perf_counter()
    M = _initial(graph, caps, warm_start, initial)
    stats = SolveStats(initial_size=M.size)
    while True:
        layers = layered_bfs(graph, caps, M)
        path = find_shortest_path(graph, caps, M, layers)
        if path is None:
            break
        apply_path(M, path)
        stats.records.append(PhaseRecord(layers.t, 1))
    stats.elapsed = time.perf_counter() - start
    return M, stats


@dataclass(frozen=True)
class Certificate:
    """Outcome of a maximality check; falsy when a witness path exists."""

    maximum: bool
    witness: AlternatingPath | None = None

    def __bool__(self) -> bool:
        return self.maximum


def certify_maximum(graph: BipartiteGraph, caps: Capacities, M: SemiMatching) -> Certificate:
    """M is maximum iff no augmenting path joins two vertices with spare capacity."""
    path = find_shortest_path(graph, caps, M)
    if path is None:
        return Certificate(True)
    return Certificate(False, path)
