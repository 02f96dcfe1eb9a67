"""Load balancing on top of the semi-matching solver.

U-vertices are unit tasks, V-vertices are machines, and the load of a
machine is its matched degree.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

from .errors import UnsaturatableU
from .graph import BipartiteGraph, Capacities, SemiMatching
from .solver import solve_max

__all__ = [
    "CostReport",
    "cost",
    "cost_of_loads",
    "optimal_semi_matching",
    "min_max_load",
    "quasi_matching",
]


@dataclass(frozen=True)
class CostReport:
    total: int
    loads: tuple[int, ...]
    max_load: int
    histogram: dict[int, int]


def cost_of_loads(loads: Sequence[int]) -> CostReport:
    loads = tuple(int(x) for x in loads)
    total = sum(d * (d + 1) // 2 for d in loads)
    return CostReport(total, loads, max(loads, default=0), dict(sorted(Counter(loads).items())))


def cost(M: SemiMatching) -> CostReport:
    """Total completion time: sum over machines of load*(load+1)/2."""
    return cost_of_loads(M.deg_v)


def _require_saturatable(graph: BipartiteGraph) -> None:
    for u in range(graph.nu):
        if not graph.adj_u[u]:
            raise UnsaturatableU(f"task u{u} has no machine")


def optimal_semi_matching(graph: BipartiteGraph) -> tuple[SemiMatching, CostReport]:
    """Assign every task to a machine with minimum total cost.

    Tasks are inserted one at a time.  For each new task we search the
    alternating structure (unmatched edge to a machine, then that
    machine's matched edge back to another task) and reassign along the
    path ending at the least loaded reachable machine, lowest index on
    ties.  O(n*m) overall.
    """
    _require_saturatable(graph)
    caps = Capacities([1] * graph.nu, [graph.nu] * graph.nv)
    M = SemiMatching(graph, caps)
    eu, ev = graph.eu, graph.ev
    adj_u, adj_v = graph.adj_u, graph.adj_v
    inm, load = M.in_matching, M.deg_v

    for root in range(graph.nu):
        via_v = [-1] * graph.nv   # unmatched edge used to reach v
        via_u = [-1] * graph.nu   # matched edge used to reach u
        seen_v = [False] * graph.nv
        seen_u = [False] * graph.nu
        seen_u[root] = True
        queue = deque([root])
        best = -1
        while queue:
            x = queue.popleft()
            for e in adj_u[x]:
                if inm[e]:
                    continue
                v = ev[e]
                if seen_v[v]:
                    continue
                seen_v[v] = True
                via_v[v] = e
                if best < 0 or load[v] < load[best] or (load[v] == load[best] and v < best):
                    best = v
                for e2 in adj_v[v]:
                    if inm[e2] and not seen_u[eu[e2]]:
                        seen_u[eu[e2]] = True
                        via_u[eu[e2]] = e2
                        queue.append(eu[e2])
        v = best
        while True:
            e = via_v[v]
            inm[e] = 1
            u = eu[e]
            if u == root:
                break
            e2 = via_u[u]
            inm[e2] = 0
            v = ev[e2]
        M.deg_u[root] = 1
        load[best] += 1
        M.size += 1
    return M, cost(M)


def min_max_load(graph: BipartiteGraph) -> int:
    """Smallest k such that all tasks fit with at most k tasks per machine."""
    _require_saturatable(graph)
    if graph.nu == 0:
        return 0
    lo = -(-graph.nu // max(graph.nv, 1))
    hi = graph.nu
    f = [1] * graph.nu
    while lo < hi:
        k = (lo + hi) // 2
        M, _ = solve_max(graph, Capacities(f, [k] * graph.nv))
        if M.size == graph.nu:
            hi = k
        else:
            lo = k + 1
    return lo


def quasi_matching(graph: BipartiteGraph, caps: Capacities) -> SemiMatching | None:
    """An edge set with deg <= f on U and deg >= g on V, or None if none exists.

    Such a set exists iff a maximum (f,g)-semi-matching saturates every
    V-vertex, i.e. has size g(V); that semi-matching is then returned.
    """
    M, _ = solve_max(graph, caps)
    return M if M.size == caps.total_g else None
