"""Reference implementations used to check the solver.

Everything here is deliberately simple and shares no search code with
the phase solver: exhaustive enumeration over edge subsets (vectorised
with numpy), a plain Edmonds-Karp max-flow, and a constructive
decomposition of the difference of two semi-matchings into augmenting
paths.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidMatching, NotLarger, TooLarge
from .graph import (
    AlternatingPath,
    BipartiteGraph,
    Capacities,
    SemiMatching,
    Violation,
    check_semi_matching,
)

__all__ = [
    "BRUTE_FORCE_MAX_EDGES",
    "brute_force_max",
    "brute_force_quasi_feasible",
    "brute_force_optimal_cost",
    "flow_reference_max",
    "decompose_difference",
    "check_f1_vertex_disjoint",
]

BRUTE_FORCE_MAX_EDGES = 20
_CHUNK_BITS = 16


def _subset_chunks(m: int):
    """Yield (offset, 0/1 matrix) blocks covering all 2**m edge subsets."""
    total = 1 << m
    chunk = 1 << min(m, _CHUNK_BITS)
    shifts = np.arange(m, dtype=np.int64)
    for lo in range(0, total, chunk):
        masks = np.arange(lo, lo + chunk, dtype=np.int64)
        yield lo, ((masks[:, None] >> shifts) & 1).astype(np.int32)


def _incidence(graph: BipartiteGraph) -> tuple[np.ndarray, np.ndarray]:
    inc_u = np.zeros((graph.m, graph.nu), dtype=np.int32)
    inc_v = np.zeros((graph.m, graph.nv), dtype=np.int32)
    for e, (u, v) in enumerate(zip(graph.eu, graph.ev)):
        inc_u[e, u] = 1
        inc_v[e, v] = 1
    return inc_u, inc_v


def _guard(graph: BipartiteGraph) -> None:
    if graph.m > BRUTE_FORCE_MAX_EDGES:
        raise TooLarge(f"{graph.m} edges exceeds the brute-force limit of {BRUTE_FORCE_MAX_EDGES}")


def brute_force_max(graph: BipartiteGraph, caps: Capacities) -> tuple[int, list[int]]:
    """Largest edge subset respecting all capacities, by full enumeration.

    Returns the size and the edge ids of one optimal subset.
    """
    _guard(graph)
    caps.check(graph)
    inc_u, inc_v = _incidence(graph)
    f = np.asarray(caps.f, dtype=np.int32)
    g = np.asarray(caps.g, dtype=np.int32)
    best, best_mask = 0, 0
    for lo, bits in _subset_chunks(graph.m):
        ok = np.all(bits @ inc_u <= f, axis=1) & np.all(bits @ inc_v <= g, axis=1)
        sizes = np.where(ok, bits.sum(axis=1), -1)
        i = int(np.argmax(sizes))
        if sizes[i] > best:
            best, best_mask = int(sizes[i]), lo + i
    return best, [e for e in range(graph.m) if best_mask >> e & 1]


def brute_force_quasi_feasible(graph: BipartiteGraph, caps: Capacities) -> bool:
    """Is there an edge set with deg <= f on U and deg >= g on V?"""
    _guard(graph)
    caps.check(graph)
    inc_u, inc_v = _incidence(graph)
    f = np.asarray(caps.f, dtype=np.int32)
    g = np.asarray(caps.g, dtype=np.int32)
    for _, bits in _subset_chunks(graph.m):
        ok = np.all(bits @ inc_u <= f, axis=1) & np.all(bits @ inc_v >= g, axis=1)
        if ok.any():
            return True
    return False


def brute_force_optimal_cost(graph: BipartiteGraph, limit: int = 10**6) -> int:
    """Minimum of sum load*(load+1)/2 over every way to give each u one neighbour."""
    choices = [list(graph.adj_u[u]) for u in range(graph.nu)]
    if any(not c for c in choices):
        raise ValueError("some U-vertex has no neighbour")
    total = int(np.prod([len(c) for c in choices], dtype=np.int64)) if choices else 1
    if total > limit:
        raise TooLarge(f"{total} assignments exceeds limit {limit}")
    if graph.nu == 0:
        return 0
    # Mixed-radix enumeration: row k picks choices[u][digit_u(k)].
    idx = np.arange(total, dtype=np.int64)
    loads = np.zeros((total, graph.nv), dtype=np.int64)
    rows = np.arange(total)
    for c in choices:
        targets = np.asarray([graph.ev[e] for e in c], dtype=np.int64)
        digit = idx % len(c)
        idx //= len(c)
        np.add.at(loads, (rows, targets[digit]), 1)
    return int((loads * (loads + 1) // 2).sum(axis=1).min())


def flow_reference_max(graph: BipartiteGraph, caps: Capacities) -> int:
    """Max-flow value of source -f-> U -1-> V -g-> sink, by Edmonds-Karp."""
    caps.check(graph)
    nu, nv = graph.nu, graph.nv
    source, sink = nu + nv, nu + nv + 1
    n = nu + nv + 2
    head: list[int] = []
    cap: list[int] = []
    out: list[list[int]] = [[] for _ in range(n)]

    def arc(a: int, b: int, c: int) -> None:
        out[a].append(len(head))
        head.append(b)
        cap.append(c)
        out[b].append(len(head))
        head.append(a)
        cap.append(0)

    for u in range(nu):
        arc(source, u, caps.f[u])
    for u, v in zip(graph.eu, graph.ev):
        arc(u, nu + v, 1)
    for v in range(nv):
        arc(nu + v, sink, caps.g[v])

    flow = 0
    while True:
        parent_arc = [-1] * n
        parent_arc[source] = -2
        queue = deque([source])
        while queue and parent_arc[sink] == -1:
            a = queue.popleft()
            for k in out[a]:
                b = head[k]
                if cap[k] > 0 and parent_arc[b] == -1:
                    parent_arc[b] = k
                    queue.append(b)
        if parent_arc[sink] == -1:
            return flow
        push = None
        b = sink
        while b != source:
            k = parent_arc[b]
            push = cap[k] if push is None else min(push, cap[k])
            b = head[k ^ 1]
        b = sink
        while b != source:
            k = parent_arc[b]
            cap[k] -= push
            cap[k ^ 1] += push
            b = head[k ^ 1]
        flow += push


def _as_matching(graph, caps, M) -> SemiMatching:
    if isinstance(M, SemiMatching):
        M.validate()
        return M
    result = check_semi_matching(graph, caps, M)
    if isinstance(result, Violation):
        raise InvalidMatching(str(result))
    return result


def decompose_difference(
    graph: BipartiteGraph,
    caps: Capacities,
    M: SemiMatching | Iterable[int],
    M2: SemiMatching | Iterable[int],
) -> list[AlternatingPath]:
    """Split the change from M to a larger M2 into k = |M2| - |M| augmenting paths.

    Common edges are ignored.  Each round peels a shortest alternating
    path inside the remaining difference, starting at a V-vertex that
    gains degree and ending at a U-vertex that gains degree, leaving via
    M2-edges from V and via M-edges from U.  The returned paths are
    pairwise edge-disjoint, each is augmenting for M combined with the
    paths before it, and every edge lies in the symmetric difference.

    Afterwards, closed alternating trails left in the difference are
    spliced into a path they touch, so the composition reproduces M2
    exactly whenever the leftover edges allow it.  Leftover edges that
    cannot be absorbed (an isolated alternating cycle, or an alternating
    path that is not augmenting) stay out; then composing the paths gives
    a semi-matching of size |M2| that differs from M2 on those edges.
    """
    A = _as_matching(graph, caps, M)
    B = _as_matching(graph, caps, M2)
    k = B.size - A.size
    if k <= 0:
        raise NotLarger(f"|M2| - |M| = {k} must be positive")

    # Directed view of the difference: M2-only edges go V -> U, M-only U -> V.
    out_v: dict[int, list[int]] = {}
    out_u: dict[int, list[int]] = {}
    alive: set[int] = set()
    for e in range(graph.m):
        a, b = A.in_matching[e], B.in_matching[e]
        if a == b:
            continue
        alive.add(e)
        if b:
            out_v.setdefault(graph.ev[e], []).append(e)
        else:
            out_u.setdefault(graph.eu[e], []).append(e)

    # Degree surplus of M2 over M among the remaining edges.
    gain_v = [B.deg_v[v] - A.deg_v[v] for v in range(graph.nv)]
    gain_u = [B.deg_u[u] - A.deg_u[u] for u in range(graph.nu)]

    paths: list[list[int]] = []
    for _ in range(k):
        edges = _peel(graph, out_v, out_u, alive, gain_v, gain_u)
        if edges is None:
            raise AssertionError("no augmenting path in the difference although |M2| > |M|")
        for e in edges:
            alive.discard(e)
        gain_v[graph.ev[edges[0]]] -= 1
        gain_u[graph.eu[edges[-1]]] -= 1
        paths.append(edges)

    _splice_cycles(graph, out_v, out_u, alive, paths)

    result = []
    for edges in paths:
        verts = [graph.ev[edges[0]]]
        for i, e in enumerate(edges):
            verts.append(graph.eu[e] if i % 2 == 0 else graph.ev[e])
        result.append(AlternatingPath(tuple(verts), tuple(edges), tuple(i % 2 == 1 for i in range(len(edges)))))
    return result


def _peel(graph, out_v, out_u, alive, gain_v, gain_u) -> list[int] | None:
    """BFS from gaining V-vertices to a gaining U-vertex over live edges."""
    eu, ev = graph.eu, graph.ev
    starts = [v for v in range(graph.nv) if gain_v[v] > 0]
    seen_v = set(starts)
    seen_u: set[int] = set()
    came_v: dict[int, int] = {}
    came_u: dict[int, int] = {}
    queue = deque(starts)
    while queue:
        v = queue.popleft()
        for e in out_v.get(v, ()):
            if e not in alive:
                continue
            u = eu[e]
            if u in seen_u:
                continue
            seen_u.add(u)
            came_u[u] = e
            if gain_u[u] > 0:
                edges = [e]
                while ev[edges[-1]] in came_v:
                    back = came_v[ev[edges[-1]]]
                    edges.append(back)
                    edges.append(came_u[eu[back]])
                edges.reverse()
                return edges
            for e2 in out_u.get(u, ()):
                if e2 in alive and ev[e2] not in seen_v:
                    seen_v.add(ev[e2])
                    came_v[ev[e2]] = e2
                    queue.append(ev[e2])
    return None


def _splice_cycles(graph, out_v, out_u, alive, paths) -> None:
    """Absorb closed leftover trails into paths that share a vertex with them.

    A closed trail through a V-vertex leaves by an M2-edge and returns by
    an M-edge (the reverse on U), so inserting it where the path visits
    that vertex keeps the path alternating.
    """
    eu, ev = graph.eu, graph.ev
    changed = True
    while alive and changed:
        changed = False
        for p, edges in enumerate(paths):
            for pos in range(len(edges) + 1):
                if pos == 0:
                    side, x = "v", ev[edges[0]]
                elif pos % 2:
                    side, x = "u", eu[edges[pos - 1]]
                else:
                    side, x = "v", ev[edges[pos - 1]]
                cycle = _closed_trail(graph, out_v, out_u, alive, side, x)
                if cycle:
                    alive.difference_update(cycle)
                    paths[p] = edges[:pos] + cycle + edges[pos:]
                    changed = True
                    break
            if changed:
                break


def _closed_trail(graph, out_v, out_u, alive, side, x) -> list[int] | None:
    """A closed alternating trail through x over live edges, if one exists.

    Only returned when it can be closed: we walk greedily and accept the
    walk if it returns to x on the same side.  Balanced leftovers (every
    vertex with equal in/out live degree) always close.
    """
    eu, ev = graph.eu, graph.ev
    used: set[int] = set()
    trail: list[int] = []
    cur_side, cur = side, x
    while True:
        outs = out_v.get(cur, ()) if cur_side == "v" else out_u.get(cur, ())
        nxt = next((e for e in outs if e in alive and e not in used), None)
        if nxt is None:
            break
        used.add(nxt)
        trail.append(nxt)
        if cur_side == "v":
            cur_side, cur = "u", eu[nxt]
        else:
            cur_side, cur = "v", ev[nxt]
        if cur_side == side and cur == x:
            return trail
    return None


def check_f1_vertex_disjoint(paths: Sequence[AlternatingPath]) -> bool:
    """True iff no V-vertex lies on two different paths."""
    seen: set[int] = set()
    for P in paths:
        mine = set(P.v_vertices())
        if mine & seen:
            return False
        seen |= mine
    return True
