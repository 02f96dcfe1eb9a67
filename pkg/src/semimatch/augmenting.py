"""One phase of the solver: layered BFS plus blocking augmentation.

Alternating paths start at a V-vertex with spare capacity, leave V
through an unmatched edge and leave U through a matched edge.  The BFS
assigns every reachable vertex its alternating distance; a phase then
augments along shortest paths until none of that length remain inside
the layers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PhaseOnMaximum
from .graph import AlternatingPath, BipartiteGraph, Capacities, SemiMatching

__all__ = [
    "UNREACHED",
    "LayerStructure",
    "layered_bfs",
    "adist",
    "run_phase",
    "find_shortest_path",
]

UNREACHED = -1


@dataclass
class LayerStructure:
    """BFS layers L_0, L_1, ... for one semi-matching.

    ``layer_u[u]`` / ``layer_v[v]`` hold the layer index or UNREACHED.
    Even layers contain V-vertices, odd layers U-vertices.  ``t`` is the
    first odd layer holding a U-vertex with spare capacity, or None when
    the semi-matching is maximum.  When ``truncated`` is set, layers past
    ``t`` were never built.
    """

    layer_u: list[int]
    layer_v: list[int]
    frontiers: list[list[int]]
    t: int | None
    truncated: bool
    graph: BipartiteGraph = field(repr=False)
    caps: Capacities = field(repr=False)
    matching: SemiMatching = field(repr=False)

    def layer(self, i: int) -> list[int]:
        return self.frontiers[i] if i < len(self.frontiers) else []


def layered_bfs(
    graph: BipartiteGraph, caps: Capacities, M: SemiMatching, truncate: bool = True
) -> LayerStructure:
    """Classify vertices by alternating distance from the unsaturated V-vertices.

    With ``truncate`` the search stops once the first odd layer containing
    a free U-vertex is complete; otherwise every reachable vertex is
    layered (``t`` is still the first such layer).
    """
    f, g = caps.f, caps.g
    eu, ev = graph.eu, graph.ev
    adj_u, adj_v = graph.adj_u, graph.adj_v
    inm = M.in_matching
    deg_u, deg_v = M.deg_u, M.deg_v

    layer_u = [UNREACHED] * graph.nu
    layer_v = [UNREACHED] * graph.nv
    frontier = [v for v in range(graph.nv) if deg_v[v] < g[v]]
    for v in frontier:
        layer_v[v] = 0
    frontiers = [frontier]
    t = None
    i = 0
    while frontier:
        odd: list[int] = []
        found = False
        for v in frontier:
            for e in adj_v[v]:
                if not inm[e]:
                    u = eu[e]
                    if layer_u[u] == UNREACHED:
                        layer_u[u] = i + 1
                        odd.append(u)
                        if deg_u[u] < f[u]:
                            found = True
        if not odd:
            break
        frontiers.append(odd)
        if found and t is None:
            t = i + 1
            if truncate:
                break
        even: list[int] = []
        for u in odd:
            for e in adj_u[u]:
                if inm[e]:
                    v = ev[e]
                    if layer_v[v] == UNREACHED:
                        layer_v[v] = i + 2
                        even.append(v)
        if not even:
            break
        frontiers.append(even)
        frontier = even
        i += 2
    return LayerStructure(
        layer_u, layer_v, frontiers, t, truncate and t is not None, graph, caps, M
    )


def adist(layers: LayerStructure, x: tuple[str, int]) -> float:
    """Alternating distance of vertex ``x = ('u', i)`` or ``('v', j)``.

    Returns ``math.inf`` for unreachable vertices.  If the layering was
    truncated before reaching ``x``, an untruncated BFS is run first.
    """
    side, idx = x
    table = layers.layer_u if side == "u" else layers.layer_v
    d = table[idx]
    if d == UNREACHED and layers.truncated:
        full = layered_bfs(layers.graph, layers.caps, layers.matching, truncate=False)
        table = full.layer_u if side == "u" else full.layer_v
        d = table[idx]
    return math.inf if d == UNREACHED else d


class _PhaseSearch:
    """Depth-first search over the layered graph with current-arc pointers.

    A pointer only moves forward: past an edge whose subtree failed, or
    past an edge that is no longer admissible because an augmentation
    flipped it.  Hence every edge is inspected O(1) times per phase.
    """

    def __init__(self, graph: BipartiteGraph, caps: Capacities, M: SemiMatching, layers: LayerStructure):
        self.graph = graph
        self.caps = caps
        self.M = M
        self.layers = layers
        self.ptr_u = [0] * graph.nu
        self.ptr_v = [0] * graph.nv

    def search(self, u0: int) -> tuple[list[int], list[int]] | None:
        """Edges and vertices of a layered path from ``u0`` (layer t) down to L_0."""
        graph, M, layers = self.graph, self.M, self.layers
        eu, ev = graph.eu, graph.ev
        adj_u, adj_v = graph.adj_u, graph.adj_v
        inm = M.in_matching
        deg_v, g = M.deg_v, self.caps.g
        layer_u, layer_v = layers.layer_u, layers.layer_v
        ptr_u, ptr_v = self.ptr_u, self.ptr_v

        verts = [u0]
        edges: list[int] = []
        depth = layers.t
        while True:
            x = verts[-1]
            target = depth - 1
            if depth & 1:
                adj = adj_u[x]
                p = ptr_u[x]
                n = len(adj)
                while p < n:
                    e = adj[p]
                    if not inm[e]:
                        v = ev[e]
                        if layer_v[v] == target:
                            if target:
                                break
                            if deg_v[v] < g[v]:
                                ptr_u[x] = p
                                edges.append(e)
                                verts.append(v)
                                return edges, verts
                    p += 1
                ptr_u[x] = p
                if p < n:
                    edges.append(adj[p])
                    verts.append(ev[adj[p]])
                    depth = target
                    continue
            else:
                adj = adj_v[x]
                p = ptr_v[x]
                n = len(adj)
                while p < n:
                    e = adj[p]
                    if inm[e] and layer_u[eu[e]] == target:
                        break
                    p += 1
                ptr_v[x] = p
                if p < n:
                    edges.append(adj[p])
                    verts.append(eu[adj[p]])
                    depth = target
                    continue
            # x is exhausted; retreat and retire the edge that led here.
            verts.pop()
            if not verts:
                return None
            edges.pop()
            depth += 1
            parent = verts[-1]
            if depth & 1:
                ptr_u[parent] += 1
            else:
                ptr_v[parent] += 1


def _to_path(edges: list[int], verts: list[int]) -> AlternatingPath:
    # search() walks from U down to V; paths are reported from the V end.
    n = len(edges)
    return AlternatingPath(
        tuple(reversed(verts)),
        tuple(reversed(edges)),
        tuple(i % 2 == 1 for i in range(n)),
    )


def _flip(M: SemiMatching, edges: list[int], u0: int, v_end: int) -> None:
    inm = M.in_matching
    for e in edges:
        inm[e] ^= 1
    M.deg_u[u0] += 1
    M.deg_v[v_end] += 1
    M.size += 1


def run_phase(
    graph: BipartiteGraph,
    caps: Capacities,
    M: SemiMatching,
    layers: LayerStructure,
    paths: list[AlternatingPath] | None = None,
) -> tuple[SemiMatching, int]:
    """Augment M along length-t paths inside the layers until none remain.

    M is updated in place.  Each applied path is appended to ``paths``
    when a list is given.  Returns M and the number of augmentations.
    """
    t = layers.t
    if t is None:
        raise PhaseOnMaximum("no augmenting path: the semi-matching is already maximum")
    search = _PhaseSearch(graph, caps, M, layers)
    f, deg_u = caps.f, M.deg_u
    count = 0
    for u0 in layers.frontiers[t]:
        while deg_u[u0] < f[u0]:
            found = search.search(u0)
            if found is None:
                break
            edges, verts = found
            if paths is not None:
                paths.append(_to_path(edges, verts))
            _flip(M, edges, u0, verts[-1])
            count += 1
    return M, count


def find_shortest_path(
    graph: BipartiteGraph, caps: Capacities, M: SemiMatching, layers: LayerStructure | None = None
) -> AlternatingPath | None:
    """One shortest augmenting path for M, without modifying M."""
    if layers is None:
        layers = layered_bfs(graph, caps, M)
    if layers.t is None:
        return None
    search = _PhaseSearch(graph, caps, M, layers)
    f, deg_u = caps.f, M.deg_u
    for u0 in layers.frontiers[layers.t]:
        if deg_u[u0] < f[u0]:
            found = search.search(u0)
            if found is not None:
                return _to_path(*found)
    raise AssertionError("layered BFS reported a free U-vertex but no path was found")
