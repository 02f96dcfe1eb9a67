"""Bipartite graphs, vertex capacities and (f,g)-semi-matchings.

Vertices are indexed 0..nu-1 on the U side and 0..nv-1 on the V side.
Edges get stable ids in input order.  A semi-matching is stored as a
per-edge flag plus cached matched degrees, so that flipping a path only
touches the vertices on that path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CapacityExhausted,
    DuplicateEdge,
    InvalidMatching,
    InvalidVertex,
    NotAlternating,
)

__all__ = [
    "BipartiteGraph",
    "Capacities",
    "SemiMatching",
    "AlternatingPath",
    "Violation",
    "build_graph",
    "apply_path",
    "check_semi_matching",
]


class BipartiteGraph:
    """Immutable bipartite graph G = (U + V, E) without multiple edges.

    ``eu[e]`` and ``ev[e]`` give the endpoints of edge ``e``;
    ``adj_u[u]`` / ``adj_v[v]`` list incident edge ids in input order.
    """

    __slots__ = ("nu", "nv", "eu", "ev", "adj_u", "adj_v", "_index")

    def __init__(self, nu: int, nv: int, edges: Iterable[tuple[int, int]]):
        if nu < 0 or nv < 0:
            raise InvalidVertex("vertex counts must be nonnegative")
        eu: list[int] = []
        ev: list[int] = []
        adj_u: list[list[int]] = [[] for _ in range(nu)]
        adj_v: list[list[int]] = [[] for _ in range(nv)]
        index: dict[tuple[int, int], int] = {}
        for u, v in edges:
            if not (0 <= u < nu and 0 <= v < nv):
                raise InvalidVertex(f"edge ({u}, {v}) outside {nu}x{nv}")
            if (u, v) in index:
                raise DuplicateEdge(u, v)
            e = len(eu)
            index[(u, v)] = e
            eu.append(u)
            ev.append(v)
            adj_u[u].append(e)
            adj_v[v].append(e)
        self.nu = nu
        self.nv = nv
        self.eu = tuple(eu)
        self.ev = tuple(ev)
        self.adj_u = tuple(tuple(a) for a in adj_u)
        self.adj_v = tuple(tuple(a) for a in adj_v)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.eu)

    @property
    def n(self) -> int:
        return self.nu + self.nv

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.eu, self.ev))

    def edge_id(self, u: int, v: int) -> int | None:
        return self._index.get((u, v))

    def degree_u(self, u: int) -> int:
        return len(self.adj_u[u])

    def degree_v(self, v: int) -> int:
        return len(self.adj_v[v])

    def mirrored(self) -> BipartiteGraph:
        """The same graph with the roles of U and V swapped (edge ids kept)."""
        return BipartiteGraph(self.nv, self.nu, zip(self.ev, self.eu))

    def __repr__(self) -> str:
        return f"BipartiteGraph(nu={self.nu}, nv={self.nv}, m={self.m})"


def build_graph(nu: int, nv: int, edge_list: Iterable[tuple[int, int]]) -> BipartiteGraph:
    return BipartiteGraph(nu, nv, edge_list)


class Capacities:
    """Per-vertex upper bounds ``f`` on U and ``g`` on V."""

    __slots__ = ("f", "g")

    def __init__(self, f: Sequence[int], g: Sequence[int]):
        self.f = tuple(int(x) for x in f)
        self.g = tuple(int(x) for x in g)
        if any(x < 0 for x in self.f) or any(x < 0 for x in self.g):
            raise ValueError("capacities must be nonnegative")

    @classmethod
    def uniform(cls, graph: BipartiteGraph, f: int = 1, g: int = 1) -> Capacities:
        return cls([f] * graph.nu, [g] * graph.nv)

    def check(self, graph: BipartiteGraph) -> None:
        if len(self.f) != graph.nu or len(self.g) != graph.nv:
            raise ValueError(
                f"capacity lengths ({len(self.f)}, {len(self.g)}) do not match "
                f"graph ({graph.nu}, {graph.nv})"
            )

    @property
    def total_f(self) -> int:
        return sum(self.f)

    @property
    def total_g(self) -> int:
        return sum(self.g)

    def mirrored(self) -> Capacities:
        return Capacities(self.g, self.f)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Capacities) and (self.f, self.g) == (other.f, other.g)

    def __repr__(self) -> str:
        return f"Capacities(f={list(self.f)}, g={list(self.g)})"


class SemiMatching:
    """A mutable (f,g)-semi-matching over a fixed graph and capacities.

    Attributes are plain lists so the solver can update them in place;
    ``size``, ``deg_u`` and ``deg_v`` are caches kept consistent with
    ``in_matching``.
    """

    __slots__ = ("graph", "caps", "in_matching", "deg_u", "deg_v", "size")

    def __init__(self, graph: BipartiteGraph, caps: Capacities):
        caps.check(graph)
        self.graph = graph
        self.caps = caps
        self.in_matching = bytearray(graph.m)
        self.deg_u = [0] * graph.nu
        self.deg_v = [0] * graph.nv
        self.size = 0

    @classmethod
    def from_edges(cls, graph: BipartiteGraph, caps: Capacities, edge_ids: Iterable[int]) -> SemiMatching:
        result = check_semi_matching(graph, caps, edge_ids)
        if isinstance(result, Violation):
            raise InvalidMatching(str(result))
        return result

    def copy(self) -> SemiMatching:
        other = SemiMatching.__new__(SemiMatching)
        other.graph = self.graph
        other.caps = self.caps
        other.in_matching = bytearray(self.in_matching)
        other.deg_u = list(self.deg_u)
        other.deg_v = list(self.deg_v)
        other.size = self.size
        return other

    def edge_ids(self) -> list[int]:
        return [e for e, flag in enumerate(self.in_matching) if flag]

    def pairs(self) -> list[tuple[int, int]]:
        g = self.graph
        return [(g.eu[e], g.ev[e]) for e in self.edge_ids()]

    def residual_u(self, u: int) -> int:
        return self.caps.f[u] - self.deg_u[u]

    def residual_v(self, v: int) -> int:
        return self.caps.g[v] - self.deg_v[v]

    def free_v(self) -> list[int]:
        """V-vertices with spare capacity (the start set of augmenting paths)."""
        g = self.caps.g
        return [v for v, d in enumerate(self.deg_v) if d < g[v]]

    def is_perfect(self) -> bool:
        return self.size == self.caps.total_f

    def add_edge(self, e: int) -> None:
        """Insert a single edge; both endpoints need spare capacity."""
        if self.in_matching[e]:
            raise InvalidMatching(f"edge {e} already matched")
        u, v = self.graph.eu[e], self.graph.ev[e]
        if self.residual_u(u) <= 0 or self.residual_v(v) <= 0:
            raise CapacityExhausted(f"edge {e} = ({u}, {v}) exceeds capacity")
        self.in_matching[e] = 1
        self.deg_u[u] += 1
        self.deg_v[v] += 1
        self.size += 1

    def validate(self) -> None:
        """Recompute degrees from the edge flags and compare with the caches."""
        g = self.graph
        du = [0] * g.nu
        dv = [0] * g.nv
        for e in self.edge_ids():
            du[g.eu[e]] += 1
            dv[g.ev[e]] += 1
        if du != self.deg_u or dv != self.deg_v or sum(du) != self.size:
            raise InvalidMatching("cached degrees out of sync with edge flags")
        for u, d in enumerate(du):
            if d > self.caps.f[u]:
                raise InvalidMatching(f"u{u} has degree {d} > f = {self.caps.f[u]}")
        for v, d in enumerate(dv):
            if d > self.caps.g[v]:
                raise InvalidMatching(f"v{v} has degree {d} > g = {self.caps.g[v]}")

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"SemiMatching(size={self.size}, edges={self.pairs()})"


@dataclass(frozen=True)
class Violation:
    """The first vertex whose matched degree exceeds its capacity."""

    side: str
    vertex: int
    degree: int
    capacity: int

    def __str__(self) -> str:
        return f"{self.side}{self.vertex} has degree {self.degree} > capacity {self.capacity}"


def check_semi_matching(
    graph: BipartiteGraph, caps: Capacities, edge_ids: Iterable[int]
) -> SemiMatching | Violation:
    """Build a SemiMatching from edge ids, or report the first capacity violation.

    U-vertices are checked before V-vertices, each in index order.
    """
    caps.check(graph)
    ids = sorted(set(edge_ids))
    for e in ids:
        if not 0 <= e < graph.m:
            raise IndexError(f"edge id {e} out of range")
    M = SemiMatching(graph, caps)
    for e in ids:
        M.in_matching[e] = 1
        M.deg_u[graph.eu[e]] += 1
        M.deg_v[graph.ev[e]] += 1
    M.size = len(ids)
    for u, d in enumerate(M.deg_u):
        if d > caps.f[u]:
            return Violation("u", u, d, caps.f[u])
    for v, d in enumerate(M.deg_v):
        if d > caps.g[v]:
            return Violation("v", v, d, caps.g[v])
    return M


@dataclass(frozen=True)
class AlternatingPath:
    """A walk v0, u1, v2, u3, ... starting on the V side.

    ``vertices[i]`` is a V-index for even i and a U-index for odd i.
    ``matched[i]`` records whether ``edges[i]`` was in M when the path
    was built.  Edge ids never repeat; vertices may, for trails produced
    by the decomposition oracle.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    matched: tuple[bool, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1 or len(self.matched) != len(self.edges):
            raise ValueError("path needs one more vertex than edges, one flag per edge")

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start_v(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> tuple[str, int]:
        side = "v" if len(self.edges) % 2 == 0 else "u"
        return side, self.vertices[-1]

    def v_vertices(self) -> tuple[int, ...]:
        return self.vertices[0::2]

    def u_vertices(self) -> tuple[int, ...]:
        return self.vertices[1::2]

    def is_augmenting_shape(self) -> bool:
        """Odd length and alternating unmatched/matched from the V end."""
        if len(self.edges) % 2 == 0:
            return False
        return all(flag == (i % 2 == 1) for i, flag in enumerate(self.matched))

    def __len__(self) -> int:
        return len(self.edges)


def _check_walk(graph: BipartiteGraph, P: AlternatingPath) -> None:
    if len(set(P.edges)) != len(P.edges):
        raise NotAlternating("path repeats an edge")
    for i, e in enumerate(P.edges):
        if not 0 <= e < graph.m:
            raise NotAlternating(f"edge id {e} out of range")
        a, b = P.vertices[i], P.vertices[i + 1]
        v, u = (a, b) if i % 2 == 0 else (b, a)
        if graph.eu[e] != u or graph.ev[e] != v:
            raise NotAlternating(f"edge {e} does not join v{v} and u{u}")


def apply_path(M: SemiMatching, P: AlternatingPath, strict: bool = True) -> SemiMatching:
    """Replace M by M xor E(P), in place, and return M.

    With ``strict`` the first edge (at the V end) must be unmatched, as in
    an augmenting path; ``strict=False`` accepts any alternating walk, e.g.
    to undo a previous augmentation.  Only vertices on P are touched.
    """
    graph = M.graph
    _check_walk(graph, P)
    if not P.edges:
        return M
    flags = [bool(M.in_matching[e]) for e in P.edges]
    if tuple(flags) != P.matched:
        raise NotAlternating("path flags do not match the current semi-matching")
    for a, b in zip(flags, flags[1:]):
        if a == b:
            raise NotAlternating("consecutive path edges have the same status")
    if strict and flags[0]:
        raise NotAlternating("first edge of the path is already matched")

    # Internal vertices keep their degree; only the two ends change.
    delta: dict[tuple[str, int], int] = {}
    first = ("v", P.vertices[0])
    delta[first] = delta.get(first, 0) + (-1 if flags[0] else 1)
    last = P.end
    delta[last] = delta.get(last, 0) + (-1 if flags[-1] else 1)
    for (side, x), d in delta.items():
        if d > 0:
            residual = M.residual_u(x) if side == "u" else M.residual_v(x)
            if residual < d:
                raise CapacityExhausted(f"{side}{x} has no residual capacity")

    for e, was in zip(P.edges, flags):
        M.in_matching[e] = 0 if was else 1
    for (side, x), d in delta.items():
        if side == "u":
            M.deg_u[x] += d
        else:
            M.deg_v[x] += d
    M.size += flags.count(False) - flags.count(True)
    return M
