"""Text formats for instances and solutions, and the seeded generator.

Instance format (indices are 1-based)::

    c any comment
    p fgsm <nu> <nv> <m>
    f <u> <cap>          optional, default capacity 1
    g <v> <cap>          optional, default capacity 1
    e <u> <v>            exactly m lines

Blank lines and lines starting with ``c`` are ignored.  The header must
come before any other line; capacity lines may appear in any order but
at most once per vertex.  The canonical serialisation is the header,
then f-lines sorted by vertex, then g-lines sorted by vertex (only for
capacities other than 1), then the edges in input order.

Solution format::

    s size <k>
    m <u> <v>            one per matched edge, in edge-id order
    i phases <p>
    i pathlens <t1,t2,...>

Generator: SplitMix64 with state s (64-bit, initialised to the seed)::

    s = s + 0x9E3779B97F4A7C15            (mod 2**64)
    z = s
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
    output z ^ (z >> 31)

``below(n)`` draws outputs x until x < 2**64 - (2**64 mod n) and returns
x mod n.  ``generate`` draws edges first: repeat ``c = below(nu*nv)``,
skipping cells already drawn, until m distinct cells are found; cell c is
edge (c // nv, c mod nv), in draw order.  Then f(u) = 1 + below(fmax)
for u = 0..nu-1, then g(v) = 1 + below(gmax) for v = 0..nv-1.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import DuplicateEdge, ParseError
from .graph import BipartiteGraph, Capacities, SemiMatching
from .solver import SolveStats

__all__ = [
    "Instance",
    "Solution",
    "SplitMix64",
    "parse_instance",
    "format_instance",
    "emit_solution",
    "parse_solution",
    "generate",
]

_MASK = (1 << 64) - 1


class Instance(NamedTuple):
    graph: BipartiteGraph
    caps: Capacities

    def to_text(self) -> str:
        return format_instance(self.graph, self.caps)


class Solution(NamedTuple):
    size: int
    pairs: list[tuple[int, int]]
    phases: int | None
    path_lengths: list[int] | None


def _ints(parts: list[str], count: int, lineno: int) -> list[int]:
    if len(parts) != count + 1:
        raise ParseError(f"expected {count} fields after '{parts[0]}'", lineno)
    try:
        return [int(x) for x in parts[1:]]
    except ValueError:
        raise ParseError("expected integers", lineno) from None


def parse_instance(text: str) -> Instance:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    f: dict[int, int] = {}
    g: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0].startswith("c"):
            continue
        tag = parts[0]
        if tag == "p":
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(parts) != 5 or parts[1] != "fgsm":
                raise ParseError("header must read 'p fgsm <nu> <nv> <m>'", lineno)
            header = _ints(parts[1:], 3, lineno)
            if min(header) < 0:
                raise ParseError("negative count in header", lineno)
            continue
        if header is None:
            raise ParseError(f"'{tag}' line before the header", lineno)
        nu, nv, _ = header
        if tag == "e":
            u, v = _ints(parts, 2, lineno)
            if not (1 <= u <= nu and 1 <= v <= nv):
                raise ParseError(f"edge ({u}, {v}) out of range", lineno)
            if (u, v) in seen:
                raise DuplicateEdge(u, v, lineno)
            seen.add((u, v))
            edges.append((u - 1, v - 1))
        elif tag in ("f", "g"):
            x, c = _ints(parts, 2, lineno)
            bound, table = (nu, f) if tag == "f" else (nv, g)
            if not 1 <= x <= bound:
                raise ParseError(f"vertex {x} out of range", lineno)
            if c < 0:
                raise ParseError("negative capacity", lineno)
            if x - 1 in table:
                raise ParseError(f"second capacity line for {tag} {x}", lineno)
            table[x - 1] = c
        else:
            raise ParseError(f"unknown line type '{tag}'", lineno)
    if header is None:
        raise ParseError("missing header line")
    nu, nv, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    graph = BipartiteGraph(nu, nv, edges)
    caps = Capacities([f.get(u, 1) for u in range(nu)], [g.get(v, 1) for v in range(nv)])
    return Instance(graph, caps)


def format_instance(graph: BipartiteGraph, caps: Capacities) -> str:
    lines = [f"p fgsm {graph.nu} {graph.nv} {graph.m}"]
    lines += [f"f {u + 1} {c}" for u, c in enumerate(caps.f) if c != 1]
    lines += [f"g {v + 1} {c}" for v, c in enumerate(caps.g) if c != 1]
    lines += [f"e {u + 1} {v + 1}" for u, v in zip(graph.eu, graph.ev)]
    return "\n".join(lines) + "\n"


def emit_solution(M: SemiMatching, stats: SolveStats | None = None) -> str:
    g = M.graph
    lines = [f"s size {M.size}"]
    lines += [f"m {g.eu[e] + 1} {g.ev[e] + 1}" for e in M.edge_ids()]
    if stats is not None:
        lines.append(f"i phases {stats.phases}")
        lines.append("i pathlens " + ",".join(str(t) for t in stats.path_lengths))
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> Solution:
    size = None
    pairs: list[tuple[int, int]] = []
    phases = None
    lengths = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0].startswith("c"):
            continue
        tag = parts[0]
        if tag == "s":
            if len(parts) != 3 or parts[1] != "size":
                raise ParseError("expected 's size <k>'", lineno)
            if size is not None:
                raise ParseError("second size line", lineno)
            size = _ints(parts[1:], 1, lineno)[0]
        elif tag == "m":
            u, v = _ints(parts, 2, lineno)
            pairs.append((u - 1, v - 1))
        elif tag == "i":
            if len(parts) >= 2 and parts[1] == "phases":
                phases = _ints(parts[1:], 1, lineno)[0]
            elif len(parts) >= 2 and parts[1] == "pathlens":
                body = parts[2] if len(parts) > 2 else ""
                try:
                    lengths = [int(x) for x in body.split(",") if x]
                except ValueError:
                    raise ParseError("bad path length list", lineno) from None
        else:
            raise ParseError(f"unknown line type '{tag}'", lineno)
    if size is None:
        raise ParseError("missing 's size' line")
    return Solution(size, pairs, phases, lengths)


class SplitMix64:
    """64-bit SplitMix generator; bit-exact definition in the module docstring."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n


def generate(nu: int, nv: int, m: int, fmax: int = 1, gmax: int = 1, seed: int = 0) -> Instance:
    if m > nu * nv:
        raise ValueError(f"m = {m} exceeds nu*nv = {nu * nv}")
    if min(nu, nv, m) < 0 or fmax < 1 or gmax < 1:
        raise ValueError("counts must be nonnegative and capacity bounds positive")
    rng = SplitMix64(seed)
    cells = nu * nv
    chosen: set[int] = set()
    edges: list[tuple[int, int]] = []
    while len(edges) < m:
        c = rng.below(cells)
        if c in chosen:
            continue
        chosen.add(c)
        edges.append(divmod(c, nv))
    f = [1 + rng.below(fmax) for _ in range(nu)]
    g = [1 + rng.below(gmax) for _ in range(nv)]
    return Instance(BipartiteGraph(nu, nv, edges), Capacities(f, g))
