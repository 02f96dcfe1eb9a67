import math
import random

import pytest

from semimatch import (
    AlternatingPath,
    BipartiteGraph,
    Capacities,
    PhaseOnMaximum,
    SemiMatching,
    adist,
    apply_path,
    build_graph,
    layered_bfs,
    run_phase,
)
from semimatch.augmenting import UNREACHED

from _instances import (
    brute_adist,
    brute_augmenting,
    complete,
    random_instance,
    random_semi_matching,
)


def test_layers_single_edge():
    g = build_graph(1, 1, [(0, 0)])
    caps = Capacities.uniform(g)
    L = layered_bfs(g, caps, SemiMatching(g, caps))
    assert L.layer(0) == [0] and L.layer(1) == [0] and L.t == 1


def test_layers_no_augmenting_path():
    g = build_graph(1, 2, [(0, 0), (0, 1)])
    caps = Capacities.uniform(g)
    M = SemiMatching.from_edges(g, caps, [0])
    L = layered_bfs(g, caps, M)
    assert L.layer(0) == [1]
    assert L.layer(1) == [0]
    assert L.layer(2) == [0]
    assert L.t is None
    assert brute_augmenting(g, M) == []


def test_layers_star_with_spare_capacity():
    g = build_graph(2, 1, [(0, 0), (1, 0)])
    caps = Capacities([1, 1], [2])
    M = SemiMatching.from_edges(g, caps, [0])
    L = layered_bfs(g, caps, M)
    assert L.layer(0) == [0] and L.layer(1) == [1] and L.t == 1
    assert [verts for verts, _ in brute_augmenting(g, M)] == [(0, 1)]


def test_adist_examples():
    g = build_graph(1, 2, [(0, 0), (0, 1)])
    caps = Capacities.uniform(g)
    M = SemiMatching.from_edges(g, caps, [0])
    L = layered_bfs(g, caps, M)
    assert adist(L, ("v", 1)) == 0
    assert adist(L, ("u", 0)) == 1
    assert adist(L, ("v", 0)) == 2
    assert brute_adist(g, M)[("v", 0)] == 2

    g1 = build_graph(1, 1, [(0, 0)])
    c1 = Capacities.uniform(g1)
    assert adist(layered_bfs(g1, c1, SemiMatching(g1, c1)), ("u", 0)) == 1


def test_adist_unreachable_is_infinite():
    g = build_graph(2, 1, [(0, 0)])
    caps = Capacities.uniform(g)
    L = layered_bfs(g, caps, SemiMatching(g, caps))
    assert adist(L, ("u", 1)) == math.inf


def test_adist_recomputes_past_truncation():
    # v1 -> u0 is free at distance 1, so BFS stops before reaching deeper vertices.
    g = build_graph(2, 2, [(0, 0), (1, 0), (1, 1)])
    caps = Capacities([1, 1], [1, 1])
    M = SemiMatching.from_edges(g, caps, [2])
    L = layered_bfs(g, caps, M)
    assert L.t == 1 and L.truncated
    assert L.layer_v[1] == UNREACHED
    assert adist(L, ("v", 1)) == 2
    assert brute_adist(g, M)[("v", 1)] == 2


def test_untruncated_layers_equal_brute_force_adist():
    rng = random.Random(21)
    for _ in range(300):
        g, caps = random_instance(rng, 5, 5, 12, 3)
        M = random_semi_matching(rng, g, caps)
        L = layered_bfs(g, caps, M, truncate=False)
        brute = brute_adist(g, M)
        for u in range(g.nu):
            assert adist(L, ("u", u)) == brute[("u", u)]
        for v in range(g.nv):
            assert adist(L, ("v", v)) == brute[("v", v)]


def test_t_is_shortest_augmenting_length():
    rng = random.Random(22)
    for _ in range(300):
        g, caps = random_instance(rng, 5, 5, 12, 3)
        M = random_semi_matching(rng, g, caps)
        paths = brute_augmenting(g, M)
        t = layered_bfs(g, caps, M).t
        if paths:
            assert t == min(len(e) for _, e in paths)
        else:
            assert t is None


def test_phase_k22():
    g = complete(2)
    caps = Capacities.uniform(g)
    M = SemiMatching(g, caps)
    L = layered_bfs(g, caps, M)
    assert L.t == 1
    _, count = run_phase(g, caps, M, L)
    assert count == 2 and M.size == 2


def test_phase_star():
    g = build_graph(3, 1, [(0, 0), (1, 0), (2, 0)])
    caps = Capacities([1, 1, 1], [3])
    M = SemiMatching(g, caps)
    _, count = run_phase(g, caps, M, layered_bfs(g, caps, M))
    assert count == 3 and M.size == 3


def test_phase_on_maximum_raises():
    g = build_graph(1, 1, [(0, 0)])
    caps = Capacities.uniform(g)
    M = SemiMatching.from_edges(g, caps, [0])
    with pytest.raises(PhaseOnMaximum):
        run_phase(g, caps, M, layered_bfs(g, caps, M))


def test_phase_paths_are_shortest_disjoint_and_blocking():
    rng = random.Random(23)
    for _ in range(300):
        g, caps = random_instance(rng, 7, 7, 20, 3)
        M = random_semi_matching(rng, g, caps)
        L = layered_bfs(g, caps, M)
        if L.t is None:
            continue
        t = L.t
        start = M.copy()
        paths = []
        _, count = run_phase(g, caps, M, L, paths)
        assert count == len(paths) >= 1
        replay = start.copy()
        flipped = set()
        for P in paths:
            assert P.length == t and P.is_augmenting_shape()
            assert len(set(P.v_vertices())) + len(set(P.u_vertices())) == len(P.vertices)
            for i, x in enumerate(P.vertices):
                table = L.layer_v if i % 2 == 0 else L.layer_u
                assert table[x] == i
            assert flipped.isdisjoint(P.edges)
            flipped.update(P.edges)
            apply_path(replay, P)
        assert replay.in_matching == M.in_matching
        M.validate()
        # No length-t augmenting path inside the original layers remains.
        for verts, edges in brute_augmenting(g, M):
            if len(edges) == t:
                inside = all(
                    (L.layer_v if i % 2 == 0 else L.layer_u)[x] == i for i, x in enumerate(verts)
                )
                assert not inside


def test_phase_reseeds_u_with_large_capacity():
    g = build_graph(1, 3, [(0, 0), (0, 1), (0, 2)])
    caps = Capacities([3], [1, 1, 1])
    M = SemiMatching(g, caps)
    _, count = run_phase(g, caps, M, layered_bfs(g, caps, M))
    assert count == 3 and M.deg_u == [3]


def test_adist_monotone_small_exhaustive():
    """Every shortest augmenting path, on small instances, checked by enumeration."""
    rng = random.Random(24)
    for _ in range(150):
        g, caps = random_instance(rng, 5, 5, 12, 3)
        M = random_semi_matching(rng, g, caps)
        aug = brute_augmenting(g, M)
        if not aug:
            continue
        t = min(len(e) for _, e in aug)
        before = brute_adist(g, M)
        for verts, edges in aug:
            if len(edges) != t:
                continue
            N = M.copy()
            apply_path(N, AlternatingPath(verts, edges, tuple(i % 2 == 1 for i in range(t))))
            after = brute_adist(g, N)
            assert all(before[x] <= after[x] for x in before)


def test_layers_ignore_zero_capacity_vertices():
    g = BipartiteGraph(2, 2, [(0, 0), (1, 1)])
    caps = Capacities([0, 1], [1, 0])
    L = layered_bfs(g, caps, SemiMatching(g, caps))
    assert L.layer(0) == [0]
    assert L.t is None
