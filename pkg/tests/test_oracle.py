import random

import pytest

from semimatch import (
    AlternatingPath,
    Capacities,
    InvalidMatching,
    NotLarger,
    SemiMatching,
    TooLarge,
    apply_path,
    build_graph,
    solve_max,
)
from semimatch.oracle import (
    brute_force_max,
    check_f1_vertex_disjoint,
    decompose_difference,
    flow_reference_max,
)

from _instances import all_matchings, complete, random_instance


def test_brute_force_examples():
    g = build_graph(1, 1, [(0, 0)])
    assert brute_force_max(g, Capacities.uniform(g)) == (1, [0])
    star = build_graph(3, 1, [(0, 0), (1, 0), (2, 0)])
    assert brute_force_max(star, Capacities([1, 1, 1], [2]))[0] == 2
    assert brute_force_max(complete(2), Capacities([2, 2], [1, 1]))[0] == 2


def test_brute_force_guard():
    g = complete(5)  # 25 edges
    with pytest.raises(TooLarge):
        brute_force_max(g, Capacities.uniform(g))


def test_brute_force_agrees_with_itertools_enumeration():
    rng = random.Random(41)
    for _ in range(100):
        g, caps = random_instance(rng, 4, 4, 9, 3)
        size, witness = brute_force_max(g, caps)
        assert size == max(len(s) for s in all_matchings(g, caps))
        assert len(witness) == size
        SemiMatching.from_edges(g, caps, witness)


def test_flow_examples():
    g = complete(3)
    assert flow_reference_max(g, Capacities.uniform(g)) == 3
    assert flow_reference_max(g, Capacities.uniform(g, 0, 1)) == 0


def test_flow_agrees_with_brute_force():
    rng = random.Random(42)
    for _ in range(200):
        g, caps = random_instance(rng, 6, 6, 16, 3)
        assert flow_reference_max(g, caps) == brute_force_max(g, caps)[0]


def _compose(M, paths):
    N = M.copy()
    for P in paths:
        apply_path(N, P)
    return N


def test_decompose_single_edge():
    g = build_graph(1, 1, [(0, 0)])
    caps = Capacities.uniform(g)
    (P,) = decompose_difference(g, caps, [], [0])
    assert P.vertices == (0, 0) and P.edges == (0,)


def test_decompose_three_edge_example():
    g = build_graph(2, 2, [(0, 0), (0, 1), (1, 0)])
    caps = Capacities.uniform(g)
    (P,) = decompose_difference(g, caps, [0], [1, 2])
    assert P.vertices == (1, 0, 0, 1)
    assert P.edges == (1, 0, 2)


def test_decompose_errors():
    g = build_graph(1, 1, [(0, 0)])
    caps = Capacities.uniform(g)
    with pytest.raises(NotLarger):
        decompose_difference(g, caps, [0], [0])
    star = build_graph(2, 1, [(0, 0), (1, 0)])
    with pytest.raises(InvalidMatching):
        decompose_difference(star, Capacities.uniform(star), [], [0, 1])


def test_decompose_empty_to_solver_output():
    rng = random.Random(43)
    for _ in range(200):
        g, caps = random_instance(rng, 8, 8, 30, 3)
        M2, _ = solve_max(g, caps)
        if M2.size == 0:
            continue
        M = SemiMatching(g, caps)
        paths = decompose_difference(g, caps, M, M2)
        assert len(paths) == M2.size
        assert all(P.is_augmenting_shape() for P in paths)
        assert _compose(M, paths).in_matching == M2.in_matching
        # Edge-disjoint paths commute.
        assert _compose(M, paths[::-1]).in_matching == M2.in_matching


def test_decompose_when_target_reached_by_augmentation():
    """Whenever M2 grows out of M by augmentations, the paths rebuild M2 exactly."""
    rng = random.Random(44)
    done = 0
    for _ in range(400):
        g, caps = random_instance(rng, 7, 7, 25, 3)
        reduced = Capacities([rng.randint(0, c) for c in caps.f], [rng.randint(0, c) for c in caps.g])
        M = SemiMatching.from_edges(g, caps, solve_max(g, reduced)[0].edge_ids())
        M2, _ = solve_max(g, caps, initial=M)
        if M2.size == M.size:
            continue
        paths = decompose_difference(g, caps, M, M2)
        assert len(paths) == M2.size - M.size
        edges = [e for P in paths for e in P.edges]
        assert len(edges) == len(set(edges))
        assert _compose(M, paths).in_matching == M2.in_matching
        done += 1
    assert done > 100


def test_decompose_prefixes_are_valid_and_first_path_is_witness():
    rng = random.Random(45)
    for _ in range(300):
        g, caps = random_instance(rng, 7, 7, 25, 3)
        reduced = Capacities([rng.randint(0, c) for c in caps.f], [rng.randint(0, c) for c in caps.g])
        M = SemiMatching.from_edges(g, caps, solve_max(g, reduced)[0].edge_ids())
        M2, _ = solve_max(g, caps)
        if M2.size <= M.size:
            continue
        paths = decompose_difference(g, caps, M, M2)
        union = set(M.edge_ids()) | set(M2.edge_ids())
        first = paths[0]
        assert set(first.edges) <= union
        assert M.residual_v(first.start_v) > 0
        assert M.residual_u(first.vertices[-1]) > 0
        N = M.copy()
        for i, P in enumerate(paths, start=1):
            apply_path(N, P)  # raises if P is not augmenting for N
            N.validate()
            assert N.size == M.size + i


def test_exact_decomposition_counterexample():
    """A larger semi-matching need not be reachable from M by augmenting paths.

    M = {u0v0}, M2 = {u0v1, u1v2}: v0 loses degree, yet augmenting along
    a path never lowers any degree, so no single path turns M into M2.
    """
    g = build_graph(2, 3, [(0, 0), (0, 1), (1, 2)])
    caps = Capacities.uniform(g)
    (P,) = decompose_difference(g, caps, [0], [1, 2])
    M = SemiMatching.from_edges(g, caps, [0])
    N = _compose(M, [P])
    assert N.size == 2
    assert set(N.edge_ids()) != {1, 2}


def test_f1_vertex_disjoint():
    rng = random.Random(46)
    for _ in range(200):
        g, caps = random_instance(rng, 7, 7, 25, 3)
        caps = Capacities(caps.f, [1] * g.nv)
        M2, _ = solve_max(g, caps)
        if M2.size == 0:
            continue
        paths = decompose_difference(g, caps, [], M2)
        assert check_f1_vertex_disjoint(paths)
    a = AlternatingPath((0, 0), (0,), (False,))
    b = AlternatingPath((0, 1), (1,), (False,))
    assert not check_f1_vertex_disjoint([a, b])
    assert check_f1_vertex_disjoint([a])
    assert check_f1_vertex_disjoint([])
