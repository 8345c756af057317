import numpy as np
import pytest

from domcore.graph import build_graph, induced_subgraph
from domcore.kcore import core_numbers, max_kcore

from _reference import adjacency_from_edges, fixed_point_cores, induce_adj, reference_max_kcore


def subgraph_of(edges, n):
    rows = {v: [float(v)] for v in range(n)}
    g, _ = build_graph(edges, rows)
    return induced_subgraph(g, range(n))


def test_triangle_core_numbers():
    sg = subgraph_of([(0, 1), (1, 2), (0, 2)], 3)
    table = core_numbers(sg)
    assert table.as_dict() == {0: 2, 1: 2, 2: 2}
    assert table.k_max == 2


def test_star_core_numbers():
    sg = subgraph_of([(0, i) for i in range(1, 6)], 6)
    table = core_numbers(sg)
    assert set(table.as_dict().values()) == {1}


def test_k4_plus_pendant_matches_fixed_point_oracle():
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]
    sg = subgraph_of(edges, 5)
    adj = induce_adj(adjacency_from_edges(5, edges), range(5))
    assert core_numbers(sg).as_dict() == fixed_point_cores(adj)
    assert core_numbers(sg).as_dict() == {0: 3, 1: 3, 2: 3, 3: 3, 4: 1}


def test_random_graphs_match_fixed_point_oracle():
    rng = np.random.default_rng(21)
    for _ in range(25):
        n = int(rng.integers(4, 30))
        p = float(rng.uniform(0.05, 0.5))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
        sg = subgraph_of(edges, n)
        adj = induce_adj(adjacency_from_edges(n, edges), range(n))
        assert core_numbers(sg).as_dict() == fixed_point_cores(adj)


def test_core_nesting_property():
    rng = np.random.default_rng(25)
    edges = [(u, v) for u in range(40) for v in range(u + 1, 40) if rng.random() < 0.15]
    sg = subgraph_of(edges, 40)
    table = core_numbers(sg)
    cores = table.core
    for k in range(table.k_max + 1):
        level_k = set(np.flatnonzero(cores >= k).tolist())
        level_k1 = set(np.flatnonzero(cores >= k + 1).tolist())
        assert level_k1 <= level_k
    assert (cores <= sg.degrees).all()


def test_empty_subgraph_rejected():
    g, _ = build_graph([(0, 1)], {0: [1.0], 1: [2.0]})
    with pytest.raises(ValueError):
        induced_subgraph(g, [])


class TestMaxKcore:
    def test_triangle_with_anchor(self):
        sg = subgraph_of([(0, 1), (1, 2), (0, 2)], 3)
        core = max_kcore(sg, anchor=1)
        assert core.members.tolist() == [0, 1, 2]

    def test_two_triangles_anchor_selects_its_component(self):
        edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        sg = subgraph_of(edges, 6)
        assert max_kcore(sg, anchor=4).members.tolist() == [3, 4, 5]
        assert max_kcore(sg, anchor=0).members.tolist() == [0, 1, 2]

    def test_two_triangles_no_anchor_prefers_smallest_index(self):
        edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        sg = subgraph_of(edges, 6)
        assert max_kcore(sg).members.tolist() == [0, 1, 2]

    def test_anchor_peeled_away_falls_back_to_largest_component(self):
        # K4 on 0..3 with a pendant 4; the pendant never reaches the top core
        edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]
        sg = subgraph_of(edges, 5)
        core = max_kcore(sg, anchor=4)
        assert core.members.tolist() == [0, 1, 2, 3]

    def test_output_connected_with_min_degree_kmax(self):
        rng = np.random.default_rng(33)
        for _ in range(20):
            n = int(rng.integers(5, 35))
            p = float(rng.uniform(0.08, 0.4))
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
            sg = subgraph_of(edges, n)
            table = core_numbers(sg)
            anchor = int(rng.integers(0, n))
            core = max_kcore(sg, anchor=anchor)
            assert int(core.degrees.min()) == table.k_max
            # connectivity: BFS from the first member reaches all members
            seen = {int(core.members[0])}
            stack = [int(core.members[0])]
            while stack:
                u = stack.pop()
                for x in core.neighbors(u):
                    if int(x) not in seen:
                        seen.add(int(x))
                        stack.append(int(x))
            assert seen == set(core.members.tolist())

    def test_matches_reference_rule(self):
        rng = np.random.default_rng(37)
        for _ in range(20):
            n = int(rng.integers(4, 25))
            p = float(rng.uniform(0.05, 0.5))
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
            sg = subgraph_of(edges, n)
            adj = induce_adj(adjacency_from_edges(n, edges), range(n))
            anchor = int(rng.integers(0, n))
            want, kmax = reference_max_kcore(adj, anchor=anchor)
            got = max_kcore(sg, anchor=anchor)
            assert set(got.members.tolist()) == want
            assert int(got.degrees.min()) == kmax
