import numpy as np
import pytest

from domcore.graph import (
    build_graph,
    egonet,
    induced_subgraph,
    max_degree,
    random_walk_sample,
)

from _reference import adjacency_from_edges, induced_edges, replay_walk_sample


def int_graph(edges, n, m=1, rng=None):
    """Graph on nodes 0..n-1 with random or constant-chain attributes."""
    if rng is None:
        rows = {v: [float(v + 1)] * m for v in range(n)}
    else:
        rows = {v: rng.random(m).tolist() for v in range(n)}
    g, _ = build_graph(edges, rows)
    return g


class TestBuildGraph:
    def test_path_graph(self):
        g, drops = build_graph([("a", "b"), ("b", "c")], {"a": 1, "b": 2, "c": 3})
        assert g.node_count == 3
        assert g.edge_count == 2
        assert drops.total == 0
        assert g.external_ids == ("a", "b", "c")

    def test_self_loops_and_duplicates_dropped_with_count(self):
        g, drops = build_graph([("a", "a"), ("a", "b"), ("a", "b")], {"a": 1, "b": 2})
        assert g.node_count == 2
        assert g.edge_count == 1
        assert drops.self_loops == 1
        assert drops.duplicate_edges == 1
        assert drops.total == 2

    def test_reversed_duplicate_is_still_a_duplicate(self):
        g, drops = build_graph([("a", "b"), ("b", "a")], {"a": 1, "b": 2})
        assert g.edge_count == 1
        assert drops.duplicate_edges == 1

    def test_missing_attribute_row_raises(self):
        with pytest.raises(KeyError, match="no attribute row"):
            build_graph([("a", "b")], {"a": 1})

    def test_non_finite_attribute_raises(self):
        with pytest.raises(ValueError, match="finite"):
            build_graph([("a", "b")], {"a": [1.0], "b": [float("nan")]})

    def test_inconsistent_row_width_raises(self):
        with pytest.raises(ValueError):
            build_graph([("a", "b")], {"a": [1.0, 2.0], "b": [1.0]})

    def test_adjacency_symmetric_and_sorted_full_scan(self):
        rng = np.random.default_rng(7)
        edges = [(int(u), int(v)) for u, v in rng.integers(0, 40, size=(200, 2))]
        g = int_graph(edges, 40, rng=rng)
        for v in range(g.node_count):
            nb = g.neighbors(v)
            assert list(nb) == sorted(set(nb.tolist()))
            assert v not in nb
            for u in nb:
                assert v in g.neighbors(int(u))

    def test_isolated_nodes_kept(self):
        g, _ = build_graph([("a", "b")], {"a": 1, "b": 2, "c": 3})
        assert g.node_count == 3
        assert g.degree(2) == 0


class TestMaxDegree:
    def test_star(self):
        g = int_graph([(0, i) for i in range(1, 6)], 6)
        assert max_degree(g) == 5

    def test_edgeless(self):
        g = int_graph([], 3)
        assert max_degree(g) == 0

    def test_random_graph_matches_recount(self):
        rng = np.random.default_rng(11)
        edges = [(u, v) for u in range(200) for v in range(u + 1, 200) if rng.random() < 0.05]
        g = int_graph(edges, 200, rng=rng)
        adj = adjacency_from_edges(200, edges)
        assert max_degree(g) == max(len(adj[v]) for v in adj)


class TestEgonet:
    def test_radius_zero_is_identity(self):
        g = int_graph([(0, 1), (1, 2)], 3)
        assert set(egonet(g, 1, 0)) == {1}

    def test_path_radius_one(self):
        g = int_graph([(0, 1), (1, 2), (2, 3)], 4)
        assert set(egonet(g, 1, 1)) == {0, 1, 2}

    def test_invalid_node_raises(self):
        g = int_graph([(0, 1)], 2)
        with pytest.raises(KeyError):
            egonet(g, 9, 1)

    def test_matches_adjacency_power_oracle(self):
        rng = np.random.default_rng(3)
        n = 60
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.06]
        g = int_graph(edges, n, rng=rng)
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            adj[u, v] = adj[v, u] = True
        reach = np.eye(n, dtype=bool) | adj | (adj.astype(int) @ adj.astype(int) > 0)
        for v in range(0, n, 7):
            assert set(egonet(g, v, 2)) == set(np.flatnonzero(reach[v]).tolist())

    def test_monotone_in_radius_and_size_bound(self):
        rng = np.random.default_rng(5)
        n = 50
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.08]
        g = int_graph(edges, n, rng=rng)
        d = max_degree(g)
        for v in range(0, n, 11):
            prev = set(egonet(g, v, 0))
            for h in range(1, 4):
                cur = set(egonet(g, v, h))
                assert prev <= cur
                assert len(cur) <= sum(d**i for i in range(h + 1))
                prev = cur


class TestInducedSubgraph:
    def test_full_set_keeps_all_edges(self):
        rng = np.random.default_rng(13)
        edges = [(u, v) for u in range(30) for v in range(u + 1, 30) if rng.random() < 0.2]
        g = int_graph(edges, 30, rng=rng)
        sg = induced_subgraph(g, range(30))
        assert sg.edge_count == g.edge_count

    def test_single_node(self):
        g = int_graph([(0, 1)], 2)
        sg = induced_subgraph(g, [0])
        assert sg.node_count == 1
        assert sg.edge_count == 0

    def test_empty_subset_raises(self):
        g = int_graph([(0, 1)], 2)
        with pytest.raises(ValueError):
            induced_subgraph(g, [])

    def test_random_subset_matches_filter_oracle(self):
        rng = np.random.default_rng(17)
        n = 40
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15]
        g = int_graph(edges, n, rng=rng)
        adj = adjacency_from_edges(n, edges)
        subset = sorted(rng.choice(n, size=15, replace=False).tolist())
        sg = induced_subgraph(g, subset)
        got = {(int(u), int(v)) for u, v in sg.edge_list()}
        assert got == induced_edges(adj, subset)
        for v in subset:
            assert sg.degree(v) == len(adj[v] & set(subset))

    def test_idempotent(self):
        rng = np.random.default_rng(19)
        edges = [(u, v) for u in range(20) for v in range(u + 1, 20) if rng.random() < 0.3]
        g = int_graph(edges, 20, rng=rng)
        subset = list(range(0, 20, 2))
        once = induced_subgraph(g, subset)
        twice = induced_subgraph(once, subset)
        assert np.array_equal(once.members, twice.members)
        assert np.array_equal(once.edge_list(), twice.edge_list())


class TestRandomWalkSample:
    def test_isolated_node_returns_self(self):
        g = int_graph([(1, 2)], 3)
        assert set(random_walk_sample(g, 0, 5, 4, seed=1)) == {0}

    def test_forced_step_on_a_path(self):
        g = int_graph([(0, 1)], 2)
        assert set(random_walk_sample(g, 0, 1, 1, seed=123)) == {0, 1}

    def test_triangle_matches_seeded_replay_oracle(self):
        edges = [(0, 1), (1, 2), (0, 2)]
        g = int_graph(edges, 3)
        adj = adjacency_from_edges(3, edges)
        for seed in (0, 7, 991):
            got = set(random_walk_sample(g, 0, 7, 3, seed=seed))
            assert got == replay_walk_sample(adj, 0, 7, 3, seed)

    def test_random_graph_matches_replay_and_bounds(self):
        rng = np.random.default_rng(23)
        n = 25
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15]
        g = int_graph(edges, n, rng=rng)
        adj = adjacency_from_edges(n, edges)
        for v, p, w, seed in [(0, 3, 2, 5), (4, 10, 4, 9), (7, 1, 1, 42)]:
            got = set(random_walk_sample(g, v, p, w, seed=seed))
            assert got == replay_walk_sample(adj, v, p, w, seed)
            assert v in got
            assert len(got) <= p * w + 1

    def test_deterministic_under_seed(self):
        rng = np.random.default_rng(29)
        edges = [(u, v) for u in range(15) for v in range(u + 1, 15) if rng.random() < 0.3]
        g = int_graph(edges, 15, rng=rng)
        a = random_walk_sample(g, 3, 6, 5, seed=77)
        b = random_walk_sample(g, 3, 6, 5, seed=77)
        assert a.members == b.members

    def test_subgraph_walk_stays_inside(self):
        rng = np.random.default_rng(31)
        n = 30
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.2]
        g = int_graph(edges, n, rng=rng)
        sg = induced_subgraph(g, range(0, n, 2))
        got = set(random_walk_sample(sg, 0, 8, 5, seed=1))
        assert got <= set(range(0, n, 2))

    def test_bad_parameters(self):
        g = int_graph([(0, 1)], 2)
        with pytest.raises(ValueError):
            random_walk_sample(g, 0, 0, 1, seed=1)
        with pytest.raises(ValueError):
            random_walk_sample(g, 0, 1, 0, seed=1)
        with pytest.raises(KeyError):
            random_walk_sample(g, 5, 1, 1, seed=1)
