"""Attributed-graph storage plus neighborhood and sampling primitives.

Graphs are undirected, loop-free and immutable once built. Nodes are dense
integer indices in [0, node_count); an optional external-id table maps them
back to the source identifiers. Attributes form a dense float matrix with
one row per node. Neighbor lists are kept sorted so that traversal order,
and therefore seeded random sampling, is reproducible.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "AttributedGraph",
    "EdgeDrops",
    "NodeSubset",
    "Subgraph",
    "build_graph",
    "egonet",
    "induced_subgraph",
    "max_degree",
    "random_walk_sample",
]


@dataclass(frozen=True)
class EdgeDrops:
    """What build_graph removed from the raw edge list."""

    self_loops: int = 0
    duplicate_edges: int = 0

    @property
    def total(self) -> int:
        return self.self_loops + self.duplicate_edges


@dataclass(frozen=True)
class NodeSubset:
    """A set of node indices tied to the graph they were drawn from.

    Iteration is always in ascending index order so that downstream
    consumers see a deterministic sequence.
    """

    graph: "AttributedGraph"
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, node):
        return node in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def sorted_array(self) -> np.ndarray:
        if not self.members:
            return np.empty(0, dtype=np.int64)
        return np.fromiter(sorted(self.members), dtype=np.int64, count=len(self.members))


class AttributedGraph:
    """Immutable undirected graph with an n-by-m numeric attribute matrix.

    Adjacency is stored in CSR form (``indptr``/``indices``) with every
    neighbor list sorted ascending and free of self-loops and duplicates.
    """

    def __init__(self, indptr, indices, attributes, external_ids=None):
        self._indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self._indices = np.ascontiguousarray(indices, dtype=np.int64)
        self.attributes = np.ascontiguousarray(attributes, dtype=np.float64)
        if self.attributes.ndim != 2:
            raise ValueError("attributes must be a 2-D matrix")
        self.node_count = len(self._indptr) - 1
        if self.attributes.shape[0] != self.node_count:
            raise ValueError("attribute matrix must have one row per node")
        self.edge_count = len(self._indices) // 2
        self.m = self.attributes.shape[1]
        self.degrees = np.diff(self._indptr)
        self.external_ids = tuple(external_ids) if external_ids is not None else None
        if self.external_ids is not None and len(self.external_ids) != self.node_count:
            raise ValueError("external_ids must have one entry per node")
        self._ext_to_int = (
            {ext: i for i, ext in enumerate(self.external_ids)}
            if self.external_ids is not None
            else None
        )
        for arr in (self._indptr, self._indices, self.attributes, self.degrees):
            arr.setflags(write=False)

    def __repr__(self):
        return f"AttributedGraph(nodes={self.node_count}, edges={self.edge_count}, m={self.m})"

    # -- node access ---------------------------------------------------

    @property
    def root(self) -> "AttributedGraph":
        return self

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.node_count, dtype=np.int64)

    def neighbors(self, v) -> np.ndarray:
        lv = self._to_local(v)
        return self._indices[self._indptr[lv] : self._indptr[lv + 1]]

    def degree(self, v) -> int:
        return int(self.degrees[self._to_local(v)])

    def resolve(self, external_id):
        """Internal index for an external id (KeyError if unknown)."""
        if self._ext_to_int is None:
            raise KeyError("graph carries no external ids")
        if external_id in self._ext_to_int:
            return self._ext_to_int[external_id]
        raise KeyError(f"unknown node id {external_id!r}")

    def external_id_of(self, v):
        if self.external_ids is None:
            return v
        return self.external_ids[self._to_local(v)]

    def edge_list(self) -> np.ndarray:
        """All edges as an (edge_count, 2) array with u < v, sorted."""
        owners = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)
        fwd = owners < self._indices
        return np.stack([owners[fwd], self._indices[fwd]], axis=1)

    # -- internal protocol shared with Subgraph -------------------------

    @property
    def _local_count(self) -> int:
        return self.node_count

    def _local_csr(self):
        return self._indptr, self._indices

    def _to_local(self, v) -> int:
        iv = int(v)
        if iv != v or not 0 <= iv < self.node_count:
            raise KeyError(f"invalid node index {v!r}")
        return iv

    def _locals_to_ids(self, local_array) -> np.ndarray:
        return np.asarray(local_array, dtype=np.int64)


class Subgraph:
    """Induced subgraph over a sorted member array of a parent graph.

    The edge set is exactly the parent edges with both endpoints in the
    member set; degrees are recomputed within the subgraph. Members are
    identified by their indices in the root graph.
    """

    def __init__(self, root: AttributedGraph, members: np.ndarray):
        members = np.ascontiguousarray(members, dtype=np.int64)
        if members.size == 0:
            raise ValueError("cannot build a subgraph on an empty node set")
        self.graph = root
        self.members = members
        rp, ri = root._local_csr()
        nbrs = _gather_neighbors(rp, ri, members)
        mask = np.zeros(root.node_count, dtype=bool)
        mask[members] = True
        counts = rp[members + 1] - rp[members]
        owners = np.repeat(np.arange(members.size, dtype=np.int64), counts)
        keep = mask[nbrs]
        kept_owners = owners[keep]
        self._indices = np.searchsorted(members, nbrs[keep])
        self._indptr = np.concatenate(
            ([0], np.cumsum(np.bincount(kept_owners, minlength=members.size)))
        ).astype(np.int64)
        self.degrees = np.diff(self._indptr)
        self.edge_count = int(self._indices.size // 2)
        self.node_count = int(members.size)
        self._pos = None
        for arr in (self.members, self._indices, self._indptr, self.degrees):
            arr.setflags(write=False)

    def __repr__(self):
        return f"Subgraph(nodes={self.node_count}, edges={self.edge_count})"

    def __contains__(self, v):
        i = np.searchsorted(self.members, v)
        return i < self.node_count and self.members[i] == v

    @property
    def root(self) -> AttributedGraph:
        return self.graph

    @property
    def attributes(self) -> np.ndarray:
        return self.graph.attributes[self.members]

    def neighbors(self, v) -> np.ndarray:
        lv = self._to_local(v)
        return self.members[self._indices[self._indptr[lv] : self._indptr[lv + 1]]]

    def degree(self, v) -> int:
        return int(self.degrees[self._to_local(v)])

    def edge_list(self) -> np.ndarray:
        """Edges as root-id pairs with u < v, grouped by ascending u."""
        owners = np.repeat(np.arange(self.node_count, dtype=np.int64), self.degrees)
        fwd = owners < self._indices
        return np.stack(
            [self.members[owners[fwd]], self.members[self._indices[fwd]]], axis=1
        )

    # -- internal protocol ----------------------------------------------

    @property
    def _local_count(self) -> int:
        return self.node_count

    def _local_csr(self):
        return self._indptr, self._indices

    def _to_local(self, v) -> int:
        if self._pos is None:
            self._pos = {int(x): i for i, x in enumerate(self.members)}
        try:
            return self._pos[int(v)]
        except (KeyError, TypeError, ValueError):
            raise KeyError(f"node {v!r} is not in the subgraph") from None

    def _locals_to_ids(self, local_array) -> np.ndarray:
        return self.members[np.asarray(local_array, dtype=np.int64)]


def _gather_neighbors(indptr, indices, frontier) -> np.ndarray:
    """Concatenated neighbor lists for all frontier nodes, in order."""
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    flat = np.repeat(starts - offsets, counts) + np.arange(total, dtype=np.int64)
    return indices[flat]


def build_graph(edges, attribute_rows):
    """Build an AttributedGraph from id pairs and an id -> attribute-row map.

    Ids may be ints or strings (anything sortable); the sorted ids become
    the graph's external ids and nodes are indexed by rank in that order.
    Self-loops and duplicate edges are dropped, not rejected, and counted
    in the returned report. Every edge endpoint must have an attribute row.

    Returns:
        (graph, drops) where drops is an EdgeDrops report.
    """
    if not attribute_rows:
        raise ValueError("attribute_rows is empty")
    ids = sorted(attribute_rows)
    index = {x: i for i, x in enumerate(ids)}
    try:
        attrs = np.asarray([attribute_rows[x] for x in ids], dtype=np.float64)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"attribute rows must be numeric with a uniform width: {exc}") from None
    if attrs.ndim == 1:
        attrs = attrs.reshape(-1, 1)
    if attrs.ndim != 2 or attrs.shape[1] < 1:
        raise ValueError("attribute rows must share a width m >= 1")
    if not np.isfinite(attrs).all():
        raise ValueError("attribute values must be finite")

    n = len(ids)
    pairs = []
    for u, v in edges:
        if u not in index:
            raise KeyError(f"edge endpoint {u!r} has no attribute row")
        if v not in index:
            raise KeyError(f"edge endpoint {v!r} has no attribute row")
        pairs.append((index[u], index[v]))
    earr = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)

    loops = earr[:, 0] == earr[:, 1]
    n_loops = int(loops.sum())
    earr = earr[~loops]
    canon = np.stack([earr.min(axis=1), earr.max(axis=1)], axis=1)
    if canon.shape[0]:
        uniq = np.unique(canon, axis=0)
    else:
        uniq = canon
    n_dup = int(canon.shape[0] - uniq.shape[0])

    both = np.concatenate([uniq, uniq[:, ::-1]], axis=0)
    order = np.lexsort((both[:, 1], both[:, 0]))
    both = both[order]
    indptr = np.concatenate(
        ([0], np.cumsum(np.bincount(both[:, 0], minlength=n)))
    ).astype(np.int64)
    graph = AttributedGraph(indptr, both[:, 1], attrs, external_ids=ids)
    return graph, EdgeDrops(self_loops=n_loops, duplicate_edges=n_dup)


def max_degree(g) -> int:
    """Largest neighbor-list length in the graph (0 if edgeless)."""
    return int(g.degrees.max()) if g.degrees.size else 0


def egonet(g, v, radius) -> NodeSubset:
    """All nodes within `radius` hops of v (BFS distance), including v.

    Works on a full graph or a subgraph; in the latter case the search is
    confined to subgraph edges. Radius 0 yields {v}.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    lv = g._to_local(v)
    indptr, indices = g._local_csr()
    visited = np.zeros(g._local_count, dtype=bool)
    visited[lv] = True
    frontier = np.array([lv], dtype=np.int64)
    for _ in range(int(radius)):
        if frontier.size == 0:
            break
        nbrs = _gather_neighbors(indptr, indices, frontier)
        fresh = nbrs[~visited[nbrs]]
        if fresh.size == 0:
            break
        frontier = np.unique(fresh)
        visited[frontier] = True
    found = g._locals_to_ids(np.flatnonzero(visited))
    return NodeSubset(g.root, frozenset(found.tolist()))


def induced_subgraph(g, nodes) -> Subgraph:
    """Subgraph over `nodes` containing exactly the parent edges inside it."""
    root = g.root
    if isinstance(nodes, NodeSubset):
        if nodes.graph is not root:
            raise ValueError("node subset belongs to a different graph")
        members = nodes.sorted_array()
    else:
        members = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if members.size == 0:
        raise ValueError("cannot induce a subgraph on an empty node set")
    if members[0] < 0 or members[-1] >= root.node_count:
        raise KeyError("node subset contains indices outside the graph")
    if isinstance(g, Subgraph):
        inside = np.searchsorted(g.members, members)
        inside = (inside < g.node_count) & (g.members[np.minimum(inside, g.node_count - 1)] == members)
        if not inside.all():
            raise KeyError("node subset contains nodes outside the subgraph")
    return Subgraph(root, members)


def random_walk_sample(g, v, p, w, seed) -> NodeSubset:
    """Union of the nodes visited by w seeded walks of length p from v.

    Each walk performs up to p steps; a step draws one value from the
    generator with ``rng.integers(len(neighbors))`` and moves to that
    position in the current node's ascending neighbor list. A walk that
    reaches a node with no neighbors ends early without drawing. Identical
    seeds therefore reproduce identical samples on the same graph, and the
    result never exceeds p*w + 1 nodes. A degree-0 start yields {v}.
    """
    if p < 1:
        raise ValueError("path length p must be >= 1")
    if w < 1:
        raise ValueError("iteration count w must be >= 1")
    start = g._to_local(v)
    indptr, indices = g._local_csr()
    rng = np.random.default_rng(seed)
    visited = {start}
    for _ in range(int(w)):
        cur = start
        for _ in range(int(p)):
            a = indptr[cur]
            b = indptr[cur + 1]
            if b == a:
                break
            cur = int(indices[a + rng.integers(b - a)])
            visited.add(cur)
    found = g._locals_to_ids(sorted(visited))
    return NodeSubset(g.root, frozenset(found.tolist()))
