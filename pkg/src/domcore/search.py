"""Seed-expansion community search around a single query node.

Two strategies share the same two-stage shape. Stage 1 builds a candidate
pool around the query: the hop strategy takes the induced egonet of radius
h+1, the walk strategy takes the subgraph induced by a seeded random-walk
sample. Domination scores are computed over the pool's own attribute rows,
and candidates are expanded in descending score order. Stage 2 grows one
community per candidate: a local neighborhood of the candidate inside the
pool (inner egonet of radius h, or a fresh walk sample confined to the
pool), reduced to its maximum k-core. Communities are ranked by how close
their members' scores sit to the pool's maximum (ascending sigma).
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .dominance import rank_by_score, score_all
from .graph import AttributedGraph, egonet, induced_subgraph, random_walk_sample
from .kcore import max_kcore
from .metrics import MetricsBundle, bundle_for, sigma_deviation

__all__ = [
    "Community",
    "SearchOptions",
    "SearchResult",
    "hop_search",
    "random_walk_search",
    "rank_communities",
]

INNER_SCOPES = ("stage1", "global")


@dataclass(frozen=True)
class SearchOptions:
    """Knobs shared by both search strategies.

    candidate_limit caps how many stage-1 nodes are expanded (None expands
    all of them, in rank order). inner_scope picks whether the hop
    strategy's inner egonet is walked inside the stage-1 subgraph (default)
    or in the full graph and then clipped to the stage-1 pool.
    """

    candidate_limit: int | None = None
    require_query_membership: bool = False
    min_community_size: int = 2
    inner_scope: str = "stage1"
    grid_s: int = 16

    def __post_init__(self):
        if self.candidate_limit is not None and self.candidate_limit < 1:
            raise ValueError("candidate_limit must be >= 1")
        if self.min_community_size < 1:
            raise ValueError("min_community_size must be >= 1")
        if self.inner_scope not in INNER_SCOPES:
            raise ValueError(f"inner_scope must be one of {INNER_SCOPES}")
        if self.grid_s < 1:
            raise ValueError("grid_s must be >= 1")


@dataclass(frozen=True)
class Community:
    """One candidate community grown around a seed node.

    Node ids, edges and scores refer to the parent graph; scores are the
    domination scores from the stage-1 pool the community was grown in.
    """

    seed: int
    nodes: tuple
    edges: tuple
    scores: tuple
    k: int
    metrics: MetricsBundle
    anchor_absent: bool
    contains_query: bool

    @property
    def node_set(self) -> frozenset:
        return frozenset(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def score_map(self) -> dict:
        return dict(zip(self.nodes, self.scores))


@dataclass(frozen=True)
class SearchResult:
    """Ranked communities for one query, with search provenance."""

    query: int
    algorithm: str
    params: dict
    stage1_size: int
    max_dom: int
    communities: tuple
    wall_time_s: float = field(compare=False, default=0.0)
    diagnostic: str | None = None

    @property
    def top(self) -> Community | None:
        return self.communities[0] if self.communities else None


def rank_communities(cands, max_dom) -> list:
    """Ascending sigma against max_dom; ties by size desc, then seed asc."""
    return sorted(
        cands,
        key=lambda c: (sigma_deviation(c.scores, max_dom), -len(c.nodes), c.seed),
    )


def _empty_result(query, algorithm, params, reason) -> SearchResult:
    return SearchResult(
        query=int(query),
        algorithm=algorithm,
        params=params,
        stage1_size=1,
        max_dom=0,
        communities=(),
        diagnostic=reason,
    )


def _make_community(core, seed, score_map, max_dom, query) -> Community:
    nodes = tuple(int(x) for x in core.members)
    edges = tuple((int(u), int(v)) for u, v in core.edge_list())
    scores = tuple(score_map[v] for v in nodes)
    k = int(core.degrees.min())
    return Community(
        seed=int(seed),
        nodes=nodes,
        edges=edges,
        scores=scores,
        k=k,
        metrics=bundle_for(scores, max_dom, len(nodes), len(edges)),
        anchor_absent=int(seed) not in set(nodes),
        contains_query=int(query) in set(nodes),
    )


def _finish(query, algorithm, params, stage1_size, max_dom, cands, opts, t0):
    if opts.require_query_membership:
        cands = [c for c in cands if c.contains_query]
    ranked = rank_communities(cands, max_dom)
    seen = set()
    unique = []
    for c in ranked:
        if c.nodes not in seen:
            seen.add(c.nodes)
            unique.append(c)
    return SearchResult(
        query=int(query),
        algorithm=algorithm,
        params=params,
        stage1_size=stage1_size,
        max_dom=max_dom,
        communities=tuple(unique),
        wall_time_s=time.perf_counter() - t0,
    )


def _stage1_scores(stage1, opts):
    table = score_all(stage1.attributes, s=opts.grid_s, node_ids=stage1.members)
    ranked = rank_by_score(table)
    score_map = table.as_dict()
    return table, ranked, score_map


def hop_search(g: AttributedGraph, query, h, opts: SearchOptions = SearchOptions()) -> SearchResult:
    """Community search over the query's (h+1)-hop neighborhood.

    Stage 1 is the induced egonet of radius h+1 around the query, scored
    over its own attribute rows. Candidates are expanded in descending
    score order (ties by ascending node id): each candidate's egonet of
    radius h, taken inside the stage-1 subgraph by default, is reduced to
    its maximum k-core anchored at the candidate. Candidates smaller than
    opts.min_community_size are discarded; identical node sets keep only
    their best-ranked occurrence. An isolated query yields an empty result
    with a diagnostic rather than an error.
    """
    t0 = time.perf_counter()
    g._to_local(query)
    if h < 1:
        raise ValueError("hop count h must be >= 1")
    params = {"h": int(h)}
    pool = egonet(g, query, h + 1)
    if len(pool) == 1:
        return _empty_result(query, "hop", params, "query node is isolated")
    stage1 = induced_subgraph(g, pool)
    table, ranked, score_map = _stage1_scores(stage1, opts)
    limit = len(ranked) if opts.candidate_limit is None else opts.candidate_limit
    cands = []
    for n_x in ranked[:limit]:
        n_x = int(n_x)
        if opts.inner_scope == "stage1":
            inner = egonet(stage1, n_x, h)
            members = inner.sorted_array()
        else:
            inner = egonet(g, n_x, h)
            members = np.asarray(sorted(inner.members & pool.members), dtype=np.int64)
        core = max_kcore(induced_subgraph(stage1, members), anchor=n_x)
        comm = _make_community(core, n_x, score_map, table.max_dom, query)
        if len(comm.nodes) >= opts.min_community_size:
            cands.append(comm)
    return _finish(query, "hop", params, stage1.node_count, table.max_dom, cands, opts, t0)


def _inner_walk_seed(master_seed, candidate) -> np.random.SeedSequence:
    """Stream for one candidate's inner walk: independent of the master
    stream and of every other candidate, reproducible from (seed, node)."""
    return np.random.SeedSequence((int(master_seed), int(candidate)))


def random_walk_search(
    g: AttributedGraph, query, p, w, seed, opts: SearchOptions = SearchOptions()
) -> SearchResult:
    """Community search over a random-walk sample around the query.

    Stage 1 induces a subgraph over the union of w seeded walks of length
    p from the query. Candidates are expanded in descending score order;
    each candidate launches a fresh walk sample confined to the stage-1
    subgraph, seeded from (seed, candidate id), and the sample is reduced
    to its maximum k-core anchored at the candidate. Given identical
    (graph, query, p, w, seed) the full result, including ordering, is
    reproducible. A degree-0 query yields an empty result.
    """
    t0 = time.perf_counter()
    g._to_local(query)
    if seed is None or int(seed) < 0:
        raise ValueError("seed must be a non-negative integer")
    params = {"p": int(p), "w": int(w), "seed": int(seed)}
    pool = random_walk_sample(g, query, p, w, int(seed))
    if len(pool) == 1:
        return _empty_result(query, "walk", params, "query node has no neighbors")
    stage1 = induced_subgraph(g, pool)
    table, ranked, score_map = _stage1_scores(stage1, opts)
    limit = len(ranked) if opts.candidate_limit is None else opts.candidate_limit
    cands = []
    for n_x in ranked[:limit]:
        n_x = int(n_x)
        inner = random_walk_sample(stage1, n_x, p, w, _inner_walk_seed(seed, n_x))
        core = max_kcore(induced_subgraph(stage1, inner), anchor=n_x)
        comm = _make_community(core, n_x, score_map, table.max_dom, query)
        if len(comm.nodes) >= opts.min_community_size:
            cands.append(comm)
    return _finish(query, "walk", params, stage1.node_count, table.max_dom, cands, opts, t0)
