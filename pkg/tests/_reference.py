"""Unoptimized reference implementations used as test oracles.

Everything here is written directly against the documented behavior using
plain dicts, sets, and loops, independently of the package's data
structures. numpy appears only to replay the documented RNG consumption.
"""

import numpy as np


# -- graphs ------------------------------------------------------------


def adjacency_from_edges(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def induce_adj(adj, nodes):
    nodes = set(nodes)
    return {v: {u for u in adj[v] if u in nodes} for v in nodes}


def bfs_ball(adj, v, radius):
    seen = {v}
    frontier = [v]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for x in adj[u]:
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def induced_edges(adj, nodes):
    nodes = set(nodes)
    return {(u, v) for u in nodes for v in adj[u] if v in nodes and u < v}


def replay_walk_sample(adj, v, p, w, seed):
    """Mirror of the documented walk contract: w sequential walks, one
    rng.integers(deg) draw per step over the ascending neighbor list."""
    rng = np.random.default_rng(seed)
    visited = {v}
    for _ in range(w):
        cur = v
        for _ in range(p):
            nbrs = sorted(adj[cur])
            if not nbrs:
                break
            cur = nbrs[int(rng.integers(len(nbrs)))]
            visited.add(cur)
    return visited


# -- dominance ---------------------------------------------------------


def brute_dominates(p, q):
    ge = all(a >= b for a, b in zip(p, q))
    gt = any(a > b for a, b in zip(p, q))
    return ge and gt


def brute_scores(points):
    n = len(points)
    return [
        sum(1 for j in range(n) if brute_dominates(points[i], points[j]))
        for i in range(n)
    ]


# -- k-cores -----------------------------------------------------------


def fixed_point_cores(adj_sub):
    """Core numbers by direct fixed-point removal for every k in turn."""
    core = {v: 0 for v in adj_sub}
    k = 0
    while True:
        k += 1
        alive = set(adj_sub)
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if v in alive and len(adj_sub[v] & alive) < k:
                    alive.discard(v)
                    changed = True
        if not alive:
            break
        for v in alive:
            core[v] = k
    return core


def reference_max_kcore(adj_sub, anchor=None):
    """(nodes of the chosen component, k_max) under the anchor-first rule."""
    core = fixed_point_cores(adj_sub)
    kmax = max(core.values())
    sel = {v for v, c in core.items() if c == kmax}
    comps = []
    seen = set()
    for s in sorted(sel):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for x in adj_sub[u]:
                if x in sel and x not in seen:
                    seen.add(x)
                    comp.add(x)
                    stack.append(x)
        comps.append(comp)
    if anchor is not None:
        for comp in comps:
            if anchor in comp:
                return comp, kmax
    comps.sort(key=lambda c: (-len(c), min(c)))
    return comps[0], kmax


# -- end-to-end searches -----------------------------------------------


def _sigma(scores, max_dom):
    return (sum(abs(s - max_dom) ** 2 for s in scores) / len(scores)) ** 0.5


def _rank_and_dedup(cands, require_query):
    if require_query:
        cands = [c for c in cands if c["contains_query"]]
    cands.sort(key=lambda c: (c["sigma"], -len(c["nodes"]), c["seed"]))
    seen = set()
    out = []
    for c in cands:
        if c["nodes"] not in seen:
            seen.add(c["nodes"])
            out.append(c)
    return out


def _expand(adj1, stage1_nodes, score, max_dom, query, inner_nodes_of,
            candidate_limit, min_size, require_query):
    order = sorted(stage1_nodes, key=lambda v: (-score[v], v))
    if candidate_limit is not None:
        order = order[:candidate_limit]
    cands = []
    for n_x in order:
        ball = inner_nodes_of(n_x)
        comp, kmax = reference_max_kcore(induce_adj(adj1, ball), anchor=n_x)
        if len(comp) < min_size:
            continue
        cands.append(
            {
                "seed": n_x,
                "nodes": frozenset(comp),
                "sigma": _sigma([score[v] for v in sorted(comp)], max_dom),
                "k": kmax,
                "contains_query": query in comp,
            }
        )
    return _rank_and_dedup(cands, require_query)


def reference_hop_search(adj, attrs, query, h, inner_scope="stage1",
                         candidate_limit=None, min_size=2, require_query=False):
    """Returns (ranked community dicts, max_dom); [] for an isolated query."""
    stage1 = bfs_ball(adj, query, h + 1)
    if len(stage1) == 1:
        return [], 0
    adj1 = induce_adj(adj, stage1)
    nodes1 = sorted(stage1)
    score = dict(zip(nodes1, brute_scores([attrs[v] for v in nodes1])))
    max_dom = max(score.values())

    def inner(n_x):
        if inner_scope == "stage1":
            return bfs_ball(adj1, n_x, h)
        return bfs_ball(adj, n_x, h) & stage1

    return (
        _expand(adj1, nodes1, score, max_dom, query, inner,
                candidate_limit, min_size, require_query),
        max_dom,
    )


def reference_walk_search(adj, attrs, query, p, w, seed,
                          candidate_limit=None, min_size=2, require_query=False):
    stage1 = replay_walk_sample(adj, query, p, w, seed)
    if len(stage1) == 1:
        return [], 0
    adj1 = induce_adj(adj, stage1)
    nodes1 = sorted(stage1)
    score = dict(zip(nodes1, brute_scores([attrs[v] for v in nodes1])))
    max_dom = max(score.values())

    def inner(n_x):
        return replay_walk_sample(adj1, n_x, p, w, np.random.SeedSequence((seed, n_x)))

    return (
        _expand(adj1, nodes1, score, max_dom, query, inner,
                candidate_limit, min_size, require_query),
        max_dom,
    )


def random_attributed_graph(rng, n, edge_p, m=2, max_attr=6):
    """Random test instance: (edge list, attrs dict with small int values)."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < edge_p:
                edges.append((u, v))
    attrs = {v: tuple(int(x) for x in rng.integers(0, max_attr, size=m)) for v in range(n)}
    return edges, attrs
