"""Parameter-study harness: query selection, sweeps, and CSV reporting.

A sweep runs, for every selected query node, the hop strategy at each
baseline radius and the walk strategy at each (path length, iterations)
cell, recording per-cell runtime and top-1 community metrics plus the
overlap of the walk top-1 with the 2-hop baseline top-1. Per-cell walk
seeds derive from the master seed and the cell coordinates, so serial and
parallel execution produce identical records (timing aside).
"""

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .dominance import rank_by_score, score_all
from .graph import AttributedGraph, NodeSubset
from .metrics import node_set_similarity
from .search import SearchOptions, hop_search, random_walk_search

__all__ = [
    "SweepConfig",
    "SweepRecord",
    "aggregate_records",
    "run_sweep",
    "select_query_nodes",
    "write_report",
]

DEFAULT_VALUES = (10, 20, 30, 40, 50, 60, 70)


@dataclass(frozen=True)
class SweepConfig:
    """Sweep shape and the options forwarded to the search calls."""

    p_values: tuple = DEFAULT_VALUES
    w_values: tuple = DEFAULT_VALUES
    h_values: tuple = (1, 2)
    query_count: int = 100
    query_percentile: float = 1.0
    master_seed: int = 0
    search_options: SearchOptions = SearchOptions()
    workers: int = 1

    def __post_init__(self):
        if not self.p_values or not self.w_values or not self.h_values:
            raise ValueError("p, w, and h value lists must be nonempty")
        if any(v < 1 for v in (*self.p_values, *self.w_values, *self.h_values)):
            raise ValueError("sweep parameters must be >= 1")
        if not 0 < self.query_percentile <= 100:
            raise ValueError("query_percentile must lie in (0, 100]")
        if self.query_count < 1:
            raise ValueError("query_count must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    @property
    def baseline_h(self) -> int:
        return 2 if 2 in self.h_values else max(self.h_values)


@dataclass
class SweepRecord:
    """One (query x configuration) cell of the sweep."""

    query: int
    query_id: str
    algorithm: str
    h: int | None
    p: int | None
    w: int | None
    seed: int | None
    runtime_s: float
    n_communities: int
    top1_size: int | None
    top1_sigma: float | None
    top1_density: float | None
    top1_beta: float | None
    similarity_vs_baseline: float | None
    error: str | None = None


RECORD_FIELDS = [f.name for f in fields(SweepRecord)]

# Metrics aggregated per configuration and written as p x w matrices.
MATRIX_METRICS = {
    "similarity": "similarity_vs_baseline",
    "runtime": "runtime_s",
    "density": "top1_density",
    "beta_index": "top1_beta",
    "sigma": "top1_sigma",
    "size": "top1_size",
}


def select_query_nodes(g: AttributedGraph, percentile=1.0, count=100, seed=0, grid_s=16):
    """Uniform sample of `count` nodes from the top score percentile.

    Scores the whole graph, keeps the top floor(n * percentile / 100)
    nodes (at least one), and samples without replacement. Deterministic
    under the seed.
    """
    if not 0 < percentile <= 100:
        raise ValueError("percentile must lie in (0, 100]")
    if count < 1:
        raise ValueError("count must be >= 1")
    table = score_all(g.attributes, s=grid_s)
    ranked = rank_by_score(table)
    pool = ranked[: max(1, int(np.floor(g.node_count * percentile / 100.0)))]
    if pool.size < count:
        raise ValueError(f"query pool of {pool.size} cannot supply {count} queries")
    rng = np.random.default_rng(seed)
    return rng.choice(pool, size=count, replace=False).astype(np.int64)


def _cell_seed(master_seed, query, p, w) -> int:
    seq = np.random.SeedSequence((int(master_seed), int(query), int(p), int(w)))
    return int(seq.generate_state(1, np.uint64)[0])


def _top1_fields(result):
    if result.communities:
        c = result.communities[0]
        return (
            len(result.communities),
            len(c.nodes),
            c.metrics.sigma,
            c.metrics.density,
            c.metrics.beta_index,
            frozenset(c.nodes),
        )
    return 0, None, None, None, None, frozenset()


def run_sweep(g: AttributedGraph, cfg: SweepConfig, queries=None):
    """Execute the full sweep; returns (records, aggregates).

    Records appear query by query, baselines first, then the walk cells in
    row-major (p, w) order. Everything except the runtime fields is
    deterministic under cfg.master_seed.
    """
    if queries is None:
        queries = select_query_nodes(
            g,
            percentile=cfg.query_percentile,
            count=cfg.query_count,
            seed=cfg.master_seed,
            grid_s=cfg.search_options.grid_s,
        )
    queries = [int(q) for q in queries]
    opts = cfg.search_options

    def run_hop(q, h):
        try:
            return hop_search(g, q, h, opts)
        except Exception as exc:  # recorded per cell, not fatal
            return f"{type(exc).__name__}: {exc}"

    def run_walk(q, p, w, seed):
        try:
            return random_walk_search(g, q, p, w, seed, opts)
        except Exception as exc:
            return f"{type(exc).__name__}: {exc}"

    hop_out = {(q, h): run_hop(q, h) for q in queries for h in cfg.h_values}

    baseline_sets = {}
    for q in queries:
        res = hop_out[(q, cfg.baseline_h)]
        baseline_sets[q] = _top1_fields(res)[5] if not isinstance(res, str) else frozenset()

    cells = [(q, p, w) for q in queries for p in cfg.p_values for w in cfg.w_values]
    seeds = {cell: _cell_seed(cfg.master_seed, *cell) for cell in cells}
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            walk_list = list(pool.map(lambda c: run_walk(*c, seeds[c]), cells))
    else:
        walk_list = [run_walk(*c, seeds[c]) for c in cells]
    walk_out = dict(zip(cells, walk_list))

    def similarity_to_baseline(q, nodes):
        a = NodeSubset(g, nodes)
        b = NodeSubset(g, baseline_sets[q])
        return node_set_similarity(a, b)

    records = []
    for q in queries:
        qid = str(g.external_id_of(q))
        for h in cfg.h_values:
            res = hop_out[(q, h)]
            if isinstance(res, str):
                records.append(
                    SweepRecord(q, qid, "hop", h, None, None, None, 0.0, 0,
                                None, None, None, None, None, error=res)
                )
                continue
            n_comm, size, sigma, dens, beta, nodes = _top1_fields(res)
            records.append(
                SweepRecord(
                    q, qid, "hop", h, None, None, None, res.wall_time_s, n_comm,
                    size, sigma, dens, beta, similarity_to_baseline(q, nodes),
                )
            )
        for p in cfg.p_values:
            for w in cfg.w_values:
                res = walk_out[(q, p, w)]
                seed = seeds[(q, p, w)]
                if isinstance(res, str):
                    records.append(
                        SweepRecord(q, qid, "walk", None, p, w, seed, 0.0, 0,
                                    None, None, None, None, None, error=res)
                    )
                    continue
                n_comm, size, sigma, dens, beta, nodes = _top1_fields(res)
                records.append(
                    SweepRecord(
                        q, qid, "walk", None, p, w, seed, res.wall_time_s, n_comm,
                        size, sigma, dens, beta, similarity_to_baseline(q, nodes),
                    )
                )
    return records, aggregate_records(records)


def _mean(values):
    vals = [v for v in values if v is not None]
    return float(np.mean(vals)) if vals else None


def aggregate_records(records):
    """Per-configuration means recomputed from the long-form records."""
    hop = {}
    walk = {}
    for rec in records:
        key = rec.h if rec.algorithm == "hop" else (rec.p, rec.w)
        bucket = hop if rec.algorithm == "hop" else walk
        bucket.setdefault(key, []).append(rec)
    out = {"hop": {}, "walk": {}}
    for name, bucket in (("hop", hop), ("walk", walk)):
        for key, recs in sorted(bucket.items()):
            out[name][key] = {
                "count": len(recs),
                "errors": sum(1 for r in recs if r.error),
                "runtime": _mean([r.runtime_s if not r.error else None for r in recs]),
                "similarity": _mean([r.similarity_vs_baseline for r in recs]),
                "sigma": _mean([r.top1_sigma for r in recs]),
                "density": _mean([r.top1_density for r in recs]),
                "beta_index": _mean([r.top1_beta for r in recs]),
                "size": _mean([r.top1_size for r in recs]),
            }
    return out


def write_report(records, out_dir):
    """Write the long-form record CSV plus one p x w matrix CSV per metric.

    Returns {name: path}. With no records the files still appear with
    headers only.
    """
    import os

    os.makedirs(out_dir, exist_ok=True)
    paths = {}

    long_path = os.path.join(out_dir, "records.csv")
    with open(long_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_FIELDS)
        for rec in records:
            writer.writerow([getattr(rec, f) for f in RECORD_FIELDS])
    paths["records"] = long_path

    agg = aggregate_records(records)
    p_values = sorted({key[0] for key in agg["walk"]})
    w_values = sorted({key[1] for key in agg["walk"]})
    for name, _ in MATRIX_METRICS.items():
        path = os.path.join(out_dir, f"matrix_{name}.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["p\\w"] + list(w_values))
            for p in p_values:
                row = [p]
                for w in w_values:
                    cell = agg["walk"].get((p, w), {}).get(name)
                    row.append("" if cell is None else cell)
                writer.writerow(row)
        paths[name] = path

    base_path = os.path.join(out_dir, "baseline_summary.csv")
    with open(base_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["h", "count", "errors", "runtime", "similarity",
                         "sigma", "density", "beta_index", "size"])
        for h, stats in sorted(agg["hop"].items()):
            writer.writerow([h] + [stats[k] if stats[k] is not None else ""
                                   for k in ("count", "errors", "runtime", "similarity",
                                             "sigma", "density", "beta_index", "size")])
    paths["baselines"] = base_path
    return paths
