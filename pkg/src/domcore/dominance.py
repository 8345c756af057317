"""Domination scoring over attribute vectors via a uniform grid index.

A point dominates another when it is at least as large in every dimension
and strictly larger in at least one (larger values are preferred). The grid
buckets points into an equal-width lattice per dimension. A score query
then takes the bulk of its count in O(1) from a precomputed table over
cells that lie entirely on the dominated side of the query's cell, and only
runs pairwise checks against points in cells that share a slab with it.
Scores are exact and independent of the grid resolution; the resolution
only shifts work between the bulk lookup and the pairwise pass.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_GRID_S",
    "GridIndex",
    "ScoreTable",
    "build_grid",
    "dominates",
    "domination_score",
    "rank_by_score",
    "score_all",
    "top_k_dominating",
]

DEFAULT_GRID_S = 16

# Dense cell tables beyond this size would dominate memory, not time.
_MAX_CELLS = 1 << 26


def dominates(p, q) -> bool:
    """True iff p >= q in every dimension and p > q in at least one."""
    pa = np.asarray(p, dtype=np.float64)
    qa = np.asarray(q, dtype=np.float64)
    if pa.shape != qa.shape or pa.ndim != 1:
        raise ValueError(f"width mismatch: {pa.shape} vs {qa.shape}")
    return bool((pa >= qa).all() and (pa > qa).any())


class GridIndex:
    """Equal-width grid over a fixed point set, for domination counting.

    Per dimension the observed [min, max] range is split into ``s`` cells
    (one cell when the dimension is degenerate). A point exactly on an
    interior boundary lands in the higher cell; the maximum lands in the
    top cell. ``dominated_below[c]`` counts the points in cells strictly
    below c in every dimension, all of which are dominated by construction.
    """

    def __init__(self, points, s=DEFAULT_GRID_S):
        pts = np.ascontiguousarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("grid needs at least one point")
        if not np.isfinite(pts).all():
            raise ValueError("grid points must be finite")
        if s < 1:
            raise ValueError("cells per dimension s must be >= 1")

        self.points = pts
        self.n_points, self.m = pts.shape
        self.s = int(s)
        self.lows = pts.min(axis=0)
        highs = pts.max(axis=0)
        live = highs > self.lows
        self.cells_per_dim = np.where(live, self.s, 1).astype(np.int64)
        total_cells = 1
        for c in self.cells_per_dim:
            total_cells *= int(c)
        if total_cells > _MAX_CELLS:
            raise ValueError("grid would exceed the dense cell-table limit; lower s")
        self.widths = np.where(live, (highs - self.lows) / self.cells_per_dim, 1.0)

        self.point_cells = self._cells_of(pts)
        shape = tuple(int(c) for c in self.cells_per_dim)
        counts = np.zeros(shape, dtype=np.int64)
        np.add.at(counts, tuple(self.point_cells.T), 1)
        self.counts = counts

        prefix = counts.copy()
        for axis in range(self.m):
            np.cumsum(prefix, axis=axis, out=prefix)
        below = np.zeros_like(counts)
        below[(slice(1, None),) * self.m] = prefix[(slice(None, -1),) * self.m]
        self.dominated_below = below

        flat = np.ravel_multi_index(tuple(self.point_cells.T), shape)
        order = np.argsort(flat, kind="stable")
        sorted_flat = flat[order]
        cuts = np.flatnonzero(np.diff(sorted_flat)) + 1
        groups = np.split(order, cuts)
        starts = np.concatenate(([0], cuts))
        self.cell_points = {
            tuple(int(x) for x in np.unravel_index(sorted_flat[s0], shape)): grp
            for s0, grp in zip(starts, groups)
        }

        for arr in (self.points, self.point_cells, self.counts, self.dominated_below):
            arr.setflags(write=False)

    @property
    def gamma(self) -> int:
        """Largest number of points held by any one cell."""
        return int(self.counts.max())

    def _cells_of(self, pts) -> np.ndarray:
        raw = np.floor((pts - self.lows) / self.widths).astype(np.int64)
        return np.clip(raw, 0, self.cells_per_dim - 1).astype(np.int32)

    def cell_of(self, p) -> tuple:
        q = self._check_query(p)
        return tuple(int(x) for x in self._cells_of(q.reshape(1, -1))[0])

    def _check_query(self, p) -> np.ndarray:
        q = np.asarray(p, dtype=np.float64)
        if q.shape != (self.m,):
            raise ValueError(f"query width {q.shape} does not match grid m={self.m}")
        if not np.isfinite(q).all():
            raise ValueError("query point must be finite")
        return q


def build_grid(points, s=DEFAULT_GRID_S) -> GridIndex:
    """Index `points` with s cells per non-degenerate dimension."""
    return GridIndex(points, s)


def domination_score(grid: GridIndex, p) -> int:
    """Exact number of indexed points dominated by p.

    Cells strictly below p's cell in every dimension are counted from the
    precomputed table; points in the remaining candidate cells (those in
    p's own row/column/slab) are checked pairwise. A point equal to p is
    never counted, so an indexed query never counts itself.
    """
    q = grid._check_query(p)
    pc = grid._cells_of(q.reshape(1, -1))[0]
    bulk = int(grid.dominated_below[tuple(pc)])
    le = (grid.point_cells <= pc).all(axis=1)
    lt = (grid.point_cells < pc).all(axis=1)
    boundary = grid.points[le & ~lt]
    if boundary.shape[0] == 0:
        return bulk
    hits = (boundary <= q).all(axis=1) & (boundary < q).any(axis=1)
    return bulk + int(hits.sum())


@dataclass(frozen=True, eq=False)
class ScoreTable:
    """Domination scores for an ordered point set.

    ``nodes`` are strictly increasing identifiers aligned with ``scores``;
    ``argmax_node`` is the smallest node achieving ``max_dom``.
    """

    nodes: np.ndarray
    scores: np.ndarray
    max_dom: int
    argmax_node: int

    def __len__(self):
        return len(self.nodes)

    def score_of(self, node) -> int:
        i = np.searchsorted(self.nodes, node)
        if i >= len(self.nodes) or self.nodes[i] != node:
            raise KeyError(f"node {node!r} not in score table")
        return int(self.scores[i])

    def as_dict(self) -> dict:
        return {int(n): int(s) for n, s in zip(self.nodes, self.scores)}


def _indexed_scores(grid: GridIndex) -> np.ndarray:
    """domination_score for every indexed point, batched per occupied cell.

    Queries sharing a cell share the same bulk count and the same boundary
    member set, so the per-query mask work collapses to one pass per
    occupied cell; only the pairwise value checks remain per query. The
    computation is identical to the per-point path.
    """
    cells = grid.point_cells
    pts = grid.points
    n, m = pts.shape
    scores = np.empty(n, dtype=np.int64)
    for cell, group in grid.cell_points.items():
        qc = np.asarray(cell, dtype=cells.dtype)
        bulk = int(grid.dominated_below[cell])
        boundary = np.flatnonzero(
            (cells <= qc).all(axis=1) & (cells == qc).any(axis=1)
        )
        if boundary.size == 0:
            scores[group] = bulk
            continue
        bpts = pts[boundary]
        chunk = max(1, int(8_000_000 // max(1, boundary.size * m)))
        for g0 in range(0, group.size, chunk):
            qv = pts[group[g0 : g0 + chunk]]
            dom = (bpts[None, :, :] <= qv[:, None, :]).all(axis=2) & (
                bpts[None, :, :] < qv[:, None, :]
            ).any(axis=2)
            scores[group[g0 : g0 + chunk]] = bulk + dom.sum(axis=1)
    return scores


def score_all(points, s=DEFAULT_GRID_S, node_ids=None) -> ScoreTable:
    """Score every point against all the others via one shared grid."""
    grid = build_grid(points, s)
    if node_ids is None:
        nodes = np.arange(grid.n_points, dtype=np.int64)
    else:
        nodes = np.asarray(node_ids, dtype=np.int64)
        if nodes.shape != (grid.n_points,):
            raise ValueError("node_ids must align with points")
        if nodes.size > 1 and not (np.diff(nodes) > 0).all():
            raise ValueError("node_ids must be strictly increasing")
    scores = _indexed_scores(grid)
    top = int(np.argmax(scores))
    return ScoreTable(
        nodes=nodes,
        scores=scores,
        max_dom=int(scores[top]),
        argmax_node=int(nodes[top]),
    )


def rank_by_score(table: ScoreTable) -> np.ndarray:
    """Node ids in non-increasing score order, ties by ascending id."""
    if len(table) == 0:
        raise ValueError("score table is empty")
    order = np.lexsort((table.nodes, -table.scores))
    return table.nodes[order]


def top_k_dominating(table: ScoreTable, k) -> np.ndarray:
    """First k nodes of the ranking."""
    if not 1 <= k <= len(table):
        raise ValueError(f"k={k} out of range for table of size {len(table)}")
    return rank_by_score(table)[:k]
