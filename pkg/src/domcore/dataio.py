"""Graph ingestion, synthetic generation, and export of search output.

Supported inputs:
  * edge list: two whitespace-separated ids per line, ``#`` comment lines;
  * attribute CSV: header ``id,<name1>,...,<namem>``, then one row per node;
  * tagged author records (``#index``/``#pc``/``#cn``/``#hi``/``#pi`` lines)
    plus a companion co-author edge file (``#u v [weight]`` lines).

Loaders return the graph together with a manifest that accounts for every
dropped line, so file totals always reconcile with the loaded graph.
"""

import csv
import json
import math
from dataclasses import dataclass, fields

import numpy as np

from .graph import AttributedGraph, build_graph
from .metrics import MetricsBundle
from .search import Community, SearchResult

__all__ = [
    "AMINER_ATTRIBUTES",
    "DatasetManifest",
    "community_from_dict",
    "community_to_dict",
    "export_community",
    "generate_synthetic",
    "graphs_equal",
    "load_aminer",
    "load_edge_list",
    "load_graph",
    "load_search_result",
    "result_from_dict",
    "result_to_dict",
    "save_graph",
    "save_search_result",
]

AMINER_ATTRIBUTES = ("PC", "CN", "HI", "PI")


@dataclass
class DatasetManifest:
    """Load accounting: what was read, kept, and dropped."""

    source_paths: tuple
    format: str
    node_count: int = 0
    edge_count: int = 0
    attribute_names: tuple = ()
    nodes_in_file: int = 0
    edges_in_file: int = 0
    dropped_self_loops: int = 0
    dropped_duplicate_edges: int = 0
    dropped_attribute_rows: int = 0
    dropped_missing_attribute_nodes: int = 0
    dropped_edges_missing_endpoint: int = 0
    dropped_malformed_edge_lines: int = 0
    zero_filled_authors: int = 0

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(str(x) for x in v)
            out[f.name] = v
        return out


def _parse_attribute_csv(path, strict):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2:
            raise ValueError(f"{path}:1: attribute header must be id,<name1>,...")
        names = tuple(h.strip() for h in header[1:])
        rows = {}
        duplicates = 0
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(header):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}"
                )
            key = row[0].strip()
            try:
                values = [float(x) for x in row[1:]]
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric attribute value") from None
            if not all(math.isfinite(v) for v in values):
                raise ValueError(f"{path}:{lineno}: non-finite attribute value")
            if key in rows:
                if strict:
                    raise ValueError(f"{path}:{lineno}: duplicate id {key!r}")
                duplicates += 1
                continue
            rows[key] = values
    if not rows:
        raise ValueError(f"{path}: no attribute rows")
    return names, rows, duplicates


def load_edge_list(path, attr_path, strict=False):
    """Load a whitespace edge list plus an attribute CSV.

    Edges whose endpoint has no attribute row are dropped and counted
    (hard error when strict). Malformed lines always raise, naming the
    offending line. Returns (graph, manifest).
    """
    names, rows, dup_rows = _parse_attribute_csv(attr_path, strict)
    edges = []
    edges_in_file = 0
    missing_ids = set()
    dropped_missing = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if len(tokens) != 2:
                raise ValueError(f"{path}:{lineno}: expected two node ids, got {len(tokens)} tokens")
            edges_in_file += 1
            u, v = tokens
            if u not in rows or v not in rows:
                if strict:
                    bad = u if u not in rows else v
                    raise ValueError(f"{path}:{lineno}: endpoint {bad!r} has no attribute row")
                missing_ids.update(x for x in (u, v) if x not in rows)
                dropped_missing += 1
                continue
            edges.append((u, v))
    graph, drops = build_graph(edges, rows)
    manifest = DatasetManifest(
        source_paths=(str(path), str(attr_path)),
        format="edgelist",
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        attribute_names=names,
        nodes_in_file=len(rows) + dup_rows,
        edges_in_file=edges_in_file,
        dropped_self_loops=drops.self_loops,
        dropped_duplicate_edges=drops.duplicate_edges,
        dropped_attribute_rows=dup_rows,
        dropped_missing_attribute_nodes=len(missing_ids),
        dropped_edges_missing_endpoint=dropped_missing,
    )
    return graph, manifest


def _parse_author_records(path):
    records = []
    current = None
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#index"):
                value = line[len("#index") :].strip()
                if not value:
                    raise ValueError(f"{path}:{lineno}: #index without a value")
                current = {"index": value}
                records.append(current)
            elif line.startswith("#"):
                if current is None:
                    raise ValueError(f"{path}:{lineno}: record data before any #index")
                tag, _, value = line[1:].partition(" ")
                current[tag.strip().lower()] = value.strip()
            else:
                if current is None:
                    raise ValueError(f"{path}:{lineno}: record data before any #index")
    if not records:
        raise ValueError(f"{path}: no author records")
    return records


def load_aminer(author_path, coauthor_path, strict=False):
    """Load tagged author records and a co-author edge file.

    The attribute matrix holds the four numeric columns PC, CN, HI, PI in
    that order. Authors missing any of the four values get 0 there, with a
    count kept in the manifest. Returns (graph, manifest).
    """
    records = _parse_author_records(author_path)
    rows = {}
    duplicates = 0
    zero_filled = 0
    for rec in records:
        key = rec["index"]
        if key in rows:
            if strict:
                raise ValueError(f"{author_path}: duplicate #index {key!r}")
            duplicates += 1
            continue
        values = []
        incomplete = False
        for tag in ("pc", "cn", "hi", "pi"):
            raw = rec.get(tag, "")
            try:
                v = float(raw)
                if not math.isfinite(v):
                    raise ValueError
            except ValueError:
                v = 0.0
                incomplete = True
            values.append(v)
        if incomplete:
            zero_filled += 1
        rows[key] = values

    edges = []
    edges_in_file = 0
    malformed = 0
    missing_ids = set()
    dropped_missing = 0
    with open(coauthor_path) as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            body = stripped[1:] if stripped.startswith("#") else stripped
            tokens = body.split()
            if len(tokens) < 2:
                if strict:
                    raise ValueError(f"{coauthor_path}:{lineno}: expected at least two author ids")
                malformed += 1
                continue
            edges_in_file += 1
            u, v = tokens[0], tokens[1]
            if u not in rows or v not in rows:
                if strict:
                    bad = u if u not in rows else v
                    raise ValueError(f"{coauthor_path}:{lineno}: unknown author id {bad!r}")
                missing_ids.update(x for x in (u, v) if x not in rows)
                dropped_missing += 1
                continue
            edges.append((u, v))

    graph, drops = build_graph(edges, rows)
    manifest = DatasetManifest(
        source_paths=(str(author_path), str(coauthor_path)),
        format="aminer",
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        attribute_names=AMINER_ATTRIBUTES,
        nodes_in_file=len(records),
        edges_in_file=edges_in_file,
        dropped_self_loops=drops.self_loops,
        dropped_duplicate_edges=drops.duplicate_edges,
        dropped_attribute_rows=duplicates,
        dropped_missing_attribute_nodes=len(missing_ids),
        dropped_edges_missing_endpoint=dropped_missing,
        dropped_malformed_edge_lines=malformed,
        zero_filled_authors=zero_filled,
    )
    return graph, manifest


def generate_synthetic(n, communities, intra_p, inter_p, attribute_lift, m=4, seed=0):
    """Planted-partition graph with community-lifted attributes.

    Nodes are split into `communities` contiguous blocks. Within-block
    pairs get an edge with probability intra_p, cross-block pairs with
    inter_p. Attributes draw from a shared gamma base; each block then adds
    a seeded lift on a random nonempty subset of dimensions, so blocks
    differ in which attributes (and how strongly) they dominate. Fully
    deterministic under the seed.

    Returns (graph, membership) with membership[v] = block of node v.
    """
    if not (0.0 <= intra_p <= 1.0 and 0.0 <= inter_p <= 1.0):
        raise ValueError("edge probabilities must lie in [0, 1]")
    if communities < 1 or communities > n:
        raise ValueError("need 1 <= communities <= n")
    if communities > 1 and not intra_p > inter_p:
        raise ValueError("planted structure needs intra_p > inter_p")
    if attribute_lift < 0:
        raise ValueError("attribute_lift must be >= 0")
    if m < 1:
        raise ValueError("attribute dimensionality m must be >= 1")

    rng = np.random.default_rng(seed)
    sizes = np.full(communities, n // communities, dtype=np.int64)
    sizes[: n % communities] += 1
    starts = np.concatenate(([0], np.cumsum(sizes)))
    membership = np.repeat(np.arange(communities, dtype=np.int64), sizes)

    chunks = []
    for i in range(communities):
        ai, bi = starts[i], starts[i + 1]
        si = bi - ai
        if si > 1 and intra_p > 0:
            iu, iv = np.triu_indices(si, k=1)
            keep = rng.random(iu.size) < intra_p
            if keep.any():
                chunks.append(np.stack([iu[keep] + ai, iv[keep] + ai], axis=1))
        for j in range(i + 1, communities):
            aj, bj = starts[j], starts[j + 1]
            sj = bj - aj
            if inter_p > 0:
                mask = rng.random((si, sj)) < inter_p
                iu, iv = np.nonzero(mask)
                if iu.size:
                    chunks.append(np.stack([iu + ai, iv + aj], axis=1))
    earr = np.concatenate(chunks, axis=0) if chunks else np.empty((0, 2), dtype=np.int64)

    attrs = rng.gamma(2.0, 10.0, size=(n, m))
    for c in range(communities):
        kdim = int(rng.integers(1, m + 1))
        dims = np.sort(rng.choice(m, size=kdim, replace=False))
        lift = attribute_lift * (0.5 + rng.random())
        attrs[starts[c] : starts[c + 1], dims] += lift

    rows = {i: attrs[i] for i in range(n)}
    graph, _ = build_graph([(int(u), int(v)) for u, v in earr], rows)
    return graph, membership


# -- serialization -----------------------------------------------------


def community_to_dict(c: Community) -> dict:
    return {
        "seed": c.seed,
        "nodes": list(c.nodes),
        "edges": [[u, v] for u, v in c.edges],
        "scores": list(c.scores),
        "k": c.k,
        "sigma": c.metrics.sigma,
        "density": c.metrics.density,
        "beta_index": c.metrics.beta_index,
        "anchor_absent": c.anchor_absent,
        "contains_query": c.contains_query,
    }


def community_from_dict(d: dict) -> Community:
    nodes = tuple(int(x) for x in d["nodes"])
    edges = tuple((int(u), int(v)) for u, v in d["edges"])
    return Community(
        seed=int(d["seed"]),
        nodes=nodes,
        edges=edges,
        scores=tuple(int(s) for s in d["scores"]),
        k=int(d["k"]),
        metrics=MetricsBundle(
            sigma=float(d["sigma"]),
            density=float(d["density"]),
            beta_index=float(d["beta_index"]),
            node_count=len(nodes),
            edge_count=len(edges),
        ),
        anchor_absent=bool(d["anchor_absent"]),
        contains_query=bool(d["contains_query"]),
    )


def result_to_dict(r: SearchResult) -> dict:
    return {
        "query": r.query,
        "algorithm": r.algorithm,
        "params": dict(r.params),
        "stage1_size": r.stage1_size,
        "max_dom": r.max_dom,
        "diagnostic": r.diagnostic,
        "wall_time_s": r.wall_time_s,
        "communities": [community_to_dict(c) for c in r.communities],
    }


def result_from_dict(d: dict) -> SearchResult:
    return SearchResult(
        query=int(d["query"]),
        algorithm=d["algorithm"],
        params=dict(d["params"]),
        stage1_size=int(d["stage1_size"]),
        max_dom=int(d["max_dom"]),
        communities=tuple(community_from_dict(c) for c in d["communities"]),
        wall_time_s=float(d.get("wall_time_s", 0.0)),
        diagnostic=d.get("diagnostic"),
    )


def save_search_result(result: SearchResult, path, id_map=None):
    """Write a search result (and optional node-id labels) as JSON."""
    doc = {"result": result_to_dict(result)}
    if id_map:
        doc["id_map"] = {str(k): str(v) for k, v in id_map.items()}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_search_result(path):
    """Read back a saved search result; returns (result, id_map)."""
    with open(path) as fh:
        doc = json.load(fh)
    id_map = {int(k): v for k, v in doc.get("id_map", {}).items()}
    return result_from_dict(doc["result"]), id_map


def export_community(c: Community, format, path, query=None, labels=None):
    """Write one community as json, dot, or csv.

    DOT output is the induced subgraph with the seed (and the query, when
    given) highlighted through node attributes. CSV lists members with
    their domination scores. `labels` optionally maps node ids to display
    names (e.g. source identifiers).
    """
    labels = labels or {}

    def disp(v):
        return str(labels.get(v, v))

    if format == "json":
        with open(path, "w") as fh:
            json.dump(community_to_dict(c), fh, indent=2, sort_keys=True)
            fh.write("\n")
    elif format == "dot":
        lines = ["graph community {"]
        for v in sorted(c.nodes):
            marks = [f'label="{disp(v)}"']
            if v == c.seed:
                marks.append("style=filled fillcolor=lightcoral")
            if query is not None and v == query:
                marks.append("color=blue penwidth=2.0")
            lines.append(f'  "{disp(v)}" [{" ".join(marks)}];')
        for u, v in sorted(c.edges):
            lines.append(f'  "{disp(u)}" -- "{disp(v)}";')
        lines.append("}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    elif format == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["node", "domination_score"])
            for v, s in sorted(zip(c.nodes, c.scores)):
                writer.writerow([disp(v), s])
    else:
        raise ValueError(f"unknown export format {format!r}")


# -- cached graphs -----------------------------------------------------


def save_graph(g: AttributedGraph, path):
    """Serialize a graph to .npz (adjacency, attributes, external ids)."""
    indptr, indices = g._local_csr()
    if g.external_ids is None:
        ext = np.array([], dtype=np.str_)
        kind = "none"
    else:
        ext = np.array([str(x) for x in g.external_ids], dtype=np.str_)
        kind = "int" if all(isinstance(x, int) for x in g.external_ids) else "str"
    np.savez_compressed(
        path,
        indptr=indptr,
        indices=indices,
        attributes=g.attributes,
        external_ids=ext,
        ext_kind=np.array([kind]),
    )


def load_graph(path) -> AttributedGraph:
    with np.load(path, allow_pickle=False) as data:
        kind = str(data["ext_kind"][0])
        if kind == "none":
            ext = None
        elif kind == "int":
            ext = [int(x) for x in data["external_ids"]]
        else:
            ext = [str(x) for x in data["external_ids"]]
        return AttributedGraph(data["indptr"], data["indices"], data["attributes"], ext)


def graphs_equal(a: AttributedGraph, b: AttributedGraph) -> bool:
    pa, ia = a._local_csr()
    pb, ib = b._local_csr()
    return (
        np.array_equal(pa, pb)
        and np.array_equal(ia, ib)
        and np.array_equal(a.attributes, b.attributes)
        and a.external_ids == b.external_ids
    )
