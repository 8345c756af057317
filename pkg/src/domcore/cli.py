"""Command-line interface: ingest, search, sweep, gen, export.

Every failure path exits nonzero after printing a single ``error: ...``
line on stderr. Lines that depend on wall-clock time are prefixed with
``# timing:`` so that deterministic-output comparisons can filter them;
everything else is fully determined by the inputs and ``--seed``.
"""

import argparse
import csv
import json
import sys
import time

from . import dataio, harness
from .search import SearchOptions, hop_search, random_walk_search

TIMING_PREFIX = "# timing:"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _add_input_flags(p, with_strict=True):
    p.add_argument("--format", choices=["edgelist", "aminer", "cached"],
                   help="input kind; inferred from the path flags when omitted")
    p.add_argument("--edges", help="edge list file (u v per line, # comments)")
    p.add_argument("--attrs", help="attribute CSV (header id,<name1>,...)")
    p.add_argument("--authors", help="tagged author records file")
    p.add_argument("--coauthors", help="co-author edge records file")
    p.add_argument("--graph", help="cached graph (.npz written by ingest --out)")
    if with_strict:
        p.add_argument("--strict", action="store_true",
                       help="turn recoverable input problems into errors")


def _load_graph(args):
    strict = getattr(args, "strict", False)
    if args.graph:
        if args.format not in (None, "cached"):
            raise ValueError("--graph implies --format cached")
        return dataio.load_graph(args.graph), None
    if args.edges or args.attrs:
        if not (args.edges and args.attrs):
            raise ValueError("edge-list input needs both --edges and --attrs")
        if args.format not in (None, "edgelist"):
            raise ValueError("--edges/--attrs imply --format edgelist")
        return dataio.load_edge_list(args.edges, args.attrs, strict=strict)
    if args.authors or args.coauthors:
        if not (args.authors and args.coauthors):
            raise ValueError("author input needs both --authors and --coauthors")
        if args.format not in (None, "aminer"):
            raise ValueError("--authors/--coauthors imply --format aminer")
        return dataio.load_aminer(args.authors, args.coauthors, strict=strict)
    raise ValueError("no input given; use --edges/--attrs, --authors/--coauthors, or --graph")


def _add_search_option_flags(p):
    p.add_argument("--grid-s", type=int, default=16, help="grid cells per attribute dimension")
    p.add_argument("--candidate-limit", type=int, default=None,
                   help="max stage-1 candidates to expand (default: all)")
    p.add_argument("--require-query", action="store_true",
                   help="only keep communities containing the query node")
    p.add_argument("--inner-scope", choices=["stage1", "global"], default="stage1",
                   help="where the hop strategy's inner egonet is computed")
    p.add_argument("--min-size", type=int, default=2, help="smallest community to keep")


def _search_options(args):
    return SearchOptions(
        candidate_limit=args.candidate_limit,
        require_query_membership=args.require_query,
        min_community_size=args.min_size,
        inner_scope=args.inner_scope,
        grid_s=args.grid_s,
    )


def _resolve_query(g, raw):
    if g.external_ids is None:
        return int(raw)
    try:
        return g.resolve(raw)
    except KeyError:
        pass
    try:
        return g.resolve(int(raw))
    except (KeyError, ValueError):
        raise KeyError(f"unknown query id {raw!r}") from None


def _int_list(text):
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _fmt(x, digits=6):
    return "" if x is None else f"{x:.{digits}f}"


def cmd_ingest(args):
    graph, manifest = _load_graph(args)
    if manifest is None:
        manifest = dataio.DatasetManifest(
            source_paths=(args.graph,), format="cached",
            node_count=graph.node_count, edge_count=graph.edge_count,
        )
    for key, value in manifest.to_dict().items():
        print(f"manifest: {key}={value}")
    if args.out:
        dataio.save_graph(graph, args.out)
        print(f"cached graph written to {args.out}")
    return 0


def cmd_search(args):
    graph, _ = _load_graph(args)
    try:
        query = _resolve_query(graph, args.query)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    opts = _search_options(args)
    if args.algo == "hop":
        result = hop_search(graph, query, args.hops, opts)
    else:
        result = random_walk_search(graph, query, args.path_len, args.iters, args.seed, opts)

    ext = graph.external_id_of
    print(f"query={ext(query)} algorithm={result.algorithm} "
          + " ".join(f"{k}={v}" for k, v in result.params.items()))
    print(f"stage1_size={result.stage1_size} max_dom={result.max_dom} "
          f"communities={len(result.communities)}")
    if result.diagnostic:
        print(f"notice: {result.diagnostic}")
    for rank, c in enumerate(result.communities[: args.top], start=1):
        m = c.metrics
        print(f" {rank}. size={m.node_count} sigma={_fmt(m.sigma)} density={_fmt(m.density)} "
              f"beta_index={_fmt(m.beta_index)} k={c.k} seed_node={ext(c.seed)} "
              f"contains_query={'yes' if c.contains_query else 'no'}")
        print("    nodes: " + " ".join(str(ext(v)) for v in c.nodes))
    if args.out:
        shown = {v for c in result.communities for v in c.nodes} | {query}
        id_map = {v: str(ext(v)) for v in sorted(shown)}
        dataio.save_search_result(result, args.out, id_map=id_map)
        print(f"result written to {args.out}")
    print(f"{TIMING_PREFIX} search wall time {result.wall_time_s:.4f}s")
    return 0


# Built-in sweep defaults; a --config file overrides these, explicit flags
# override the file.
_SWEEP_DEFAULTS = {
    "queries": 100,
    "percentile": 1.0,
    "p_values": harness.DEFAULT_VALUES,
    "w_values": harness.DEFAULT_VALUES,
    "h_values": (1, 2),
    "seed": 0,
    "workers": 1,
    "grid_s": 16,
    "candidate_limit": None,
    "require_query": False,
    "inner_scope": "stage1",
    "min_size": 2,
    "out": "sweep_out",
}


def _apply_sweep_config(args):
    if not args.config:
        return
    with open(args.config) as fh:
        doc = json.load(fh)
    unknown = set(doc) - set(_SWEEP_DEFAULTS)
    if unknown:
        raise ValueError(f"unknown sweep config keys: {sorted(unknown)}")
    for key, value in doc.items():
        if key.endswith("_values"):
            value = tuple(int(x) for x in value)
        if getattr(args, key) == _SWEEP_DEFAULTS[key]:
            setattr(args, key, value)


def cmd_sweep(args):
    t0 = time.perf_counter()
    _apply_sweep_config(args)
    graph, _ = _load_graph(args)
    cfg = harness.SweepConfig(
        p_values=tuple(args.p_values),
        w_values=tuple(args.w_values),
        h_values=tuple(args.h_values),
        query_count=args.queries,
        query_percentile=args.percentile,
        master_seed=args.seed,
        search_options=_search_options(args),
        workers=args.workers,
    )
    records, agg = harness.run_sweep(graph, cfg)
    paths = harness.write_report(records, args.out)
    for name in sorted(paths):
        print(f"wrote {paths[name]}")
    for h, stats in sorted(agg["hop"].items()):
        print(f"baseline h={h}: queries={stats['count']} errors={stats['errors']} "
              f"sigma={_fmt(stats['sigma'])} density={_fmt(stats['density'])} "
              f"beta_index={_fmt(stats['beta_index'])} size={_fmt(stats['size'], 2)} "
              f"similarity={_fmt(stats['similarity'])}")
        print(f"{TIMING_PREFIX} baseline h={h} mean runtime {_fmt(stats['runtime'], 4)}s")
    p_values = sorted({k[0] for k in agg["walk"]})
    w_values = sorted({k[1] for k in agg["walk"]})
    print("walk mean similarity vs baseline (rows p, cols w):")
    print("  p\\w " + " ".join(f"{w:>8}" for w in w_values))
    for p in p_values:
        row = [agg["walk"][(p, w)]["similarity"] for w in w_values]
        print(f"  {p:>4} " + " ".join(f"{_fmt(v):>8}" for v in row))
    for p in p_values:
        runtimes = " ".join(_fmt(agg["walk"][(p, w)]["runtime"], 4) for w in w_values)
        print(f"{TIMING_PREFIX} walk mean runtime p={p}: {runtimes}")
    print(f"{TIMING_PREFIX} total sweep wall {time.perf_counter() - t0:.2f}s")
    return 0


def cmd_gen(args):
    graph, membership = dataio.generate_synthetic(
        n=args.nodes,
        communities=args.communities,
        intra_p=args.intra_p,
        inter_p=args.inter_p,
        attribute_lift=args.lift,
        m=args.m,
        seed=args.seed,
    )
    prefix = args.out_prefix
    edge_path = f"{prefix}_edges.txt"
    attr_path = f"{prefix}_attrs.csv"
    member_path = f"{prefix}_membership.csv"
    with open(edge_path, "w") as fh:
        fh.write(f"# synthetic planted-partition graph seed={args.seed}\n")
        for u, v in graph.edge_list():
            fh.write(f"{u} {v}\n")
    with open(attr_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id"] + [f"attr{i + 1}" for i in range(graph.m)])
        for v in range(graph.node_count):
            writer.writerow([v] + [repr(float(x)) for x in graph.attributes[v]])
    with open(member_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "community"])
        for v in range(graph.node_count):
            writer.writerow([v, int(membership[v])])
    print(f"generated nodes={graph.node_count} edges={graph.edge_count} "
          f"communities={args.communities} m={graph.m}")
    for path in (edge_path, attr_path, member_path):
        print(f"wrote {path}")
    return 0


def cmd_export(args):
    result, id_map = dataio.load_search_result(getattr(args, "in"))
    if not result.communities:
        print("error: saved result has no communities to export", file=sys.stderr)
        return 1
    if not 1 <= args.community <= len(result.communities):
        print(f"error: --community must lie in 1..{len(result.communities)}", file=sys.stderr)
        return 1
    community = result.communities[args.community - 1]
    dataio.export_community(community, args.export_format, args.out,
                            query=result.query, labels=id_map)
    print(f"exported community {args.community} ({len(community.nodes)} nodes) to {args.out}")
    return 0


def build_parser():
    parser = _Parser(prog="domcore",
                     description="Community search in attributed graphs "
                                 "(domination scores + k-cores + random walks)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="load and validate a graph, print its manifest")
    _add_input_flags(p)
    p.add_argument("--out", help="write a cached .npz graph here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("search", help="run one community search for a query node")
    _add_input_flags(p)
    _add_search_option_flags(p)
    p.add_argument("--query", required=True, help="query node id (source id)")
    p.add_argument("--algo", choices=["hop", "walk"], default="hop")
    p.add_argument("--hops", type=int, default=1, help="hop radius for --algo hop")
    p.add_argument("--path-len", type=int, default=40, help="walk length for --algo walk")
    p.add_argument("--iters", type=int, default=30, help="walk count for --algo walk")
    p.add_argument("--seed", type=int, default=0, help="walk RNG seed")
    p.add_argument("--top", type=int, default=5, help="how many ranked communities to print")
    p.add_argument("--out", help="write the full result as JSON here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="run the parameter study and write CSV reports")
    _add_input_flags(p)
    _add_search_option_flags(p)
    p.add_argument("--config", help="JSON file of sweep settings (keys mirror the "
                                    "flag names: queries, percentile, p_values, w_values, "
                                    "h_values, seed, workers, grid_s, candidate_limit, "
                                    "require_query, inner_scope, min_size, out); "
                                    "explicit flags win over the file")
    p.add_argument("--queries", type=int, default=100, help="number of query nodes")
    p.add_argument("--percentile", type=float, default=1.0,
                   help="take queries from this top score percentile")
    p.add_argument("--p-values", type=_int_list, default=harness.DEFAULT_VALUES,
                   help="comma-separated walk lengths")
    p.add_argument("--w-values", type=_int_list, default=harness.DEFAULT_VALUES,
                   help="comma-separated walk counts")
    p.add_argument("--h-values", type=_int_list, default=(1, 2),
                   help="comma-separated baseline hop radii")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--workers", type=int, default=1, help="parallel sweep workers")
    p.add_argument("--out", default="sweep_out", help="report directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="generate a seeded planted-partition dataset")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--communities", type=int, required=True)
    p.add_argument("--intra-p", type=float, default=0.3)
    p.add_argument("--inter-p", type=float, default=0.01)
    p.add_argument("--lift", type=float, default=25.0, help="attribute lift per community")
    p.add_argument("--m", type=int, default=4, help="attribute dimensionality")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", required=True, help="path prefix for the output files")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("export", help="re-export a community from a saved search result")
    p.add_argument("--in", required=True, help="result JSON written by search --out")
    p.add_argument("--community", type=int, default=1, help="1-based rank to export")
    p.add_argument("--export-format", choices=["json", "dot", "csv"], default="dot")
    p.add_argument("--out", required=True, help="output file")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
