"""A small parameter study: how walk length and iterations trade off.

Runs the sweep harness on a modest planted graph with a reduced grid, then
prints the similarity and runtime surfaces that the CSV reports contain.
The same study at full scale is the `domcore sweep` CLI with its defaults
(seven values of p and w, 100 queries from the top percentile).
"""

from domcore import SearchOptions, SweepConfig, generate_synthetic, run_sweep, write_report

graph, _ = generate_synthetic(
    n=2000, communities=20, intra_p=0.2, inter_p=0.001, attribute_lift=25.0, m=4, seed=3
)
print(graph)

cfg = SweepConfig(
    p_values=(10, 25, 40),
    w_values=(10, 25, 40),
    h_values=(1, 2),
    query_count=6,
    query_percentile=1.0,
    master_seed=3,
    search_options=SearchOptions(candidate_limit=10),
)
records, agg = run_sweep(graph, cfg)
print(f"{len(records)} records = 6 queries x (2 baselines + 3x3 walk cells)")

for h, stats in sorted(agg["hop"].items()):
    print(f"baseline h={h}: mean runtime {stats['runtime']:.3f}s, "
          f"mean top-1 density {stats['density']:.3f}, beta {stats['beta_index']:.2f}")

def surface(metric, fmt):
    print(f"\nmean {metric} (rows p, cols w={list(cfg.w_values)}):")
    for p in cfg.p_values:
        row = [agg["walk"][(p, w)][metric] for w in cfg.w_values]
        print(f"  p={p:>3}  " + "  ".join(fmt.format(v) for v in row))

surface("similarity", "{:.3f}")   # overlap with the 2-hop baseline top-1
surface("runtime", "{:.4f}")      # grows with p*w
surface("density", "{:.3f}")

paths = write_report(records, "sweep_demo_out")
print("\nreports written:")
for name in sorted(paths):
    print(" ", paths[name])
