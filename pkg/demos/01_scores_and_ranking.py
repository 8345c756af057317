"""Domination scores on a toy co-authorship graph.

Builds a small attributed graph by hand, indexes the attribute vectors on
a grid, and walks through scoring, ranking, and top-k queries.
"""

import numpy as np

from domcore import build_graph, build_grid, dominates, domination_score, rank_by_score, score_all, top_k_dominating

# Eight authors with (publications, citations) profiles. Bigger is better
# in both dimensions.
attributes = {
    "ana": (12, 300),
    "bo": (3, 20),
    "cy": (7, 150),
    "dee": (12, 300),   # exact duplicate of ana's profile
    "eli": (20, 80),
    "fay": (2, 500),
    "gus": (25, 600),
    "hal": (1, 1),
}
edges = [
    ("ana", "bo"), ("ana", "cy"), ("bo", "cy"),
    ("cy", "dee"), ("dee", "eli"), ("eli", "fay"),
    ("fay", "gus"), ("gus", "hal"), ("gus", "ana"),
]

graph, drops = build_graph(edges, attributes)
print(f"{graph} dropped={drops.total}")

# Pairwise dominance: gus beats everyone, ana and fay are incomparable.
print("gus > hal:", dominates(attributes["gus"], attributes["hal"]))
print("ana > fay:", dominates(attributes["ana"], attributes["fay"]))
print("ana > dee:", dominates(attributes["ana"], attributes["dee"]), "(equal profiles)")

# A grid over the attribute space answers "how many profiles does p beat"
# exactly, for any s; resolution is a performance knob only.
points = graph.attributes
for s in (1, 4, 16):
    grid = build_grid(points, s=s)
    scores = [domination_score(grid, p) for p in points]
    print(f"s={s:>2} gamma={grid.gamma} scores={scores}")

table = score_all(points, s=8)
names = graph.external_ids
print("\nranking (score desc, id asc):")
for node in rank_by_score(table):
    print(f"  {names[node]:>4}  dom={table.score_of(node)}")
print("top-3 dominating:", [names[v] for v in top_k_dominating(table, 3)])
print("max_dom:", table.max_dom, "held by", names[table.argmax_node])
