"""Every supported file format, round-tripped in one script.

Writes a tiny dataset in both ingestion formats (edge list + attribute CSV,
and tagged author records), loads each, shows the manifests, and exports a
community three ways. Mirrors what the `domcore` CLI does with files.
"""

import json
from pathlib import Path

from domcore import hop_search, load_aminer, load_edge_list
from domcore.dataio import (
    export_community,
    graphs_equal,
    load_graph,
    load_search_result,
    save_graph,
    save_search_result,
)

out = Path("format_demo")
out.mkdir(exist_ok=True)

# --- plain edge list + attribute CSV -----------------------------------
(out / "toy_edges.txt").write_text(
    "# id pairs, one edge per line\n"
    "a b\nb c\nc a\nc d\nd e\ne c\nx x\n"     # x-x is a self-loop, dropped
)
(out / "toy_attrs.csv").write_text(
    "id,pubs,cites\na,12,300\nb,3,20\nc,7,150\nd,20,80\ne,2,500\nx,1,1\n"
)
graph, manifest = load_edge_list(out / "toy_edges.txt", out / "toy_attrs.csv")
print("edge-list manifest:")
for key, value in manifest.to_dict().items():
    if value:
        print(f"  {key} = {value}")

# --- tagged author records ---------------------------------------------
(out / "authors.txt").write_text(
    "#index 1\n#n Ana\n#pc 12\n#cn 300\n#hi 9\n#pi 4.5\n\n"
    "#index 2\n#n Bo\n#pc 3\n#cn 20\n#hi 2\n#pi 1.0\n\n"
    "#index 3\n#n Cy\n#pc 7\n#cn 150\n#hi 6\n\n"          # missing #pi -> 0
)
(out / "coauthors.txt").write_text("#1 2 3\n#1 3 1\n#2 3 2\n")
agraph, amanifest = load_aminer(out / "authors.txt", out / "coauthors.txt")
print(f"\ntagged records: {agraph} zero_filled={amanifest.zero_filled_authors}")
print("attribute order:", amanifest.attribute_names)

# --- cached graphs -------------------------------------------------------
save_graph(graph, out / "toy.npz")
assert graphs_equal(graph, load_graph(out / "toy.npz"))
print("\ncached .npz reload equals the fresh load")

# --- community exports ---------------------------------------------------
result = hop_search(graph, graph.resolve("c"), h=1)
save_search_result(result, out / "result.json",
                   id_map={v: graph.external_id_of(v) for v in range(graph.node_count)})
loaded, id_map = load_search_result(out / "result.json")
assert loaded == result
top = result.communities[0]
export_community(top, "json", out / "top.json")
export_community(top, "dot", out / "top.dot", query=result.query, labels=id_map)
export_community(top, "csv", out / "top.csv", labels=id_map)
print(f"exported top community ({len(top.nodes)} nodes) as json, dot, csv under {out}/")
print("dot preview:")
print((out / "top.dot").read_text())
print("json keys:", sorted(json.loads((out / "top.json").read_text())))
