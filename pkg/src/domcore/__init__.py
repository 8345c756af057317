"""Community search in attributed graphs.

Combines three ingredients: domination scores over node attributes
(computed exactly through a uniform grid index), k-core extraction for
structural cohesion, and two seed-expansion strategies around a query node
(hop-based egonets and seeded random-walk sampling). A sweep harness
replicates the parameter study at desk scale and writes plot-ready CSVs.

See the demos/ directory of the source distribution for narrative
walkthroughs of each capability, and the ``domcore`` CLI for file-based
use.
"""

from .dominance import (
    DEFAULT_GRID_S,
    GridIndex,
    ScoreTable,
    build_grid,
    dominates,
    domination_score,
    rank_by_score,
    score_all,
    top_k_dominating,
)
from .graph import (
    AttributedGraph,
    EdgeDrops,
    NodeSubset,
    Subgraph,
    build_graph,
    egonet,
    induced_subgraph,
    max_degree,
    random_walk_sample,
)
from .kcore import CorenessTable, core_numbers, max_kcore
from .metrics import MetricsBundle, beta_index, density, node_set_similarity, sigma_deviation
from .search import (
    Community,
    SearchOptions,
    SearchResult,
    hop_search,
    random_walk_search,
    rank_communities,
)
from .dataio import (
    DatasetManifest,
    export_community,
    generate_synthetic,
    load_aminer,
    load_edge_list,
    load_graph,
    save_graph,
)
from .harness import SweepConfig, SweepRecord, run_sweep, select_query_nodes, write_report

__version__ = "0.1.0"
