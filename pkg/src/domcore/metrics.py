"""Community quality metrics: score deviation, density, beta index, overlap."""

from dataclasses import dataclass

import numpy as np

from .graph import NodeSubset

__all__ = [
    "MetricsBundle",
    "beta_index",
    "density",
    "node_set_similarity",
    "sigma_deviation",
]


@dataclass(frozen=True)
class MetricsBundle:
    """Quality figures for one community."""

    sigma: float
    density: float
    beta_index: float
    node_count: int
    edge_count: int


def sigma_deviation(scores, max_dom) -> float:
    """Root-mean-square deviation of scores from the reference maximum.

    Zero exactly when every score equals max_dom; lower means the members
    sit closer to the best-scoring node of the search context.
    """
    arr = np.asarray(scores, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("score list is empty")
    return float(np.sqrt(np.mean(np.abs(arr - float(max_dom)) ** 2)))


def density(n, e) -> float:
    """Actual edges over possible edges; 0.0 for a single node."""
    if n < 1:
        raise ValueError("node count must be >= 1")
    if n == 1:
        if e > 0:
            raise ValueError("a single node cannot carry edges")
        return 0.0
    possible = n * (n - 1) // 2
    if e > possible:
        raise ValueError(f"{e} edges exceed the maximum {possible} for n={n}")
    return 2.0 * e / (n * (n - 1))


def beta_index(n, e) -> float:
    """Edges divided by nodes; exactly 1 for a single cycle."""
    if n < 1:
        raise ValueError("node count must be >= 1")
    return e / n


def node_set_similarity(a: NodeSubset, b: NodeSubset) -> float:
    """Jaccard overlap of two node sets from the same graph.

    Two empty sets count as identical (1.0): both searches agreeing that
    there is no community is perfect agreement.
    """
    if a.graph is not b.graph:
        raise ValueError("node subsets come from different graphs")
    if not a.members and not b.members:
        return 1.0
    union = a.members | b.members
    return len(a.members & b.members) / len(union)


def bundle_for(scores, max_dom, node_count, edge_count) -> MetricsBundle:
    """Assemble the standard metric bundle for a community."""
    return MetricsBundle(
        sigma=sigma_deviation(scores, max_dom),
        density=density(node_count, edge_count),
        beta_index=beta_index(node_count, edge_count),
        node_count=node_count,
        edge_count=edge_count,
    )
