"""k-core peeling and maximum-core extraction on subgraphs."""

from dataclasses import dataclass

import numpy as np

from .graph import Subgraph, induced_subgraph

__all__ = ["CorenessTable", "core_numbers", "max_kcore"]


@dataclass(frozen=True, eq=False)
class CorenessTable:
    """Core number per subgraph node (aligned with sorted member ids)."""

    nodes: np.ndarray
    core: np.ndarray
    k_max: int

    def core_of(self, node) -> int:
        i = np.searchsorted(self.nodes, node)
        if i >= len(self.nodes) or self.nodes[i] != node:
            raise KeyError(f"node {node!r} not in coreness table")
        return int(self.core[i])

    def as_dict(self) -> dict:
        return {int(n): int(c) for n, c in zip(self.nodes, self.core)}


def core_numbers(sg: Subgraph) -> CorenessTable:
    """Coreness of every node by linear-time bucket peeling.

    Processes vertices in nondecreasing current-degree order, decrementing
    the degrees of later neighbors; the degree at processing time is the
    core number. Equivalent to the fixed point of repeatedly deleting all
    nodes of degree < k, for every k.
    """
    n = sg.node_count
    if n == 0:
        raise ValueError("subgraph is empty")
    indptr, indices = sg._local_csr()
    core = sg.degrees.astype(np.int64).tolist()
    order = np.argsort(sg.degrees, kind="stable")
    vert = order.tolist()
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(n)
    pos = pos.tolist()
    md = max(core) if n else 0
    counts = np.bincount(sg.degrees, minlength=md + 1)
    bin_ptr = np.concatenate(([0], np.cumsum(counts)[:-1])).tolist()
    ip = indptr.tolist()
    ix = indices.tolist()

    for i in range(n):
        v = vert[i]
        dv = core[v]
        for j in range(ip[v], ip[v + 1]):
            u = ix[j]
            du = core[u]
            if du > dv:
                pu = pos[u]
                pw = bin_ptr[du]
                w = vert[pw]
                if u != w:
                    vert[pu] = w
                    vert[pw] = u
                    pos[u] = pw
                    pos[w] = pu
                bin_ptr[du] = pw + 1
                core[u] = du - 1

    core_arr = np.asarray(core, dtype=np.int64)
    return CorenessTable(nodes=sg.members, core=core_arr, k_max=int(core_arr.max()))


def _components(sg: Subgraph, selected_locals) -> list:
    """Connected components within a local-index selection, as local arrays.

    Components are discovered by seeding from the selection in ascending
    local order, so the first component contains the smallest member id.
    """
    indptr, indices = sg._local_csr()
    in_sel = np.zeros(sg.node_count, dtype=bool)
    in_sel[selected_locals] = True
    seen = np.zeros(sg.node_count, dtype=bool)
    comps = []
    for s0 in selected_locals:
        if seen[s0]:
            continue
        comp = [s0]
        seen[s0] = True
        stack = [s0]
        while stack:
            u = stack.pop()
            for x in indices[indptr[u] : indptr[u + 1]]:
                x = int(x)
                if in_sel[x] and not seen[x]:
                    seen[x] = True
                    comp.append(x)
                    stack.append(x)
        comps.append(np.sort(np.asarray(comp, dtype=np.int64)))
    return comps


def max_kcore(sg: Subgraph, anchor=None) -> Subgraph:
    """Connected subgraph of the nodes at the maximum core number.

    The set of maximum-coreness nodes may be disconnected; the component
    containing `anchor` is returned when the anchor survives, otherwise the
    largest component (ties go to the component holding the smallest node
    id). Every returned node has degree >= k_max inside the result.
    """
    table = core_numbers(sg)
    selected = np.flatnonzero(table.core == table.k_max)
    comps = _components(sg, selected)
    chosen = None
    if anchor is not None:
        anchor_local = sg._to_local(anchor)
        for comp in comps:
            if anchor_local in comp:
                chosen = comp
                break
    if chosen is None:
        sizes = np.asarray([len(c) for c in comps])
        chosen = comps[int(np.argmax(sizes))]
    return induced_subgraph(sg, sg.members[chosen])
