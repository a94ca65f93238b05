"""Higher-order instances built on a 156-qubit heavy-hexagon layout.

The layout itself ships as a JSON data file (configuration, not code).  An
instance is constructed by accumulating sets of simultaneously executable
interactions: matchings of the current graph supply 2-body terms, disjoint
2-neighbor paths supply 3-body terms, both obtained from greedy conflict
colorings.  A SWAP layer (relabeling the variable on each qubit along the
lowest-index matching) is applied between accumulation rounds; n_swap layers
yield n_swap+1 rounds.  Weights are drawn per distinct term.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from ..models import HuboModel
from ..solvers.coloring import color_classes, dsatur_coloring
from .distributions import Normal
from .generators import instance_rng
from .topology import TopologyGraph

__all__ = ["load_heavyhex", "independent_pair_sets", "independent_triple_sets", "gen_heavyhex_hubo"]


def load_heavyhex() -> TopologyGraph:
    """The heavy-hexagon layout (156 qubits) from the packaged data file."""
    text = resources.files("sbqa.instances.data").joinpath("heavyhex156.json").read_text()
    data = json.loads(text)
    edges = np.asarray(data["edges"], dtype=np.int64)
    return TopologyGraph(
        n=int(data["n"]),
        edges=edges,
        family=data.get("family", "heavy-hex"),
        params={k: data[k] for k in ("rows", "row_width", "bridges_per_gap") if k in data},
    )


def _conflict_classes(items: list[tuple[int, ...]]) -> list[list[int]]:
    """Color items that share a vertex; classes are sets of disjoint items."""
    adj: list[set[int]] = [set() for _ in items]
    by_vertex: dict[int, list[int]] = {}
    for idx, item in enumerate(items):
        for v in item:
            by_vertex.setdefault(v, []).append(idx)
    for members in by_vertex.values():
        for a in members:
            for b in members:
                if a != b:
                    adj[a].add(b)
    colors = dsatur_coloring(adj)
    return color_classes(colors)


def independent_pair_sets(graph: TopologyGraph) -> list[list[tuple[int, int]]]:
    """Matchings of the graph, ordered by conflict-color index."""
    edges = [tuple(e) for e in graph.edge_list()]
    return [[edges[i] for i in cls] for cls in _conflict_classes(edges)]


def independent_triple_sets(graph: TopologyGraph) -> list[list[tuple[int, int, int]]]:
    """Sets of vertex-disjoint 2-neighbor paths (a, center, b)."""
    adj = graph.adjacency()
    triples: list[tuple[int, int, int]] = []
    for v in range(graph.n):
        nbrs = sorted(adj[v])
        for x in range(len(nbrs)):
            for y in range(x + 1, len(nbrs)):
                triples.append((nbrs[x], v, nbrs[y]))
    return [[triples[i] for i in cls] for cls in _conflict_classes(triples)]


def gen_heavyhex_hubo(
    n_swap: int,
    s2q: int = 1,
    s3q: int = 6,
    dist=Normal(0.0, 1.0),
    seed: int = 0,
    graph: TopologyGraph | None = None,
) -> HuboModel:
    """Random degree-<=3 instance from n_swap SWAP layers on the heavy-hex layout."""
    if n_swap < 0:
        raise ValueError("n_swap must be >= 0")
    g = load_heavyhex() if graph is None else graph
    label = list(range(g.n))

    g2: set[tuple[int, int]] = set()
    g3: set[tuple[int, int, int]] = set()
    for round_idx in range(n_swap + 1):
        # interaction sets come from a coloring of the *current* graph: after
        # a swap layer the variable-level graph is relabeled, so its greedy
        # coloring (index-dependent) yields fresh sets each round
        var_edges = np.asarray(
            sorted(
                tuple(sorted((label[a], label[b]))) for a, b in g.iter_edges()
            ),
            dtype=np.int64,
        )
        var_graph = TopologyGraph(n=g.n, edges=var_edges, family="relabeled")
        pair_sets = independent_pair_sets(var_graph)
        triple_sets = independent_triple_sets(var_graph)
        for pairs in pair_sets[:s2q]:
            g2.update(pairs)
        for triples in triple_sets[:s3q]:
            g3.update(tuple(sorted(t)) for t in triples)
        if round_idx < n_swap:
            # rotate the driving matching: swapping along one fixed matching
            # is an involution and would cycle with period 2
            driving = pair_sets[round_idx % len(pair_sets)]
            position = {v: q for q, v in enumerate(label)}
            for va, vb in driving:
                qa, qb = position[va], position[vb]
                label[qa], label[qb] = label[qb], label[qa]
                position[va], position[vb] = qb, qa

    rng = instance_rng(seed)
    pairs_sorted = sorted(g2)
    triples_sorted = sorted(g3)
    w2 = dist.sample(rng, len(pairs_sorted))
    w3 = dist.sample(rng, len(triples_sorted))
    terms = [(t, float(w)) for t, w in zip(pairs_sorted, w2)]
    terms += [(t, float(w)) for t, w in zip(triples_sorted, w3)]
    return HuboModel.from_terms(g.n, terms)
