"""Greedy graph coloring by saturation degree (DSATUR).

Used to precompute conflict-free update groups for the replica Monte Carlo
solver; spins sharing a color have no interaction and can be proposed in one
vectorized batch.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

__all__ = ["dsatur_coloring", "color_classes", "validate_coloring"]


def _as_adjacency(adjacency) -> list[set[int]]:
    if isinstance(adjacency, Mapping):
        n = max(adjacency.keys(), default=-1) + 1
        adj = [set() for _ in range(n)]
        for v, nbrs in adjacency.items():
            adj[v].update(int(u) for u in nbrs)
    else:
        adj = [set(int(u) for u in nbrs) for nbrs in adjacency]
    for v, nbrs in enumerate(adj):
        if v in nbrs:
            raise ValueError(f"self-loop at vertex {v}")
        for u in nbrs:
            if not 0 <= u < len(adj):
                raise ValueError(f"neighbor {u} out of range")
            adj[u].add(v)
    return adj


def dsatur_coloring(adjacency: Sequence[Iterable[int]] | Mapping[int, Iterable[int]]) -> list[int]:
    """Proper coloring of a simple undirected graph.

    Vertices are colored in order of decreasing saturation (number of distinct
    neighbor colors), ties broken by larger degree, then by lower index, so
    the result is deterministic.  Uses at most max_degree + 1 colors.
    """
    adj = _as_adjacency(adjacency)
    n = len(adj)
    colors = [-1] * n
    neighbor_colors: list[set[int]] = [set() for _ in range(n)]
    degrees = [len(adj[v]) for v in range(n)]
    uncolored = set(range(n))

    for _ in range(n):
        v = max(uncolored, key=lambda u: (len(neighbor_colors[u]), degrees[u], -u))
        used = neighbor_colors[v]
        c = 0
        while c in used:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in adj[v]:
            neighbor_colors[u].add(c)
    return colors


def color_classes(colors: Sequence[int]) -> list[list[int]]:
    """Group vertex indices by color, ordered by color index."""
    n_colors = max(colors, default=-1) + 1
    classes: list[list[int]] = [[] for _ in range(n_colors)]
    for v, c in enumerate(colors):
        classes[c].append(v)
    return classes


def validate_coloring(
    colors: Sequence[int], edges: Iterable[tuple[int, int]]
) -> None:
    """Raise if any edge connects two vertices of the same color."""
    for i, j in edges:
        if colors[i] == colors[j]:
            raise ValueError(f"vertices {i} and {j} are adjacent but share color {colors[i]}")
