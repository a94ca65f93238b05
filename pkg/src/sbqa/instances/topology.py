"""Benchmark topologies: Zephyr graphs and cubic lattices.

The Zephyr graph Z(m, t) is built from its coordinate description: qubits
(u, w, k, j, z) are length-2 paths on a grid of 2m+1 lines per orientation
(u orientation, w line index, k wire offset within a bundle of t, j half
offset, z position along the line).  Couplers:

* external -- consecutive positions on the same wire: z, z+1;
* odd      -- the two half-offset wires of one bundle where they overlap:
              (k, j=0, z) with (k, j=1, z) and (k, j=1, z-1);
* internal -- a path endpoint of one orientation meeting the midpoint of a
              crossing path, all t x t wire pairs per crossing.

This yields 4*t*m*(2m+1) nodes (16m(2m+1) at t=4) and a nominal degree of
4t+4 in the bulk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

__all__ = ["TopologyGraph", "gen_zephyr", "gen_cubic_lattice"]


@dataclass(frozen=True, eq=False)
class TopologyGraph:
    """Simple undirected graph with family metadata.

    ``edges`` is an (E, 2) int array with edges[i,0] < edges[i,1], sorted
    lexicographically.
    """

    n: int
    edges: np.ndarray
    family: str
    params: dict = field(default_factory=dict)

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in self.edges]

    def iter_edges(self) -> Iterator[tuple[int, int]]:
        for a, b in self.edges:
            yield int(a), int(b)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[int(a)].append(int(b))
            adj[int(b)].append(int(a))
        return adj

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.edges[:, 0], 1)
        np.add.at(deg, self.edges[:, 1], 1)
        return deg

    def max_degree(self) -> int:
        return int(self.degrees().max(initial=0))


def _canonical_edges(a: np.ndarray, b: np.ndarray, dedupe: bool = False) -> np.ndarray:
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    edges = np.stack([lo, hi], axis=1)
    if dedupe:
        edges = np.unique(edges, axis=0)
        return edges
    order = np.lexsort((edges[:, 1], edges[:, 0]))
    return edges[order]


def gen_zephyr(m: int, t: int = 4) -> TopologyGraph:
    """Zephyr graph Z(m, t); 16m(2m+1) nodes at t=4."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if t < 1:
        raise ValueError("t must be >= 1")
    M = 2 * m + 1

    def nid(u, w, k, j, z):
        return (((u * M + w) * t + k) * 2 + j) * m + z

    chunks_a: list[np.ndarray] = []
    chunks_b: list[np.ndarray] = []

    # external couplers
    if m >= 2:
        u, w, k, j, z = np.meshgrid(
            np.arange(2), np.arange(M), np.arange(t), np.arange(2), np.arange(m - 1),
            indexing="ij",
        )
        chunks_a.append(nid(u, w, k, j, z).ravel())
        chunks_b.append(nid(u, w, k, j, z + 1).ravel())

    # odd couplers
    u, w, k, z = np.meshgrid(
        np.arange(2), np.arange(M), np.arange(t), np.arange(m), indexing="ij"
    )
    chunks_a.append(nid(u, w, k, 0, z).ravel())
    chunks_b.append(nid(u, w, k, 1, z).ravel())
    if m >= 2:
        u, w, k, z = np.meshgrid(
            np.arange(2), np.arange(M), np.arange(t), np.arange(1, m), indexing="ij"
        )
        chunks_a.append(nid(u, w, k, 0, z).ravel())
        chunks_b.append(nid(u, w, k, 1, z - 1).ravel())

    # internal couplers: enumerate from the vertical side (u=0)
    w, j, z = np.meshgrid(np.arange(M), np.arange(2), np.arange(m), indexing="ij")
    w, j, z = w.ravel(), j.ravel(), z.ravel()
    kk, kk2 = np.meshgrid(np.arange(t), np.arange(t), indexing="ij")
    kk, kk2 = kk.ravel(), kk2.ravel()

    def add_internal(vw, vj, vz, hw, hj, hz):
        # expand each bundle crossing into all t*t wire pairs
        a = nid(0, vw[:, None], kk[None, :], vj[:, None], vz[:, None]).ravel()
        b = nid(1, hw[:, None], kk2[None, :], hj[:, None], hz[:, None]).ravel()
        chunks_a.append(a)
        chunks_b.append(b)

    # crossing at the vertical midpoint row, horizontal endpoint column
    j2 = w % 2  # parity with w - j2 even
    mid = 2 * z + j + 1
    for delta in (0, -1):
        z2 = (w - j2) // 2 + delta
        ok = (z2 >= 0) & (z2 < m)
        add_internal(w[ok], j[ok], z[ok], mid[ok], j2[ok], z2[ok])

    # crossing at a vertical endpoint row, horizontal midpoint column
    j2b = 1 - j2
    z2b = (w - j2b - 1) // 2
    okb = (w - j2b >= 1) & (z2b >= 0) & (z2b < m)
    for end in (2 * z + j, 2 * z + j + 2):
        ok = okb & (end <= 2 * m)
        add_internal(w[ok], j[ok], z[ok], end[ok], j2b[ok], z2b[ok])

    a = np.concatenate(chunks_a)
    b = np.concatenate(chunks_b)
    edges = _canonical_edges(a.astype(np.int64), b.astype(np.int64))
    return TopologyGraph(
        n=4 * t * m * M, edges=edges, family="zephyr", params={"m": m, "t": t}
    )


def gen_cubic_lattice(L: int, Lz: int | None = None, bc: str = "ppo") -> TopologyGraph:
    """L x L x Lz lattice; boundary conditions per axis, 'p'(eriodic)/'o'(pen).

    Default is periodic in x and y, open in z.  Wraparound edges that
    coincide with existing ones (L=2) are deduplicated, so the edge count is
    3*L^2*Lz - L^2 for L >= 3 under the default boundaries.
    """
    if L < 2:
        raise ValueError("L must be >= 2")
    if Lz is None:
        Lz = L
    if Lz < 1:
        raise ValueError("Lz must be >= 1")
    if len(bc) != 3 or any(c not in "po" for c in bc):
        raise ValueError("bc must be three characters drawn from 'p'/'o'")

    dims = (L, L, Lz)
    x, y, z = np.meshgrid(np.arange(L), np.arange(L), np.arange(Lz), indexing="ij")

    def nid(xv, yv, zv):
        return (zv * L + yv) * L + xv

    base = nid(x, y, z).ravel()
    coords = [x.ravel(), y.ravel(), z.ravel()]
    chunks_a, chunks_b = [], []
    for axis in range(3):
        size = dims[axis]
        periodic = bc[axis] == "p"
        if periodic and size >= 2:
            mask = np.ones_like(base, dtype=bool)
        else:
            mask = coords[axis] < size - 1
        shifted = [c.copy() for c in coords]
        shifted[axis] = (coords[axis] + 1) % size
        nb = nid(shifted[0], shifted[1], shifted[2])
        chunks_a.append(base[mask])
        chunks_b.append(nb[mask])

    a = np.concatenate(chunks_a)
    b = np.concatenate(chunks_b)
    edges = _canonical_edges(a, b, dedupe=True)
    return TopologyGraph(
        n=L * L * Lz,
        edges=edges,
        family="cubic",
        params={"L": L, "Lz": Lz, "bc": bc},
    )
