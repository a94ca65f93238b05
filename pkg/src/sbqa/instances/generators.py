"""Random instance generators and the chain-of-2 lattice embedding.

All generators are pure functions of (parameters, seed): regenerating with
the same arguments is bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..models import IsingModel, QuboMatrix, qubo_to_ising
from .distributions import Normal, Uniform
from .topology import TopologyGraph, gen_cubic_lattice, gen_zephyr

__all__ = [
    "instance_rng",
    "gen_zephyr_instance",
    "gen_cubic_instance",
    "gen_ring_instance",
    "gen_complete_instance",
    "EmbeddedInstance",
    "embed_cubic_into_pegasus",
    "pegasus_capacity",
]


def instance_rng(seed: int) -> np.random.Generator:
    """Counter-based generator used by all instance samplers."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))


def gen_zephyr_instance(m: int, seed: int, t: int = 4) -> IsingModel:
    """QUBO with uniform[-1,1] entries supported on the Zephyr graph (plus
    diagonal), re-encoded as an Ising model."""
    topo = gen_zephyr(m, t)
    rng = instance_rng(seed)
    dist = Uniform(-1.0, 1.0)
    off_vals = dist.sample(rng, topo.num_edges)
    diag_vals = dist.sample(rng, topo.n)
    rows = np.concatenate([topo.edges[:, 0], np.arange(topo.n)])
    cols = np.concatenate([topo.edges[:, 1], np.arange(topo.n)])
    vals = np.concatenate([off_vals, diag_vals])
    q = QuboMatrix.from_arrays(topo.n, rows, cols, vals)
    return qubo_to_ising(q)


def gen_cubic_instance(
    L: int,
    Lz: int | None = None,
    seed: int = 0,
    dist=Normal(0.0, 1.0),
    bc: str = "ppo",
) -> IsingModel:
    """Spin glass on the L x L x Lz lattice with couplings drawn from ``dist``."""
    topo = gen_cubic_lattice(L, Lz, bc)
    rng = instance_rng(seed)
    vals = dist.sample(rng, topo.num_edges)
    return IsingModel(
        n=topo.n,
        rows=topo.edges[:, 0].astype(np.int64),
        cols=topo.edges[:, 1].astype(np.int64),
        values=np.asarray(vals, dtype=np.float64),
        fields=np.zeros(topo.n, dtype=np.float64),
    )


def gen_ring_instance(n: int, seed: int, dist=None) -> IsingModel:
    """Ring of n spins with couplings from ``dist`` (default random +-1)."""
    if n < 3:
        raise ValueError("ring needs n >= 3")
    rng = instance_rng(seed)
    if dist is None:
        vals = rng.integers(0, 2, n) * 2.0 - 1.0
    else:
        vals = dist.sample(rng, n)
    couplings = [(i, (i + 1) % n, float(vals[i])) for i in range(n)]
    return IsingModel.from_couplings(n, couplings)


def gen_complete_instance(n: int, seed: int, dist=Normal(0.0, 1.0)) -> IsingModel:
    """Fully connected model with couplings from ``dist``."""
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    rng = instance_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    vals = dist.sample(rng, len(pairs))
    couplings = [(i, j, float(w)) for (i, j), w in zip(pairs, vals)]
    return IsingModel.from_couplings(n, couplings)


def pegasus_capacity(M: int) -> tuple[int, int, int]:
    """Largest lattice (Lx, Ly, Lz) accommodated by a chain-of-2 embedding."""
    return (M - 1, M - 1, 12)


@dataclass(frozen=True)
class EmbeddedInstance:
    """Chain-of-2 embedding: logical spin i -> physical pair (2i, 2i+1)."""

    logical: IsingModel
    physical: IsingModel
    chain_map: tuple[tuple[int, int], ...]
    chain_coupling: np.ndarray

    def un_embed(self, physical_spins: np.ndarray) -> np.ndarray:
        """Logical readout: chain majority, first physical spin on ties."""
        s = np.asarray(physical_spins, dtype=np.float64)
        out = np.empty(self.logical.n, dtype=np.float64)
        for i, (a, b) in enumerate(self.chain_map):
            total = s[a] + s[b]
            out[i] = np.sign(total) if total != 0.0 else s[a]
        return out

    def embed_config(self, logical_spins: np.ndarray) -> np.ndarray:
        """Chain-consistent physical configuration for a logical one."""
        s = np.asarray(logical_spins, dtype=np.float64)
        out = np.empty(self.physical.n, dtype=np.float64)
        for i, (a, b) in enumerate(self.chain_map):
            out[a] = s[i]
            out[b] = s[i]
        return out


def embed_cubic_into_pegasus(
    logical: IsingModel,
    M: int,
    dims: tuple[int, int, int] | None = None,
    chain_coupling: float | None = None,
) -> EmbeddedInstance:
    """Embed a lattice model with chains of length 2.

    Each logical spin becomes a ferromagnetically tied pair; every logical
    coupling is split in half across the two parallel physical edges, and
    fields are split across the chain members, so chain-consistent physical
    configurations reproduce logical energies up to the constant chain term.
    The chain strength defaults per spin to twice the largest incident
    |J| (overridable globally via ``chain_coupling``).
    """
    cap = pegasus_capacity(M)
    if dims is not None:
        if any(d > c for d, c in zip(dims, cap)):
            raise ValueError(f"lattice {dims} exceeds capacity {cap} of M={M}")
    elif logical.n > cap[0] * cap[1] * cap[2]:
        raise ValueError(
            f"{logical.n} logical spins exceed capacity {cap[0]}x{cap[1]}x{cap[2]} of M={M}"
        )

    n = logical.n
    incident_max = np.zeros(n, dtype=np.float64)
    np.maximum.at(incident_max, logical.rows, np.abs(logical.values))
    np.maximum.at(incident_max, logical.cols, np.abs(logical.values))
    if chain_coupling is None:
        chains = np.where(incident_max > 0.0, 2.0 * incident_max, 1.0)
    else:
        chains = np.full(n, float(chain_coupling))

    couplings: list[tuple[int, int, float]] = []
    for i in range(n):
        couplings.append((2 * i, 2 * i + 1, float(chains[i])))
    half = logical.values / 2.0
    for i, j, w in zip(logical.rows, logical.cols, half):
        couplings.append((2 * int(i), 2 * int(j), float(w)))
        couplings.append((2 * int(i) + 1, 2 * int(j) + 1, float(w)))

    fields = np.repeat(logical.fields / 2.0, 2)
    physical = IsingModel.from_couplings(
        2 * n, couplings, fields=fields, offset=logical.offset
    )
    chain_map = tuple((2 * i, 2 * i + 1) for i in range(n))
    return EmbeddedInstance(
        logical=logical,
        physical=physical,
        chain_map=chain_map,
        chain_coupling=chains,
    )
