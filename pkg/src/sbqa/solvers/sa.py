"""Simulated annealing: Metropolis single-spin flips on a geometric ladder."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ..models import IsingModel, ising_energy
from .engine import SolverRun, _params_snapshot, replica_rng

__all__ = ["SaParams", "sa_solve", "geometric_ladder"]


def geometric_ladder(beta_min: float, beta_max: float, sweeps: int) -> np.ndarray:
    """Inverse-temperature ladder, geometric from beta_min to beta_max."""
    if not (beta_min > 0 and beta_max > 0):
        raise ValueError("inverse temperatures must be positive")
    if sweeps < 1:
        raise ValueError("sweeps must be >= 1")
    if sweeps == 1:
        return np.array([beta_max], dtype=np.float64)
    return np.geomspace(beta_min, beta_max, sweeps)


@dataclass(frozen=True)
class SaParams:
    sweeps: int = 1000
    beta_min: float = 0.1
    beta_max: float = 10.0
    n_replicas: int = 1

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if not (self.beta_min > 0 and self.beta_max > 0):
            raise ValueError("inverse temperatures must be positive")
        if self.n_replicas < 1:
            raise ValueError("n_replicas must be >= 1")

    def ladder(self) -> np.ndarray:
        return geometric_ladder(self.beta_min, self.beta_max, self.sweeps)


def sa_solve(
    model: IsingModel,
    params: SaParams = SaParams(),
    seed: int = 0,
    schedule: np.ndarray | None = None,
) -> SolverRun:
    """Anneal ``n_replicas`` independent restarts; return the best energy seen.

    ``schedule`` overrides the geometric ladder with an explicit array of
    inverse temperatures (one per sweep).
    """
    start = time.perf_counter()
    betas = params.ladder() if schedule is None else np.asarray(schedule, dtype=np.float64)
    n = model.n
    sym = model.symmetric_csr()
    indptr, indices, data = sym.indptr, sym.indices, sym.data

    best_energy = math.inf
    best_spins = np.ones(n, dtype=np.float64)

    for rep in range(params.n_replicas):
        rng = replica_rng(seed, 0, rep)
        s = rng.integers(0, 2, n).astype(np.float64) * 2.0 - 1.0
        local = sym @ s + model.fields
        energy = ising_energy(model, s)
        if energy < best_energy:
            best_energy = energy
            best_spins = s.copy()
        for beta in betas:
            # random visit order: keeps zero-cost moves diffusive instead of cyclic
            order = rng.permutation(n)
            u = rng.random(n)
            for pos in range(n):
                i = order[pos]
                delta = 2.0 * s[i] * local[i]
                if delta <= 0.0 or u[pos] < math.exp(-beta * delta):
                    s[i] = -s[i]
                    energy += delta
                    lo, hi = indptr[i], indptr[i + 1]
                    local[indices[lo:hi]] += 2.0 * s[i] * data[lo:hi]
                    if energy < best_energy:
                        best_energy = energy
                        best_spins = s.copy()

    # re-anchor on the canonical energy path
    best_energy = ising_energy(model, best_spins)
    runtime = time.perf_counter() - start
    return SolverRun(
        solver="sa",
        best_spins=best_spins,
        best_energy=best_energy,
        runtime_seconds=runtime,
        seed=int(seed),
        params=_params_snapshot(params),
    )
