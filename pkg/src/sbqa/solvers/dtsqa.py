"""Discrete-time simulated quantum annealing.

Metropolis dynamics at fixed inverse temperature beta on the classical
replica Hamiltonian

    H = -(1/R) sum_k [ sum_{i<j} J_ij s_i^k s_j^k + sum_i h_i s_i^k ]
        - J_perp(t) sum_k sum_i s_i^k s_i^{k+1}

with periodic replica index and the replica coupling
J_perp = -(1/2 beta) ln tanh(beta * Gamma_x / R) annealed through the same
regularized transverse-field schedule as the bifurcation solvers.  Spins in
one color class of a proper coloring of the interaction graph are
non-interacting and are proposed as a single vectorized batch; replicas are
swept in index order within each step.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..models import IsingModel, ising_energies, ising_energy
from .coloring import color_classes, validate_coloring
from .engine import SolverRun, _params_snapshot, replica_rng

__all__ = ["DtsqaParams", "dtsqa_solve"]


@dataclass(frozen=True)
class DtsqaParams:
    n_steps: int = 1000
    r_replicas: int = 8
    beta: float = 1.0
    gamma0: float = 2.0
    alpha: float = 1.0
    regularizer: float = 1e-5

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if self.r_replicas < 1:
            raise ValueError("r_replicas must be >= 1")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.gamma0 > 0:
            raise ValueError("gamma0 must be positive")


def _j_perp(frac: float, params: DtsqaParams) -> float:
    gx = params.gamma0 * ((1.0 - frac) ** params.alpha + params.regularizer)
    arg = params.beta * gx / params.r_replicas
    return -0.5 / params.beta * math.log(math.tanh(arg))


def dtsqa_solve(
    model: IsingModel,
    params: DtsqaParams,
    coloring: Sequence[int],
    seed: int = 0,
    proposal_hook: Callable[[np.ndarray, np.ndarray], None] | None = None,
) -> SolverRun:
    """Evolve R coupled replicas; return the best single-replica readout.

    ``coloring`` must be a proper coloring of the model's interaction graph
    (precomputed; its construction is not part of the measured runtime).
    ``proposal_hook`` receives (delta_energy, accepted) per proposal batch,
    for acceptance-rate diagnostics.
    """
    if len(coloring) != model.n:
        raise ValueError(f"coloring must assign a color to each of {model.n} spins")
    validate_coloring(coloring, zip(model.rows, model.cols))

    start = time.perf_counter()
    n, r = model.n, params.r_replicas
    classes = [np.asarray(c, dtype=np.int64) for c in color_classes(coloring)]
    sym = model.symmetric_csr()
    indptr, indices, data = sym.indptr, sym.indices, sym.data
    inv_r = 1.0 / r

    sigma = np.empty((n, r), dtype=np.float64)
    rngs = [replica_rng(seed, 0, k) for k in range(r)]
    for k in range(r):
        sigma[:, k] = rngs[k].integers(0, 2, n).astype(np.float64) * 2.0 - 1.0

    best_energy = math.inf
    best_spins = np.ones(n, dtype=np.float64)

    def track(spins: np.ndarray) -> None:
        nonlocal best_energy, best_spins
        energies = ising_energies(model, spins)
        k = int(np.argmin(energies))
        if energies[k] < best_energy:
            best_energy = float(energies[k])
            best_spins = spins[:, k].copy()

    track(sigma)
    stride = 1 if n <= 4096 else 10
    # per-replica coupling fields, maintained incrementally across flips
    fields_mat = sym @ sigma + model.fields[:, None]
    offsets = np.cumsum([0] + [c.size for c in classes])
    for step in range(params.n_steps):
        frac = (step + 1) / params.n_steps
        jp = _j_perp(frac, params)
        for k in range(r):
            if r == 1:
                neigh = None
            elif r == 2:
                neigh = 2.0 * sigma[:, 1 - k]
            else:
                neigh = sigma[:, k - 1] + sigma[:, (k + 1) % r]
            u_all = rngs[k].random(n)
            for c_idx, cls in enumerate(classes):
                local = inv_r * fields_mat[cls, k]
                if neigh is not None:
                    local = local + jp * neigh[cls]
                delta = 2.0 * sigma[cls, k] * local
                u = u_all[offsets[c_idx] : offsets[c_idx + 1]]
                accept = u < np.exp(np.minimum(-params.beta * delta, 0.0))
                if proposal_hook is not None:
                    proposal_hook(delta, accept)
                flip = cls[accept]
                if flip.size:
                    sigma[flip, k] = -sigma[flip, k]
                    for i in flip:
                        lo, hi = indptr[i], indptr[i + 1]
                        fields_mat[indices[lo:hi], k] += 2.0 * sigma[i, k] * data[lo:hi]
        if step % stride == 0 or step == params.n_steps - 1:
            track(sigma)

    best_energy = ising_energy(model, best_spins)
    runtime = time.perf_counter() - start
    return SolverRun(
        solver="dtsqa",
        best_spins=best_spins,
        best_energy=best_energy,
        runtime_seconds=runtime,
        seed=int(seed),
        params=_params_snapshot(params),
    )
