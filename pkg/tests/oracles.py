"""Independent oracles used by the tests.

These deliberately avoid the library's evaluation paths: energies are
accumulated with plain Python loops (or, for larger enumerations, a dense
matrix contraction that shares no code with the sparse production path).
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from sbqa.models import HuboModel, IsingModel, QuboMatrix


def oracle_ising_energy(model: IsingModel, spins) -> float:
    e = model.offset
    for i, j, w in model.couplings():
        e -= w * spins[i] * spins[j]
    for i in range(model.n):
        e -= model.fields[i] * spins[i]
    return e


def oracle_ising_min(model: IsingModel) -> float:
    best = math.inf
    for spins in itertools.product((-1.0, 1.0), repeat=model.n):
        best = min(best, oracle_ising_energy(model, spins))
    return best


def oracle_hubo_energy(model: HuboModel, spins) -> float:
    e = 0.0
    for idx, w in model.terms:
        prod = w
        for v in idx:
            prod *= spins[v]
        e += prod
    return e


def oracle_hubo_min(model: HuboModel) -> tuple[float, tuple]:
    best = math.inf
    best_s = None
    for spins in itertools.product((-1.0, 1.0), repeat=model.n):
        e = oracle_hubo_energy(model, spins)
        if e < best:
            best, best_s = e, spins
    return best, best_s


def oracle_qubo_energy(q: QuboMatrix, x) -> float:
    e = q.offset
    for i, j, w in q.entries():
        e += w * x[i] * x[j]
    return e


def oracle_qubo_min(q: QuboMatrix, limit: int = 22) -> float:
    """Minimum over all binary configurations via a dense contraction."""
    n = q.n
    if n > limit:
        raise ValueError(f"enumeration capped at {limit} variables")
    dense = np.zeros((n, n))
    for i, j, w in q.entries():
        dense[i, j] += w
    best = math.inf
    chunk = 1 << min(n, 16)
    total = 1 << n
    bits = np.arange(n, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        x = ((codes[:, None] >> bits[None, :]) & 1).astype(np.float64)
        energies = np.einsum("ki,ij,kj->k", x, dense, x) + q.offset
        best = min(best, float(energies.min()))
    return best


def dense_enum_min(model: IsingModel, limit: int = 20) -> float:
    """Ising ground energy via a dense symmetric contraction (independent of
    the sparse upper-triangular production path)."""
    n = model.n
    if n > limit:
        raise ValueError(f"enumeration capped at {limit} variables")
    dense = np.zeros((n, n))
    for i, j, w in model.couplings():
        dense[i, j] += w
        dense[j, i] += w
    h = np.asarray(model.fields)
    best = math.inf
    chunk = 1 << min(n, 16)
    total = 1 << n
    bits = np.arange(n, dtype=np.int64)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        s = ((codes[:, None] >> bits[None, :]) & 1) * 2.0 - 1.0
        energies = -0.5 * np.einsum("ki,ij,kj->k", s, dense, s) - s @ h + model.offset
        best = min(best, float(energies.min()))
    return best


def random_dyadic(rng: np.random.Generator, size: int, scale: int = 256) -> np.ndarray:
    """Random multiples of 1/scale in [-1, 1]: exactly representable floats."""
    return rng.integers(-scale, scale + 1, size) / scale
