"""Simulated-bifurcation dynamics: plain (SBM) and replica-coupled (SBQA).

Both solvers integrate the same oscillator network with semi-implicit
(symplectic) Euler steps: momenta are updated from positions, then positions
from the new momenta, followed by the inelastic wall rule (|q|>1 snaps q to
its sign and zeroes p).  SBQA evolves R interacting replicas per set, coupled
through a time-dependent ferromagnetic term J_perp(t) between neighbouring
replicas (periodic in the replica index), with the single-replica terms
rescaled by 1/R.

The two code paths share one kernel so that, with the replica coupling turned
off and the 1/R rescaling undone, SBQA trajectories coincide bit-for-bit with
SBM trajectories for matching seeds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, fields as dc_fields
from typing import Callable

import numpy as np

from ..models import IsingModel, ising_energies, ising_energy

__all__ = [
    "NumericalError",
    "SbmParams",
    "SbqaParams",
    "SolverRun",
    "replica_rng",
    "derive_seed",
    "anneal_ramp",
    "threshold_delta",
    "gamma_x",
    "replica_coupling",
    "j_perp",
    "threshold_f",
    "sbm_solve",
    "sbqa_solve",
    "sbm_trajectory",
    "sbqa_trajectory",
]

NONLINEARITIES = ("ballistic", "discrete", "thresholded")

# Sign-readout energies are evaluated every step up to this many variables,
# every 10 steps above (keeps tracking cost amortized on large instances).
READOUT_DENSE_LIMIT = 4096
READOUT_STRIDE_LARGE = 10


class NumericalError(RuntimeError):
    """Integration produced a non-finite state."""


def replica_rng(seed: int, set_idx: int, replica_idx: int) -> np.random.Generator:
    """Counter-based stream for one (set, replica), derived from the master seed.

    Streams are independent of scheduling/vectorization, so results do not
    depend on the degree of parallelism.
    """
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(set_idx), int(replica_idx)))
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, *key: int) -> int:
    """Stable sub-seed for a nested experiment axis (instance, run, ...)."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


@dataclass(frozen=True)
class SbmParams:
    """Simulated-bifurcation parameters.

    ``c0=None`` resolves per model to 0.5 / (rms(J) * sqrt(N)).  ``T=None``
    resolves to 0.5 * n_steps (time step 0.5).
    """

    n_steps: int = 1000
    a0: float = 1.0
    c0: float | None = None
    T: float | None = None
    nonlinearity: str = "thresholded"
    threshold_slope: float = 0.7
    n_replicas: int = 32
    record_trace: bool = False

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if not self.a0 > 0:
            raise ValueError("a0 must be positive")
        if self.c0 is not None and not self.c0 > 0:
            raise ValueError("c0 must be positive")
        if self.T is not None and not self.T > 0:
            raise ValueError("T must be positive")
        if self.nonlinearity not in NONLINEARITIES:
            raise ValueError(f"nonlinearity must be one of {NONLINEARITIES}")
        if not 0.0 <= self.threshold_slope <= 1.0:
            raise ValueError("threshold_slope must lie in [0, 1]")
        if self.n_replicas < 1:
            raise ValueError("n_replicas must be >= 1")

    @property
    def total_time(self) -> float:
        return 0.5 * self.n_steps if self.T is None else self.T

    @property
    def dt(self) -> float:
        return self.total_time / self.n_steps

    def resolve_c0(self, model: IsingModel) -> float:
        if self.c0 is not None:
            return self.c0
        sigma = model.coupling_rms()
        if sigma == 0.0:
            sigma = 1.0
        return 0.5 / (sigma * math.sqrt(model.n))


@dataclass(frozen=True)
class SbqaParams:
    """Replica-coupled simulated-bifurcation parameters.

    Carries everything in :class:`SbmParams` plus the replica-coupling knobs:
    R interacting replicas per set, inverse temperature beta, schedule
    exponent alpha, initial transverse field gamma0 and the endpoint
    regularizer.  ``j_perp_scale`` is a diagnostics knob (0 disables the
    replica coupling entirely).
    """

    n_steps: int = 1000
    a0: float = 1.0
    c0: float | None = None
    T: float | None = None
    nonlinearity: str = "thresholded"
    threshold_slope: float = 0.7
    r_replicas: int = 128
    n_sets: int = 8
    beta: float = 1.0
    alpha: float = 1.0
    gamma0: float | None = None
    regularizer: float = 1e-5
    j_perp_scale: float = 1.0
    record_trace: bool = False

    # The single-replica terms of the equations of motion carry a 1/R factor,
    # so with an SBM-like total time the oscillators would evolve R times too
    # slowly.  The default total time is therefore scaled by R (time step
    # 0.5*R), which preserves the replica-Hamiltonian force ratios while
    # giving the same effective per-step dynamics as the plain solver.
    # Override T to control this explicitly.

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")
        if not self.a0 > 0:
            raise ValueError("a0 must be positive")
        if self.c0 is not None and not self.c0 > 0:
            raise ValueError("c0 must be positive")
        if self.T is not None and not self.T > 0:
            raise ValueError("T must be positive")
        if self.nonlinearity not in NONLINEARITIES:
            raise ValueError(f"nonlinearity must be one of {NONLINEARITIES}")
        if not 0.0 <= self.threshold_slope <= 1.0:
            raise ValueError("threshold_slope must lie in [0, 1]")
        if self.r_replicas < 2:
            raise ValueError("r_replicas must be >= 2")
        if self.n_sets < 1:
            raise ValueError("n_sets must be >= 1")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if self.gamma0 is not None and not self.gamma0 > 0:
            raise ValueError("gamma0 must be positive")

    @property
    def total_time(self) -> float:
        if self.T is not None:
            return self.T
        return 0.5 * self.n_steps * self.r_replicas

    def resolve_gamma0(self) -> float:
        """Initial transverse field; defaults to R*ln(4R).

        The aligned replica mode destabilizes once 2*J_perp(t)*R exceeds the
        pump deficit a0 - a(t), so the coupling must start negligibly small
        and harden mid-anneal; R*ln(4R) places that crossover near t = T/2
        for beta = alpha = 1.
        """
        if self.gamma0 is not None:
            return self.gamma0
        r = self.r_replicas
        return r * math.log(4.0 * r)

    @property
    def dt(self) -> float:
        return self.total_time / self.n_steps

    def resolve_c0(self, model: IsingModel) -> float:
        if self.c0 is not None:
            return self.c0
        sigma = model.coupling_rms()
        if sigma == 0.0:
            sigma = 1.0
        return 0.5 / (sigma * math.sqrt(model.n))


@dataclass(frozen=True)
class SolverRun:
    """Result of one solver invocation.

    ``best_energy`` always equals ``ising_energy(model, best_spins)``; it is
    recomputed through that exact code path before the run is returned.
    """

    solver: str
    best_spins: np.ndarray
    best_energy: float
    runtime_seconds: float
    seed: int
    params: dict
    trace: np.ndarray | None = None


def _params_snapshot(params, extra: dict | None = None) -> dict:
    snap = {f.name: getattr(params, f.name) for f in dc_fields(params)}
    if extra:
        snap.update(extra)
    return snap


# ---------------------------------------------------------------------------
# schedules and nonlinearity

def anneal_ramp(t: float, T: float, a0: float) -> float:
    """Linear pump ramp a(t) = a0 * t/T."""
    return a0 * (t / T)


def threshold_delta(t: float, T: float, slope: float) -> float:
    """Time-dependent dead zone of the thresholded nonlinearity."""
    return slope * (t / T)


def gamma_x(t: float, T: float, gamma0: float, alpha: float, regularizer: float) -> float:
    """Annealed transverse field gamma0 * ((1 - t/T)^alpha + regularizer)."""
    return gamma0 * ((1.0 - t / T) ** alpha + regularizer)


def replica_coupling(gamma: float, beta: float, r: float) -> float:
    """Closed-form coupling -(1/2 beta) * ln tanh(beta * gamma / r)."""
    return -0.5 / beta * math.log(math.tanh(beta * gamma / r))


def _j_perp_frac(frac: float, params: SbqaParams, gamma0: float | None = None) -> float:
    g0 = params.resolve_gamma0() if gamma0 is None else gamma0
    gx = g0 * ((1.0 - frac) ** params.alpha + params.regularizer)
    return replica_coupling(gx, params.beta, params.r_replicas)


def j_perp(t: float, params: SbqaParams) -> float:
    """Inter-replica coupling -(1/2 beta) * ln tanh(beta * gamma_x(t) / R).

    Strictly increasing in t for alpha > 0: the coupling stiffens as the
    transverse field is annealed away.  The regularizer keeps the endpoint
    finite.
    """
    if not 0.0 <= t <= params.total_time:
        raise ValueError("t must lie in [0, T]")
    return _j_perp_frac(t / params.total_time, params)


def threshold_f(x, t: float, params: SbmParams | SbqaParams):
    """Solver nonlinearity f: pass-through, sign, or sign outside a dead zone."""
    return _nonlinearity(
        np.asarray(x, dtype=np.float64),
        t / params.total_time,
        params.nonlinearity,
        params.threshold_slope,
    )


def _nonlinearity(q: np.ndarray, frac: float, kind: str, slope: float) -> np.ndarray:
    if kind == "ballistic":
        return q
    if kind == "discrete":
        return np.sign(q)
    delta = slope * frac
    return np.where(np.abs(q) <= delta, 0.0, np.sign(q))


# ---------------------------------------------------------------------------
# shared kernel

def _init_state(n: int, seed: int, n_sets: int, n_replicas: int) -> tuple[np.ndarray, np.ndarray]:
    k = n_sets * n_replicas
    q = np.empty((n, k), dtype=np.float64)
    p = np.empty((n, k), dtype=np.float64)
    for s in range(n_sets):
        for r in range(n_replicas):
            rng = replica_rng(seed, s, r)
            col = s * n_replicas + r
            q[:, col] = rng.uniform(-0.1, 0.1, n)
            p[:, col] = rng.uniform(-0.1, 0.1, n)
    return q, p


def _sign_readout(q: np.ndarray) -> np.ndarray:
    return np.where(q >= 0.0, 1.0, -1.0)


def _evolve(
    model: IsingModel,
    q: np.ndarray,
    p: np.ndarray,
    *,
    n_steps: int,
    dt: float,
    a0_eff: float,
    ramp_a0: float,
    inv_scale: float,
    c0_eff: float,
    nonlinearity: str,
    slope: float,
    jp_at: Callable[[float], float] | None,
    n_sets: int,
    n_replicas: int,
    record_trace: bool,
    state_hook: Callable[[np.ndarray, np.ndarray], None] | None = None,
) -> tuple[np.ndarray, float, np.ndarray | None]:
    """Integrate the oscillator network; returns (best_spins, best_energy, trace).

    Schedules are evaluated at the exact step fraction (step+1)/n_steps, so
    the final step lands on t = T.  ``ramp_a0`` is the raw pump amplitude
    entering a(t); ``inv_scale`` divides the restoring coefficient (1 for SBM,
    R for SBQA); ``a0_eff``/``c0_eff`` are the already-rescaled prefactors of
    the q-update and the force.  ``jp_at`` supplies the replica-coupling
    strength as a function of the step fraction (None for SBM); a value of
    exactly 0 skips the coupling term so both solvers share one expression.
    """
    n, k = q.shape
    w = model.force_matrix()
    h_col = model.fields[:, None]
    a0dt = dt * a0_eff
    stride = 1 if n <= READOUT_DENSE_LIMIT else READOUT_STRIDE_LARGE

    best_energy = math.inf
    best_col = np.empty(n, dtype=np.float64)
    trace = np.empty(n_steps, dtype=np.float64) if record_trace else None

    if state_hook is not None:
        state_hook(q, p)

    # overflow/invalid states are caught by the explicit finiteness guard
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(n_steps):
            frac = (step + 1) / n_steps
            coef_a = (ramp_a0 - ramp_a0 * frac) / inv_scale
            fq = _nonlinearity(q, frac, nonlinearity, slope)
            force = w @ fq + h_col
            if jp_at is not None:
                jp = jp_at(frac)
            else:
                jp = 0.0
            if jp != 0.0:
                v = q.reshape(n, n_sets, n_replicas)
                neigh = (np.roll(v, 1, axis=2) + np.roll(v, -1, axis=2)).reshape(n, k)
                p += dt * (c0_eff * force - coef_a * q + jp * neigh)
            else:
                p += dt * (c0_eff * force - coef_a * q)
            q += a0dt * p
            clamp = np.abs(q) > 1.0
            if clamp.any():
                np.clip(q, -1.0, 1.0, out=q)
                p[clamp] = 0.0
            if not (np.isfinite(q).all() and np.isfinite(p).all()):
                raise NumericalError(f"non-finite state at step {step + 1}")
            if state_hook is not None:
                state_hook(q, p)
            if step % stride == 0 or step == n_steps - 1:
                spins = _sign_readout(q)
                energies = ising_energies(model, spins)
                col = int(np.argmin(energies))
                if energies[col] < best_energy:
                    best_energy = float(energies[col])
                    best_col = spins[:, col].copy()
            if trace is not None:
                trace[step] = best_energy

    return best_col, best_energy, trace


def sbm_solve(model: IsingModel, params: SbmParams = SbmParams(), seed: int = 0) -> SolverRun:
    """Run simulated bifurcation; best sign readout over all replicas and steps."""
    start = time.perf_counter()
    c0 = params.resolve_c0(model)
    q, p = _init_state(model.n, seed, 1, params.n_replicas)
    best_spins, _, trace = _evolve(
        model,
        q,
        p,
        n_steps=params.n_steps,
        dt=params.dt,
        a0_eff=params.a0,
        ramp_a0=params.a0,
        inv_scale=1.0,
        c0_eff=c0,
        nonlinearity=params.nonlinearity,
        slope=params.threshold_slope,
        jp_at=None,
        n_sets=1,
        n_replicas=params.n_replicas,
        record_trace=params.record_trace,
    )
    best_energy = ising_energy(model, best_spins)
    runtime = time.perf_counter() - start
    return SolverRun(
        solver="sbm",
        best_spins=best_spins,
        best_energy=best_energy,
        runtime_seconds=runtime,
        seed=int(seed),
        params=_params_snapshot(params, {"c0_resolved": c0}),
        trace=trace,
    )


def sbqa_solve(model: IsingModel, params: SbqaParams = SbqaParams(), seed: int = 0) -> SolverRun:
    """Run replica-coupled simulated bifurcation over n_sets independent sets."""
    start = time.perf_counter()
    c0 = params.resolve_c0(model)
    r = params.r_replicas
    q, p = _init_state(model.n, seed, params.n_sets, r)

    gamma0 = params.resolve_gamma0()

    def jp_at(frac: float) -> float:
        return _j_perp_frac(frac, params, gamma0) * params.j_perp_scale

    best_spins, _, trace = _evolve(
        model,
        q,
        p,
        n_steps=params.n_steps,
        dt=params.dt,
        a0_eff=params.a0 / r,
        ramp_a0=params.a0,
        inv_scale=float(r),
        c0_eff=c0 / r,
        nonlinearity=params.nonlinearity,
        slope=params.threshold_slope,
        jp_at=jp_at,
        n_sets=params.n_sets,
        n_replicas=r,
        record_trace=params.record_trace,
    )
    best_energy = ising_energy(model, best_spins)
    runtime = time.perf_counter() - start
    return SolverRun(
        solver="sbqa",
        best_spins=best_spins,
        best_energy=best_energy,
        runtime_seconds=runtime,
        seed=int(seed),
        params=_params_snapshot(params, {"c0_resolved": c0, "gamma0_resolved": gamma0}),
        trace=trace,
    )


def _record_states(n: int, k: int, n_steps: int):
    qs = np.empty((n_steps + 1, n, k), dtype=np.float64)
    ps = np.empty((n_steps + 1, n, k), dtype=np.float64)
    holder = {"i": 0}

    def hook(q: np.ndarray, p: np.ndarray) -> None:
        i = holder["i"]
        qs[i] = q
        ps[i] = p
        holder["i"] = i + 1

    return qs, ps, hook


def sbm_trajectory(
    model: IsingModel, params: SbmParams, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Full (q, p) history, shape (n_steps+1, n, n_replicas); diagnostics API."""
    c0 = params.resolve_c0(model)
    q, p = _init_state(model.n, seed, 1, params.n_replicas)
    qs, ps, hook = _record_states(model.n, params.n_replicas, params.n_steps)
    _evolve(
        model,
        q,
        p,
        n_steps=params.n_steps,
        dt=params.dt,
        a0_eff=params.a0,
        ramp_a0=params.a0,
        inv_scale=1.0,
        c0_eff=c0,
        nonlinearity=params.nonlinearity,
        slope=params.threshold_slope,
        jp_at=None,
        n_sets=1,
        n_replicas=params.n_replicas,
        record_trace=False,
        state_hook=hook,
    )
    return qs, ps


def sbqa_trajectory(
    model: IsingModel, params: SbqaParams, seed: int = 0
) -> tuple[np.ndarray, np.ndarray]:
    """Full (q, p) history, shape (n_steps+1, n, n_sets*r_replicas)."""
    c0 = params.resolve_c0(model)
    r = params.r_replicas
    q, p = _init_state(model.n, seed, params.n_sets, r)
    qs, ps, hook = _record_states(model.n, params.n_sets * r, params.n_steps)

    gamma0 = params.resolve_gamma0()

    def jp_at(frac: float) -> float:
        return _j_perp_frac(frac, params, gamma0) * params.j_perp_scale

    _evolve(
        model,
        q,
        p,
        n_steps=params.n_steps,
        dt=params.dt,
        a0_eff=params.a0 / r,
        ramp_a0=params.a0,
        inv_scale=float(r),
        c0_eff=c0 / r,
        nonlinearity=params.nonlinearity,
        slope=params.threshold_slope,
        jp_at=jp_at,
        n_sets=params.n_sets,
        n_replicas=r,
        record_trace=False,
        state_hook=hook,
    )
    return qs, ps
