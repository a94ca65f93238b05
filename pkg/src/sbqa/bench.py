"""Benchmarking harness: optimality gaps, time-to-epsilon, sweeps and fits.

Runtime figures come exclusively from the solvers' own measurements (taken
inside the solve call), so instance generation, file I/O and graph-coloring
preprocessing never contaminate the comparison.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .models import IsingModel
from .solvers.coloring import dsatur_coloring
from .solvers.dtsqa import DtsqaParams, dtsqa_solve
from .solvers.engine import (
    SbmParams,
    SbqaParams,
    SolverRun,
    derive_seed,
    sbm_solve,
    sbqa_solve,
)
from .solvers.sa import SaParams, sa_solve

__all__ = [
    "GapRecord",
    "TteReport",
    "ScalingFit",
    "SolverSpec",
    "optimality_gap",
    "time_to_epsilon",
    "lower_median",
    "exact_ground_state",
    "GridRuns",
    "run_step_grid",
    "evaluate_tte",
    "tte_protocol",
    "autotune_sbqa",
    "sensitivity_sweep",
    "fit_power_law",
    "write_results_csv",
    "read_results_csv",
    "write_report_json",
    "RESULT_COLUMNS",
]

REFERENCE_TOLERANCE = 1e-9

RESULT_COLUMNS = [
    "family",
    "size",
    "n_vars",
    "solver",
    "n_steps",
    "instance_id",
    "run_id",
    "seed",
    "best_energy",
    "reference_energy",
    "gap",
    "runtime_s",
]


def exact_ground_state(model: IsingModel, limit: int = 24) -> tuple[float, np.ndarray]:
    """Ground energy and configuration by exhaustive enumeration (n <= limit)."""
    n = model.n
    if n > limit:
        raise ValueError(f"enumeration limited to n <= {limit}")
    from .models import ising_energies, ising_energy

    best_energy = math.inf
    best = np.ones(n, dtype=np.float64)
    chunk = 1 << min(n, 16)
    total = 1 << n
    bits = np.arange(n, dtype=np.uint32)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        spins = (((codes[None, :] >> bits[:, None]) & 1) * 2.0 - 1.0)
        energies = ising_energies(model, spins)
        k = int(np.argmin(energies))
        if energies[k] < best_energy:
            best_energy = float(energies[k])
            best = spins[:, k].copy()
    # anchor on the single-configuration energy path so comparisons against
    # solver results are bit-consistent
    return ising_energy(model, best), best


def optimality_gap(energy: float, reference: float) -> float:
    """Relative gap (E - E0) / |E0| against the best known energy E0."""
    if reference == 0.0:
        raise ValueError("optimality gap is undefined for reference energy 0")
    return (energy - reference) / abs(reference)


def time_to_epsilon(tau: float, p_success: float, p_target: float = 0.99) -> float:
    """Expected time to reach the target at confidence p_target.

    tau * log(1 - p_target) / log(1 - p_success); 0 successes give +inf, a
    certain success gives tau (one run suffices).
    """
    if not tau > 0:
        raise ValueError("tau must be positive")
    if not 0.0 <= p_success <= 1.0:
        raise ValueError("p_success must lie in [0, 1]")
    if not 0.0 < p_target < 1.0:
        raise ValueError("p_target must lie in (0, 1)")
    if p_success == 0.0:
        return math.inf
    if p_success == 1.0:
        return tau
    # ratio first: p_success == p_target then yields exactly tau
    return tau * (math.log(1.0 - p_target) / math.log(1.0 - p_success))


def lower_median(values: Sequence[float]) -> float:
    """Lower median (index ceil(k/2)-1 of the sorted values).

    Infinities sort above any finite value and are never averaged with one.
    """
    if len(values) == 0:
        raise ValueError("median of an empty sequence")
    ordered = np.sort(np.asarray(values, dtype=np.float64))
    k = len(ordered)
    return float(ordered[math.ceil(k / 2) - 1])


@dataclass(frozen=True)
class GapRecord:
    """Gap bookkeeping for one (instance, solver, n_steps) cell."""

    instance_id: str
    solver: str
    n_steps: int
    runs: tuple[tuple[float, float], ...]  # (best_energy, runtime_s)
    reference_energy: float
    tolerance: float = REFERENCE_TOLERANCE

    def gaps(self) -> list[float]:
        return [optimality_gap(e, self.reference_energy) for e, _ in self.runs]

    @property
    def reference_violation(self) -> bool:
        """True when some run beat the reference: the reference is stale."""
        return any(g < -self.tolerance for g in self.gaps())


@dataclass(frozen=True)
class ScalingFit:
    gamma: float
    intercept: float
    residuals: np.ndarray
    n_points: int


def fit_power_law(points: Sequence[tuple[float, float]]) -> ScalingFit:
    """Least-squares line in (log N, log TTe); the slope is the exponent."""
    finite = [(n, t) for n, t in points if math.isfinite(t) and t > 0]
    if len(finite) < 3:
        raise ValueError("power-law fit needs at least 3 finite points")
    log_n = np.log(np.asarray([n for n, _ in finite], dtype=np.float64))
    log_t = np.log(np.asarray([t for _, t in finite], dtype=np.float64))
    gamma, intercept = np.polyfit(log_n, log_t, 1)
    residuals = log_t - (gamma * log_n + intercept)
    return ScalingFit(
        gamma=float(gamma),
        intercept=float(intercept),
        residuals=residuals,
        n_points=len(finite),
    )


# ---------------------------------------------------------------------------
# solver dispatch

@dataclass(frozen=True)
class SolverSpec:
    """Named solver plus fixed parameters; n_steps is supplied per run."""

    name: str
    params: dict = field(default_factory=dict)

    def run(self, model: IsingModel, n_steps: int, seed: int) -> SolverRun:
        kwargs = dict(self.params)
        if self.name == "sbm":
            return sbm_solve(model, SbmParams(n_steps=n_steps, **kwargs), seed)
        if self.name == "sbqa":
            autotune = kwargs.pop("autotune", False)
            if autotune:
                n_samples = kwargs.pop("n_samples", 1024)
                n_repetitions = kwargs.pop("n_repetitions", 8)
                base = SbqaParams(n_steps=n_steps, **kwargs)
                return autotune_sbqa(model, n_samples, n_repetitions, base, seed)
            return sbqa_solve(model, SbqaParams(n_steps=n_steps, **kwargs), seed)
        if self.name == "sa":
            return sa_solve(model, SaParams(sweeps=n_steps, **kwargs), seed)
        if self.name == "dtsqa":
            coloring = kwargs.pop("coloring", None)
            if coloring is None:
                coloring = dsatur_coloring(model.adjacency())
            return dtsqa_solve(model, DtsqaParams(n_steps=n_steps, **kwargs), coloring, seed)
        raise ValueError(f"unknown solver {self.name!r}")


# ---------------------------------------------------------------------------
# protocols

@dataclass(frozen=True)
class TteReport:
    """Time-to-epsilon summary for one solver over an instance ensemble."""

    solver: str
    epsilon: float
    p_target: float
    step_grid: tuple[int, ...]
    # per step count: median TTe over the ensemble
    medians: dict[int, float]
    # per (instance, step count) success probability / mean runtime / TTe
    per_instance: dict[str, dict[int, dict]]
    n_steps_opt: int
    tte_opt: float
    reference_violations: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "solver": self.solver,
            "epsilon": self.epsilon,
            "p_target": self.p_target,
            "step_grid": list(self.step_grid),
            "medians": {str(k): v for k, v in self.medians.items()},
            "n_steps_opt": self.n_steps_opt,
            "tte_opt": self.tte_opt,
            "reference_violations": list(self.reference_violations),
        }


@dataclass(frozen=True)
class GridRuns:
    """Raw (energy, runtime) samples per (instance, n_steps), epsilon-agnostic."""

    solver: str
    step_grid: tuple[int, ...]
    instances: tuple[tuple[str, float], ...]  # (instance_id, reference_energy)
    cells: dict

    def record(self, instance_id: str, n_steps: int) -> GapRecord:
        ref = dict(self.instances)[instance_id]
        return GapRecord(
            instance_id=instance_id,
            solver=self.solver,
            n_steps=n_steps,
            runs=tuple(self.cells[(instance_id, n_steps)]),
            reference_energy=ref,
        )


def run_step_grid(
    solver: SolverSpec,
    ensemble: Sequence[tuple[str, IsingModel, float | None]],
    step_grid: Sequence[int],
    runs_per_instance: int,
    seed: int,
    jobs: int = 1,
    collect_rows: list | None = None,
    instance_meta: dict[str, dict] | None = None,
) -> GridRuns:
    """Execute runs x step-grid over the ensemble; returns raw samples.

    Run seeds derive from (master seed, instance index, grid index, run
    index), so results are independent of worker count and replayable.
    Instances without a usable reference energy are skipped with a warning.
    """
    if len(step_grid) == 0:
        raise ValueError("step grid must not be empty")
    usable = []
    for inst_id, model, ref in ensemble:
        if ref is None:
            warnings.warn(f"instance {inst_id} has no reference energy; skipped")
            continue
        if ref == 0.0:
            warnings.warn(f"instance {inst_id} has reference energy 0; skipped")
            continue
        usable.append((inst_id, model, float(ref)))
    if not usable:
        raise ValueError("no instances with reference energies")

    tasks = []
    for i_idx, (inst_id, model, ref) in enumerate(usable):
        for g_idx, n_steps in enumerate(step_grid):
            for run_idx in range(runs_per_instance):
                run_seed = derive_seed(seed, i_idx, g_idx, run_idx)
                tasks.append((inst_id, model, ref, int(n_steps), run_idx, run_seed))

    def execute(task):
        _, model, _, n_steps, _, run_seed = task
        return solver.run(model, n_steps, run_seed)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(execute, tasks))
    else:
        results = [execute(t) for t in tasks]

    cells: dict[tuple[str, int], list[tuple[float, float]]] = {}
    for task, run in zip(tasks, results):
        inst_id, model, ref, n_steps, run_idx, run_seed = task
        cells.setdefault((inst_id, n_steps), []).append(
            (run.best_energy, run.runtime_seconds)
        )
        if collect_rows is not None:
            meta = (instance_meta or {}).get(inst_id, {})
            collect_rows.append(
                {
                    "family": meta.get("family", ""),
                    "size": meta.get("size", ""),
                    "n_vars": model.n,
                    "solver": solver.name,
                    "n_steps": n_steps,
                    "instance_id": inst_id,
                    "run_id": run_idx,
                    "seed": run_seed,
                    "best_energy": run.best_energy,
                    "reference_energy": ref,
                    "gap": optimality_gap(run.best_energy, ref),
                    "runtime_s": run.runtime_seconds,
                }
            )

    return GridRuns(
        solver=solver.name,
        step_grid=tuple(int(s) for s in step_grid),
        instances=tuple((inst_id, ref) for inst_id, _, ref in usable),
        cells=cells,
    )


def evaluate_tte(grid: GridRuns, epsilon: float, p_target: float = 0.99) -> TteReport:
    """Fold raw grid samples into the median/minimized time-to-epsilon report."""
    per_instance: dict[str, dict[int, dict]] = {}
    medians: dict[int, float] = {}
    violations: set[str] = set()
    for n_steps in grid.step_grid:
        ttes = []
        for inst_id, ref in grid.instances:
            entries = grid.cells[(inst_id, n_steps)]
            gaps = [optimality_gap(e, ref) for e, _ in entries]
            if any(g < -REFERENCE_TOLERANCE for g in gaps):
                violations.add(inst_id)
            p_success = sum(1 for g in gaps if g <= epsilon) / len(entries)
            tau = float(np.mean([rt for _, rt in entries]))
            tte = time_to_epsilon(tau, p_success, p_target) if tau > 0 else math.inf
            per_instance.setdefault(inst_id, {})[n_steps] = {
                "p_success": p_success,
                "tau": tau,
                "tte": tte,
            }
            ttes.append(tte)
        medians[n_steps] = lower_median(ttes)

    n_opt = min(medians, key=lambda k: (medians[k], k))
    return TteReport(
        solver=grid.solver,
        epsilon=float(epsilon),
        p_target=float(p_target),
        step_grid=grid.step_grid,
        medians=medians,
        per_instance=per_instance,
        n_steps_opt=int(n_opt),
        tte_opt=float(medians[n_opt]),
        reference_violations=tuple(sorted(violations)),
    )


def tte_protocol(
    solver: SolverSpec,
    ensemble: Sequence[tuple[str, IsingModel, float | None]],
    epsilon: float,
    step_grid: Sequence[int],
    runs_per_instance: int,
    seed: int,
    p_target: float = 0.99,
    jobs: int = 1,
    collect_rows: list | None = None,
    instance_meta: dict[str, dict] | None = None,
) -> TteReport:
    """Estimate the grid-minimized median time-to-epsilon.

    For each instance and step count, p_success is the fraction of runs whose
    gap is <= epsilon and tau the mean measured runtime; the ensemble median
    is taken per step count and minimized over the grid.
    """
    grid = run_step_grid(
        solver,
        ensemble,
        step_grid,
        runs_per_instance,
        seed,
        jobs=jobs,
        collect_rows=collect_rows,
        instance_meta=instance_meta,
    )
    return evaluate_tte(grid, epsilon, p_target)


def autotune_sbqa(
    model: IsingModel,
    n_samples: int,
    n_repetitions: int,
    base: SbqaParams,
    seed: int = 0,
) -> SolverRun:
    """Best run over random hyperparameter draws.

    n_samples is split into n_repetitions independent repetitions of
    n_samples/n_repetitions interacting replicas each; every repetition draws
    beta uniformly from [0.5, 1.5] and alpha from [0.5, 1.0].
    """
    if n_repetitions < 1:
        raise ValueError("n_repetitions must be >= 1")
    if n_samples % n_repetitions != 0:
        raise ValueError("n_samples must divide into n_repetitions equal parts")
    r_replicas = n_samples // n_repetitions
    if r_replicas < 2:
        raise ValueError("need at least 2 replicas per repetition")

    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed), spawn_key=(0xB7,))))
    best: SolverRun | None = None
    for rep in range(n_repetitions):
        beta = float(rng.uniform(0.5, 1.5))
        alpha = float(rng.uniform(0.5, 1.0))
        params = SbqaParams(
            n_steps=base.n_steps,
            a0=base.a0,
            c0=base.c0,
            T=base.T,
            nonlinearity=base.nonlinearity,
            threshold_slope=base.threshold_slope,
            r_replicas=r_replicas,
            n_sets=1,
            beta=beta,
            alpha=alpha,
            gamma0=base.gamma0,
            regularizer=base.regularizer,
        )
        run = sbqa_solve(model, params, derive_seed(seed, rep))
        if best is None or run.best_energy < best.best_energy:
            best = run
    assert best is not None
    return best


def sensitivity_sweep(
    model: IsingModel,
    beta_grid: Sequence[float],
    alpha_grid: Sequence[float],
    runs: int,
    sets: int,
    replicas: int,
    seed: int = 0,
    base: SbqaParams | None = None,
    reference_energy: float | None = None,
) -> np.ndarray:
    """Mean best-of-run gap per (alpha, beta) cell; shape (len(alpha), len(beta)).

    With no reference energy supplied, gaps are taken against the best energy
    found anywhere in the sweep.
    """
    if len(beta_grid) == 0 or len(alpha_grid) == 0:
        raise ValueError("grids must not be empty")
    base = base or SbqaParams()
    energies = np.empty((len(alpha_grid), len(beta_grid), runs), dtype=np.float64)
    for a_idx, alpha in enumerate(alpha_grid):
        for b_idx, beta in enumerate(beta_grid):
            params = SbqaParams(
                n_steps=base.n_steps,
                a0=base.a0,
                c0=base.c0,
                T=base.T,
                nonlinearity=base.nonlinearity,
                threshold_slope=base.threshold_slope,
                r_replicas=replicas,
                n_sets=sets,
                beta=float(beta),
                alpha=float(alpha),
                gamma0=base.gamma0,
                regularizer=base.regularizer,
            )
            for r in range(runs):
                run = sbqa_solve(model, params, derive_seed(seed, a_idx, b_idx, r))
                energies[a_idx, b_idx, r] = run.best_energy
    ref = float(np.min(energies)) if reference_energy is None else float(reference_energy)
    gaps = (energies - ref) / abs(ref)
    return gaps.mean(axis=2)


# ---------------------------------------------------------------------------
# persistence

def write_results_csv(path: str | Path, rows: Sequence[dict], config_comment: str | None = None) -> None:
    """Write run rows using the canonical result schema."""
    with open(path, "w", newline="") as f:
        if config_comment is not None:
            f.write(f"# {config_comment}\n")
        writer = csv.DictWriter(f, fieldnames=RESULT_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in RESULT_COLUMNS})


def read_results_csv(path: str | Path) -> list[dict]:
    """Read a results CSV, skipping leading comment lines."""
    with open(path, newline="") as f:
        lines = [ln for ln in f if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    out = []
    for row in reader:
        parsed = dict(row)
        for key in ("n_vars", "n_steps", "run_id", "seed"):
            if parsed.get(key):
                parsed[key] = int(parsed[key])
        for key in ("best_energy", "reference_energy", "gap", "runtime_s"):
            if parsed.get(key):
                parsed[key] = float(parsed[key])
        out.append(parsed)
    return out


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def write_report_json(
    path: str | Path,
    epsilon: float,
    p_target: float,
    per_size: Sequence[dict],
    fit: ScalingFit | None = None,
    config: dict | None = None,
    master_seed: int | None = None,
) -> None:
    """Persist the report schema {epsilon, p_target, per_size, fit}.

    Infinite time-to-epsilon values serialize as the string "inf" so the file
    stays strict JSON.
    """
    payload: dict = {
        "epsilon": epsilon,
        "p_target": p_target,
        "per_size": list(per_size),
        "fit": None if fit is None else {"gamma": fit.gamma, "intercept": fit.intercept},
    }
    if config is not None:
        payload["config"] = config
    if master_seed is not None:
        payload["master_seed"] = master_seed
    Path(path).write_text(json.dumps(_json_safe(payload), indent=2, sort_keys=True) + "\n")
