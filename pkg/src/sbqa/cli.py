"""Command-line front end: gen, solve, reduce, bench, sweep, fit.

The CLI only marshals arguments and files; all numerical work lives in the
library modules.  Every output embeds the configuration and master seed that
produced it, and replaying a command reproduces results bit-identically
except for measured runtimes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import bench
from .bench import SolverSpec, fit_power_law, sensitivity_sweep, tte_protocol
from .instances import (
    gen_complete_instance,
    gen_cubic_instance,
    gen_heavyhex_hubo,
    gen_ring_instance,
    gen_zephyr_instance,
    parse_distribution,
)
from .models import HuboModel, IsingModel, hubo_energy, ising_energy, qubo_to_ising
from .reduction import de_reduce, penalty_line_search, reduce_hubo
from .serialization import dumps_instance, load_instance, save_instance
from .solvers import (
    DtsqaParams,
    SaParams,
    SbmParams,
    SbqaParams,
    dsatur_coloring,
    dtsqa_solve,
    sa_solve,
    sbm_solve,
    sbqa_solve,
)

DEFAULT_OUTPUT_DIR = os.environ.get("SBQA_OUTPUT_DIR", ".")


def _out_dir(args) -> Path:
    d = Path(args.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


# ---------------------------------------------------------------------------
# gen

def _exact_reference(model: IsingModel) -> float:
    energy, _ = bench.exact_ground_state(model)
    return energy


def cmd_gen(args) -> int:
    out = _out_dir(args)
    dist = parse_distribution(args.dist)
    flags = {
        "family": args.family,
        "m": args.m,
        "L": args.L,
        "Lz": args.Lz,
        "n": args.n,
        "n_swap": args.n_swap,
        "dist": str(dist),
        "count": args.count,
        "seed": args.seed,
        "reference": args.reference,
    }
    for k in range(args.count):
        seed = args.seed + k
        if args.family == "zephyr":
            model: IsingModel | HuboModel = gen_zephyr_instance(args.m, seed)
            tag = f"zephyr_m{args.m}"
        elif args.family == "cubic":
            model = gen_cubic_instance(args.L, args.Lz, seed, dist=dist)
            tag = f"cubic_L{args.L}x{args.Lz if args.Lz else args.L}"
        elif args.family == "ring":
            model = gen_ring_instance(args.n, seed, dist=dist)
            tag = f"ring_n{args.n}"
        elif args.family == "complete":
            model = gen_complete_instance(args.n, seed, dist=dist)
            tag = f"complete_n{args.n}"
        elif args.family == "heavyhex":
            model = gen_heavyhex_hubo(args.n_swap, dist=dist, seed=seed)
            tag = f"heavyhex_swap{args.n_swap}"
        else:
            print(f"unknown family {args.family!r}", file=sys.stderr)
            return 2
        reference = None
        if args.reference == "enumerate":
            if isinstance(model, HuboModel) or model.n > 24:
                print("enumerated references need an Ising model with n <= 24", file=sys.stderr)
                return 2
            reference = _exact_reference(model)
        path = out / f"{tag}_s{seed}.txt"
        save_instance(model, path, reference_energy=reference,
                      comments=[f"generator {json.dumps(flags, sort_keys=True)}"])
        print(path)
    return 0


# ---------------------------------------------------------------------------
# solve

def _build_solver_args(args, n: int):
    common_rejects = []
    if args.solver == "sbm":
        for flag in ("beta", "alpha", "gamma0", "sets"):
            if getattr(args, flag) is not None:
                raise SystemExit(f"error: --{flag} is not a valid flag for solver 'sbm'")
    if args.solver in ("sbm", "sbqa") and args.sweeps is not None:
        raise SystemExit(f"error: --sweeps is not valid for solver '{args.solver}'")
    if args.solver in ("sa", "dtsqa") and args.autotune:
        raise SystemExit(f"error: --autotune is only valid for solver 'sbqa'")
    return common_rejects


def cmd_solve(args) -> int:
    loaded = load_instance(args.instance)
    model = loaded.model
    _build_solver_args(args, model.n)
    if isinstance(model, HuboModel):
        print("instance is higher-order; reduce it first (see 'sbqa reduce')", file=sys.stderr)
        return 2

    seed = args.seed
    if args.solver == "sbm":
        params = SbmParams(
            n_steps=args.steps,
            n_replicas=args.replicas if args.replicas else 32,
        )
        run = sbm_solve(model, params, seed)
    elif args.solver == "sbqa":
        if args.autotune:
            base = SbqaParams(n_steps=args.steps)
            run = bench.autotune_sbqa(model, args.samples, args.repetitions, base, seed)
        else:
            run = sbqa_solve(
                model,
                SbqaParams(
                    n_steps=args.steps,
                    r_replicas=args.replicas if args.replicas else 128,
                    n_sets=args.sets if args.sets is not None else 8,
                    beta=args.beta if args.beta is not None else 1.0,
                    alpha=args.alpha if args.alpha is not None else 1.0,
                    gamma0=args.gamma0,
                ),
                seed,
            )
    elif args.solver == "sa":
        run = sa_solve(
            model,
            SaParams(
                sweeps=args.sweeps if args.sweeps is not None else args.steps,
                n_replicas=args.replicas if args.replicas else 1,
            ),
            seed,
        )
    elif args.solver == "dtsqa":
        coloring = dsatur_coloring(model.adjacency())
        run = dtsqa_solve(
            model,
            DtsqaParams(
                n_steps=args.steps,
                r_replicas=args.replicas if args.replicas else 8,
                beta=args.beta if args.beta is not None else 1.0,
                alpha=args.alpha if args.alpha is not None else 1.0,
                gamma0=args.gamma0 if args.gamma0 is not None else 2.0,
            ),
            coloring,
            seed,
        )
    else:
        print(f"unknown solver {args.solver!r}", file=sys.stderr)
        return 2

    payload = {
        "solver": run.solver,
        "energy": run.best_energy,
        "runtime_s": run.runtime_seconds,
        "seed": run.seed,
        "n_vars": model.n,
    }
    if loaded.reference_energy is not None:
        payload["reference_energy"] = loaded.reference_energy
        payload["gap"] = bench.optimality_gap(run.best_energy, loaded.reference_energy)
    if args.spins:
        payload["spins"] = [int(s) for s in run.best_spins]
    print(json.dumps(payload, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------
# reduce

def cmd_reduce(args) -> int:
    loaded = load_instance(args.instance)
    model = loaded.model
    if isinstance(model, IsingModel):
        print("instance is already quadratic; nothing to reduce", file=sys.stderr)
        return 2

    if args.line_search:
        penalties = [float(p) for p in args.line_search.split(",")]
        solver_name = args.line_search_solver

        def solve(ising: IsingModel, seed: int):
            return SolverSpec(solver_name, json.loads(args.solver_params)).run(
                ising, args.steps, seed
            )

        best, means = penalty_line_search(model, solve, penalties, n_runs=args.runs, seed=args.seed)
        print(json.dumps({"best_penalty": best,
                          "means": {str(k): v for k, v in sorted(means.items())}},
                         sort_keys=True))
        return 0

    red = reduce_hubo(model, args.penalty)
    out = Path(args.output) if args.output else Path(args.instance).with_suffix(".qubo.json")
    qubo_payload = {
        "kind": "qubo",
        "n": red.qubo.n,
        "entries": red.qubo.entries(),
        "offset": red.qubo.offset,
        "penalty": red.penalty,
        "n_original": red.n_original,
    }
    out.write_text(json.dumps(qubo_payload, sort_keys=True))
    sidecar = out.with_suffix(".pairs.json")
    sidecar.write_text(json.dumps({"pair_map": [list(p) for p in red.pair_map]}, sort_keys=True))
    print(json.dumps({"output": str(out), "pair_map": str(sidecar),
                      "n_reduced": red.qubo.n, "n_auxiliary": red.n_auxiliary}))
    return 0


# ---------------------------------------------------------------------------
# bench

def _make_ensemble(cfg: dict):
    spec = cfg["instances"]
    family = spec["family"]
    count = int(spec.get("count", 1))
    seed = int(cfg.get("seed", 0))
    dist = parse_distribution(spec.get("dist", "normal(0,1)"))
    reference_mode = spec.get("reference", "enumerate")
    ensembles: list[tuple[str, dict, list[tuple[str, IsingModel, float | None]]]] = []

    if family == "files":
        members = []
        for path in spec["paths"]:
            loaded = load_instance(path)
            if isinstance(loaded.model, HuboModel):
                raise ValueError(f"{path}: higher-order instances must be reduced first")
            members.append((Path(path).stem, loaded.model, loaded.reference_energy))
        ensembles.append(("files", {"family": "files", "size": ""}, members))
        return ensembles

    for s_idx, size in enumerate(spec["sizes"]):
        members = []
        for k in range(count):
            inst_seed = seed + 1000 * s_idx + k
            if family == "ring":
                model = gen_ring_instance(size["n"], inst_seed, dist=dist)
                size_tag = f"n{size['n']}"
            elif family == "complete":
                model = gen_complete_instance(size["n"], inst_seed, dist=dist)
                size_tag = f"n{size['n']}"
            elif family == "cubic":
                model = gen_cubic_instance(size["L"], size.get("Lz"), inst_seed, dist=dist)
                size_tag = f"L{size['L']}"
            elif family == "zephyr":
                model = gen_zephyr_instance(size["m"], inst_seed)
                size_tag = f"m{size['m']}"
            else:
                raise ValueError(f"unknown family {family!r}")
            reference = None
            if reference_mode == "enumerate":
                if model.n > 24:
                    raise ValueError("enumerated references only available for n <= 24")
                reference = _exact_reference(model)
            members.append((f"{family}_{size_tag}_{k}", model, reference))
        ensembles.append((size_tag, {"family": family, "size": size_tag}, members))
    return ensembles


def cmd_bench(args) -> int:
    cfg = json.loads(Path(args.config).read_text())
    out = _out_dir(args)
    seed = int(cfg.get("seed", 0))
    p_target = float(cfg.get("p_target", 0.99))
    epsilons = cfg.get("epsilons", [0.0])
    step_grid = cfg["step_grid"]
    runs = int(cfg.get("runs", 5))
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 1))
    do_fit = bool(cfg.get("fit", False))

    try:
        ensembles = _make_ensemble(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    usable = sum(
        1 for _, _, members in ensembles for _, _, ref in members if ref is not None
    )
    if usable == 0:
        print("error: no instances with reference energies", file=sys.stderr)
        return 1

    rows: list[dict] = []
    reports = []
    for solver_idx, solver_cfg in enumerate(cfg["solvers"]):
        solver = SolverSpec(solver_cfg["name"], solver_cfg.get("params", {}))
        grids = []
        for size_idx, (size_tag, meta, members) in enumerate(ensembles):
            instance_meta = {inst_id: meta for inst_id, _, _ in members}
            grid = bench.run_step_grid(
                solver,
                members,
                step_grid=step_grid,
                runs_per_instance=runs,
                seed=bench.derive_seed(seed, solver_idx, size_idx),
                jobs=jobs,
                collect_rows=rows,
                instance_meta=instance_meta,
            )
            grids.append((size_tag, members[0][1].n, grid))
        for eps in epsilons:
            per_size = []
            points = []
            for size_tag, n_vars, grid in grids:
                report = bench.evaluate_tte(grid, float(eps), p_target)
                per_size.append(
                    {
                        "size": size_tag,
                        "n": n_vars,
                        "tte_median": report.tte_opt,
                        "n_steps_opt": report.n_steps_opt,
                        "reference_violations": list(report.reference_violations),
                    }
                )
                points.append((n_vars, report.tte_opt))
            fit = None
            if do_fit:
                try:
                    fit = fit_power_law(points)
                except ValueError:
                    fit = None
            report_path = out / f"report_{solver.name}_eps{eps}.json"
            bench.write_report_json(
                report_path,
                epsilon=float(eps),
                p_target=p_target,
                per_size=per_size,
                fit=fit,
                config=cfg,
                master_seed=seed,
            )
            reports.append(str(report_path))

    csv_path = out / "results.csv"
    bench.write_results_csv(
        csv_path, rows, config_comment=f"config {json.dumps(cfg, sort_keys=True)} seed {seed}"
    )
    print(json.dumps({"results": str(csv_path), "reports": reports}))
    return 0


# ---------------------------------------------------------------------------
# sweep

def cmd_sweep(args) -> int:
    loaded = load_instance(args.instance)
    if isinstance(loaded.model, HuboModel):
        print("sweep needs a quadratic instance", file=sys.stderr)
        return 2
    beta_grid = [float(b) for b in args.beta_grid.split(",")]
    alpha_grid = [float(a) for a in args.alpha_grid.split(",")]
    gaps = sensitivity_sweep(
        loaded.model,
        beta_grid,
        alpha_grid,
        runs=args.runs,
        sets=args.sets if args.sets is not None else 1,
        replicas=args.replicas if args.replicas else 32,
        seed=args.seed,
        base=SbqaParams(n_steps=args.steps),
        reference_energy=loaded.reference_energy,
    )
    out = Path(args.output)
    with open(out, "w") as f:
        f.write(f"# sweep seed {args.seed} instance {args.instance}\n")
        f.write("alpha,beta,gap\n")
        for a_idx, alpha in enumerate(alpha_grid):
            for b_idx, beta in enumerate(beta_grid):
                f.write(f"{alpha},{beta},{float(gaps[a_idx, b_idx])!r}\n")
    print(out)
    return 0


# ---------------------------------------------------------------------------
# fit

def cmd_fit(args) -> int:
    path = Path(args.input)
    points: list[tuple[float, float]] = []
    if path.suffix == ".json":
        payload = json.loads(path.read_text())
        for entry in payload["per_size"]:
            tte = entry["tte_median"]
            tte = math.inf if tte == "inf" else float(tte)
            points.append((float(entry["n"]), tte))
    else:
        with open(path, newline="") as f:
            import csv as _csv

            lines = [ln for ln in f if not ln.startswith("#")]
            for row in _csv.DictReader(lines):
                points.append((float(row["n"]), float(row["tte"])))
    try:
        fit = fit_power_law(points)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps({"gamma": fit.gamma, "intercept": fit.intercept,
                      "n_points": fit.n_points}, sort_keys=True))
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sbqa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate instance files")
    p.add_argument("--family", required=True,
                   choices=["zephyr", "cubic", "ring", "complete", "heavyhex"])
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--L", type=int, default=4)
    p.add_argument("--Lz", type=int, default=None)
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--n-swap", type=int, default=1)
    p.add_argument("--dist", default="normal(0,1)")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reference", choices=["none", "enumerate"], default="none")
    p.add_argument("--out-dir", default=DEFAULT_OUTPUT_DIR)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("instance")
    p.add_argument("--solver", required=True, choices=["sbm", "sbqa", "sa", "dtsqa"])
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--sweeps", type=int, default=None)
    p.add_argument("--replicas", type=int, default=None)
    p.add_argument("--sets", type=int, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--gamma0", type=float, default=None)
    p.add_argument("--autotune", action="store_true")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--repetitions", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--spins", action="store_true", help="include spins in the output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", help="quadratize a higher-order instance")
    p.add_argument("instance")
    p.add_argument("--penalty", type=float, default=None)
    p.add_argument("--output", default=None)
    p.add_argument("--line-search", default=None,
                   help="comma-separated penalty candidates; prints the winner")
    p.add_argument("--line-search-solver", default="sbm")
    p.add_argument("--solver-params", default="{}")
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="run the time-to-epsilon protocol from a config file")
    p.add_argument("config")
    p.add_argument("--out-dir", default=DEFAULT_OUTPUT_DIR)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sweep", help="hyperparameter sensitivity sweep")
    p.add_argument("instance")
    p.add_argument("--beta-grid", required=True)
    p.add_argument("--alpha-grid", required=True)
    p.add_argument("--runs", type=int, default=3)
    p.add_argument("--sets", type=int, default=None)
    p.add_argument("--replicas", type=int, default=None)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit", help="power-law fit of (n, tte) points")
    p.add_argument("input", help="report .json or a CSV with columns n,tte")
    p.set_defaults(func=cmd_fit)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "reduce" and not args.line_search and args.penalty is None:
        parser.error("reduce needs --penalty or --line-search")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
