import math

import numpy as np
import pytest

from sbqa.bench import (
    GapRecord,
    SolverSpec,
    autotune_sbqa,
    evaluate_tte,
    exact_ground_state,
    fit_power_law,
    lower_median,
    optimality_gap,
    read_results_csv,
    run_step_grid,
    sensitivity_sweep,
    time_to_epsilon,
    tte_protocol,
    write_results_csv,
)
from sbqa.instances import gen_ring_instance
from sbqa.models import IsingModel
from sbqa.solvers import SbqaParams


class TestOptimalityGap:
    def test_zero_gap(self):
        assert optimality_gap(-100.0, -100.0) == 0.0

    def test_one_percent(self):
        assert math.isclose(optimality_gap(-99.0, -100.0), 0.01, rel_tol=0, abs_tol=1e-15)

    def test_negative_gap_flags_reference_violation(self):
        g = optimality_gap(-100.0, -99.0)
        assert math.isclose(g, -1.0 / 99.0, rel_tol=1e-12)
        record = GapRecord(
            instance_id="x", solver="sbm", n_steps=10,
            runs=((-100.0, 0.1),), reference_energy=-99.0,
        )
        assert record.reference_violation

    def test_no_false_violation(self):
        record = GapRecord(
            instance_id="x", solver="sbm", n_steps=10,
            runs=((-99.0, 0.1), (-98.0, 0.1)), reference_energy=-99.0,
        )
        assert not record.reference_violation

    def test_zero_reference_rejected(self):
        with pytest.raises(ValueError):
            optimality_gap(1.0, 0.0)


class TestTimeToEpsilon:
    def test_target_probability_gives_tau(self):
        assert time_to_epsilon(3.5, 0.99, 0.99) == 3.5

    def test_closed_form_value(self):
        # 2 * ln(0.01) / ln(0.7), high-precision value 25.8228
        assert math.isclose(time_to_epsilon(2.0, 0.3), 25.822784943, rel_tol=0, abs_tol=1e-6)

    def test_zero_success_is_infinite(self):
        assert time_to_epsilon(1.0, 0.0) == math.inf

    def test_certain_success_gives_tau(self):
        assert time_to_epsilon(1.7, 1.0) == 1.7

    def test_monotone_in_success_probability(self):
        values = [time_to_epsilon(1.0, p) for p in (0.05, 0.2, 0.5, 0.9, 1.0)]
        assert all(b <= a for a, b in zip(values, values[1:]))


class TestLowerMedian:
    def test_odd_count(self):
        assert lower_median([3.0, 1.0, 2.0]) == 2.0

    def test_even_count_takes_lower(self):
        assert lower_median([4.0, 1.0, 3.0, 2.0]) == 2.0

    def test_infinity_sorts_last(self):
        assert lower_median([1.0, 2.0, math.inf]) == 2.0
        assert lower_median([math.inf, math.inf, 1.0]) == math.inf

    def test_permutation_invariant(self, rng):
        vals = [1.0, 5.0, math.inf, 2.0, 0.5]
        ref = lower_median(vals)
        for _ in range(10):
            rng.shuffle(vals)
            assert lower_median(vals) == ref


class TestProtocol:
    def make_ensemble(self, n_instances=3, n=12):
        out = []
        for k in range(n_instances):
            m = gen_ring_instance(n, 4000 + k)
            e0, _ = exact_ground_state(m)
            out.append((f"ring_{k}", m, e0))
        return out

    def test_success_probability_matches_hit_rate(self):
        ensemble = self.make_ensemble(2)
        solver = SolverSpec("sbm", {"n_replicas": 8})
        grid = run_step_grid(solver, ensemble, [500], 6, seed=5)
        report = evaluate_tte(grid, epsilon=0.0)
        for inst_id, model, ref in ensemble:
            runs = grid.cells[(inst_id, 500)]
            hits = sum(1 for e, _ in runs if optimality_gap(e, ref) <= 0.0)
            assert report.per_instance[inst_id][500]["p_success"] == hits / len(runs)

    def test_median_of_three(self):
        # synthetic: per-instance tte {1, 2, inf} must give median 2
        assert lower_median([1.0, 2.0, math.inf]) == 2.0

    def test_grid_minimum_never_exceeds_any_point(self):
        ensemble = self.make_ensemble(2)
        solver = SolverSpec("sbm", {"n_replicas": 8})
        report = tte_protocol(solver, ensemble, 0.0, [50, 200, 500], 4, seed=9)
        assert report.tte_opt <= min(report.medians.values()) + 1e-15
        assert report.n_steps_opt in {50, 200, 500}

    def test_instances_without_reference_are_skipped(self):
        m = gen_ring_instance(10, 1)
        solver = SolverSpec("sbm", {"n_replicas": 4})
        with pytest.warns(UserWarning, match="skipped"):
            report = tte_protocol(
                solver, [("a", m, None), ("b", m, -8.0)], 0.5, [50], 2, seed=1
            )
        assert list(report.per_instance) == ["b"]

    def test_all_skipped_raises(self):
        m = gen_ring_instance(10, 1)
        solver = SolverSpec("sbm", {})
        with pytest.warns(UserWarning):
            with pytest.raises(ValueError, match="no instances"):
                tte_protocol(solver, [("a", m, None)], 0.5, [50], 2, seed=1)

    def test_jobs_do_not_change_results(self):
        ensemble = self.make_ensemble(2, n=10)
        solver = SolverSpec("sbm", {"n_replicas": 4})
        g1 = run_step_grid(solver, ensemble, [100, 200], 3, seed=3, jobs=1)
        g2 = run_step_grid(solver, ensemble, [100, 200], 3, seed=3, jobs=4)
        for key, runs in g1.cells.items():
            energies1 = [e for e, _ in runs]
            energies2 = [e for e, _ in g2.cells[key]]
            assert energies1 == energies2


class TestAutotune:
    def test_single_repetition(self):
        m = gen_ring_instance(10, 7)
        run = autotune_sbqa(m, n_samples=16, n_repetitions=1, base=SbqaParams(n_steps=200), seed=2)
        assert run.solver == "sbqa"
        assert 0.5 <= run.params["beta"] <= 1.5
        assert 0.5 <= run.params["alpha"] <= 1.0
        assert run.params["r_replicas"] == 16

    def test_draws_stay_in_boxes(self):
        m = gen_ring_instance(8, 3)
        for seed in range(5):
            run = autotune_sbqa(m, 8, 2, SbqaParams(n_steps=100), seed)
            assert 0.5 <= run.params["beta"] <= 1.5
            assert 0.5 <= run.params["alpha"] <= 1.0

    def test_best_not_worse_than_first_repetition(self):
        m = gen_ring_instance(12, 9)
        best = autotune_sbqa(m, 64, 4, SbqaParams(n_steps=300), seed=5)
        # replaying repetition 0 alone cannot beat the best over repetitions
        single = autotune_sbqa(m, 16, 1, SbqaParams(n_steps=300), seed=5)
        assert best.best_energy <= single.best_energy

    def test_divisibility_required(self):
        m = gen_ring_instance(8, 1)
        with pytest.raises(ValueError, match="divide"):
            autotune_sbqa(m, 10, 3, SbqaParams(n_steps=50), seed=0)


class TestSensitivitySweep:
    def test_matrix_shape(self):
        m = gen_ring_instance(8, 11)
        gaps = sensitivity_sweep(
            m, beta_grid=[0.5, 1.0, 1.5], alpha_grid=[0.5, 1.0],
            runs=2, sets=1, replicas=4, seed=0,
            base=SbqaParams(n_steps=100),
        )
        assert gaps.shape == (2, 3)

    def test_single_cell_is_mean_gap(self):
        m = gen_ring_instance(8, 12)
        e0, _ = exact_ground_state(m)
        gaps = sensitivity_sweep(
            m, beta_grid=[1.0], alpha_grid=[1.0], runs=3, sets=1, replicas=4,
            seed=4, base=SbqaParams(n_steps=200), reference_energy=e0,
        )
        assert gaps.shape == (1, 1)
        assert gaps[0, 0] >= -1e-12


class TestFitPowerLaw:
    def test_exact_square_law(self):
        points = [(n, float(n) ** 2) for n in (10, 20, 40, 80)]
        fit = fit_power_law(points)
        assert abs(fit.gamma - 2.0) < 1e-12

    def test_constant_gives_zero_exponent(self):
        points = [(n, 7.0) for n in (10, 20, 40)]
        fit = fit_power_law(points)
        assert abs(fit.gamma) < 1e-12

    def test_noisy_recovery(self, rng):
        gamma = 1.5
        sizes = np.geomspace(10, 2000, 8)
        points = [
            (float(n), 0.3 * n**gamma * float(rng.uniform(0.95, 1.05))) for n in sizes
        ]
        fit = fit_power_law(points)
        assert 1.3 <= fit.gamma <= 1.7

    def test_requires_three_finite_points(self):
        with pytest.raises(ValueError, match="3 finite"):
            fit_power_law([(10, 1.0), (20, math.inf), (40, math.inf)])

    def test_infinite_points_excluded(self):
        points = [(10, 10.0), (20, 20.0), (40, 40.0), (80, math.inf)]
        fit = fit_power_law(points)
        assert fit.n_points == 3
        assert abs(fit.gamma - 1.0) < 1e-12


class TestCsvRoundTrip:
    def test_roundtrip(self, tmp_path):
        rows = [
            {
                "family": "ring", "size": "n12", "n_vars": 12, "solver": "sbm",
                "n_steps": 100, "instance_id": "ring_0", "run_id": 0, "seed": 42,
                "best_energy": -10.0, "reference_energy": -10.0, "gap": 0.0,
                "runtime_s": 0.01,
            }
        ]
        path = tmp_path / "r.csv"
        write_results_csv(path, rows, config_comment="config {} seed 42")
        back = read_results_csv(path)
        assert len(back) == 1
        assert back[0]["best_energy"] == -10.0
        assert back[0]["n_steps"] == 100
        assert back[0]["solver"] == "sbm"
