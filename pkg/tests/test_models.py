import math

import numpy as np
import pytest

from oracles import (
    dense_enum_min,
    oracle_hubo_min,
    oracle_ising_energy,
    oracle_ising_min,
    random_dyadic,
)
from sbqa.models import (
    HuboModel,
    IsingModel,
    QuboMatrix,
    hubo_energy,
    hubo_to_ising,
    ising_energies,
    ising_energy,
    ising_to_qubo,
    qubo_to_ising,
)


def random_model(rng, n, density=0.5, dyadic=False, with_fields=True):
    couplings = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                w = random_dyadic(rng, 1)[0] if dyadic else rng.uniform(-1, 1)
                couplings.append((i, j, float(w)))
    if with_fields:
        h = random_dyadic(rng, n) if dyadic else rng.uniform(-1, 1, n)
    else:
        h = None
    return IsingModel.from_couplings(n, couplings, fields=h)


class TestIsingModel:
    def test_ferromagnetic_pair(self):
        m = IsingModel.from_couplings(2, [(0, 1, 1.0)])
        assert ising_energy(m, [1, 1]) == -1.0
        assert ising_energy(m, [1, -1]) == 1.0

    def test_length_mismatch(self):
        m = IsingModel.from_couplings(2, [(0, 1, 1.0)])
        with pytest.raises(ValueError):
            ising_energy(m, [1, 1, 1])

    def test_rejects_self_coupling(self):
        with pytest.raises(ValueError, match="self-coupling"):
            IsingModel.from_couplings(3, [(1, 1, 0.5)])

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate"):
            IsingModel.from_couplings(3, [(0, 1, 0.5), (1, 0, 0.25)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            IsingModel.from_couplings(3, [(0, 3, 0.5)])

    def test_rejects_non_spin_entries(self):
        m = IsingModel.from_couplings(2, [(0, 1, 1.0)])
        with pytest.raises(ValueError, match="exactly -1 or \\+1"):
            ising_energy(m, [1, 0])

    def test_min_matches_enumeration_oracle(self, rng):
        m = random_model(rng, 10)
        produced = min(
            ising_energy(m, [(code >> i & 1) * 2 - 1 for i in range(10)])
            for code in range(2**10)
        )
        assert math.isclose(produced, oracle_ising_min(m), rel_tol=0, abs_tol=1e-12)

    def test_batch_matches_single(self, rng):
        m = random_model(rng, 8)
        spins = rng.integers(0, 2, (8, 5)) * 2.0 - 1.0
        batch = ising_energies(m, spins)
        for k in range(5):
            assert math.isclose(
                batch[k], ising_energy(m, spins[:, k]), rel_tol=0, abs_tol=1e-12
            )

    def test_energy_invariant_under_coupling_permutation(self, rng):
        n = 9
        couplings = [
            (i, j, float(rng.uniform(-1, 1))) for i in range(n) for j in range(i + 1, n)
        ]
        m1 = IsingModel.from_couplings(n, couplings)
        perm = list(couplings)
        rng.shuffle(perm)
        m2 = IsingModel.from_couplings(n, perm)
        for _ in range(20):
            s = rng.integers(0, 2, n) * 2.0 - 1.0
            assert ising_energy(m1, s) == ising_energy(m2, s)

    def test_z2_symmetry_without_fields(self, rng):
        m = random_model(rng, 10, with_fields=False)
        for _ in range(20):
            s = rng.integers(0, 2, 10) * 2.0 - 1.0
            assert ising_energy(m, s) == ising_energy(m, -s)

    def test_oracle_agreement_on_random_configs(self, rng):
        m = random_model(rng, 12)
        for _ in range(25):
            s = rng.integers(0, 2, 12) * 2.0 - 1.0
            assert math.isclose(
                ising_energy(m, s), oracle_ising_energy(m, s), rel_tol=0, abs_tol=1e-12
            )


class TestHuboModel:
    def test_single_cubic_term(self):
        m = HuboModel.from_terms(3, [((0, 1, 2), 1.0)])
        assert hubo_energy(m, [1, 1, 1]) == 1.0
        assert hubo_energy(m, [-1, 1, 1]) == -1.0

    def test_term_validation(self):
        with pytest.raises(ValueError, match="strictly increasing"):
            HuboModel.from_terms(3, [((1, 0), 1.0)])
        with pytest.raises(ValueError, match="duplicate"):
            HuboModel.from_terms(3, [((0, 1), 1.0), ((0, 1), 2.0)])
        with pytest.raises(ValueError, match="degree"):
            HuboModel.from_terms(4, [((0, 1, 2, 3), 1.0)])

    def test_min_matches_enumeration_oracle(self, rng):
        n = 12
        terms = []
        seen = set()
        while len(terms) < 14:
            deg = 2 if rng.random() < 0.5 else 3
            idx = tuple(sorted(rng.choice(n, deg, replace=False).tolist()))
            if idx in seen:
                continue
            seen.add(idx)
            terms.append((idx, float(rng.uniform(-1, 1))))
        m = HuboModel.from_terms(n, terms)
        produced = min(
            hubo_energy(m, [(code >> i & 1) * 2 - 1 for i in range(n)])
            for code in range(2**n)
        )
        oracle, _ = oracle_hubo_min(m)
        assert math.isclose(produced, oracle, rel_tol=0, abs_tol=1e-12)

    def test_quadratic_adapter_negates(self):
        m = HuboModel.from_terms(2, [((0, 1), 1.0)])
        ising = hubo_to_ising(m)
        # aligned spins are penalized by the polynomial, rewarded by -J s s
        assert hubo_energy(m, [1, 1]) == 1.0
        assert ising_energy(ising, [1, 1]) == 1.0
        assert ising_energy(ising, [1, -1]) == -1.0

    def test_adapter_rejects_cubic(self):
        m = HuboModel.from_terms(3, [((0, 1, 2), 1.0)])
        with pytest.raises(ValueError, match="cubic"):
            hubo_to_ising(m)


class TestConversions:
    def test_zero_qubo(self):
        q = QuboMatrix.from_entries(3, [])
        m = qubo_to_ising(q)
        assert m.num_couplings == 0
        assert np.all(m.fields == 0)
        assert m.offset == 0.0

    def test_single_variable_qubo(self):
        # E(x) = x: spin form must give h = -1/2, offset 1/2
        q = QuboMatrix.from_entries(1, [(0, 0, 1.0)])
        m = qubo_to_ising(q)
        assert m.fields[0] == -0.5
        assert m.offset == 0.5
        assert ising_energy(m, [-1]) == q.energy([0]) == 0.0
        assert ising_energy(m, [1]) == q.energy([1]) == 1.0

    def test_qubo_ising_energy_agreement(self, rng):
        n = 8
        entries = [(i, j, float(rng.uniform(-1, 1))) for i in range(n) for j in range(i, n)]
        q = QuboMatrix.from_entries(n, entries, offset=0.25)
        m = qubo_to_ising(q)
        for code in range(2**n):
            x = np.array([(code >> i) & 1 for i in range(n)], dtype=float)
            s = 2 * x - 1
            assert math.isclose(
                q.energy(x), ising_energy(m, s), rel_tol=0, abs_tol=1e-12
            )

    def test_ising_qubo_roundtrip_energies_exact(self, rng):
        # dyadic couplings make the diagonal reconstruction rounding-free,
        # so the round trip is exact to the bit
        m = random_model(rng, 8, density=0.7, dyadic=True)
        back = qubo_to_ising(ising_to_qubo(m))
        for code in range(2**8):
            s = np.array([(code >> i & 1) * 2 - 1 for i in range(8)], dtype=float)
            assert ising_energy(m, s) == ising_energy(back, s)

    def test_ising_to_qubo_energy_agreement(self, rng):
        m = random_model(rng, 8)
        q = ising_to_qubo(m)
        for code in range(0, 2**8, 7):
            x = np.array([(code >> i) & 1 for i in range(8)], dtype=float)
            s = 2 * x - 1
            assert math.isclose(
                q.energy(x), ising_energy(m, s), rel_tol=0, abs_tol=1e-10
            )

    def test_dense_oracle_cross_check(self, rng):
        m = random_model(rng, 10)
        assert math.isclose(
            dense_enum_min(m), oracle_ising_min(m), rel_tol=0, abs_tol=1e-10
        )
