"""Problem representations (Ising, QUBO, HUBO), energy evaluation and conversions.

Energy conventions used throughout the suite:

* Ising:  E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i + offset,  s_i in {-1,+1}
* QUBO:   E(x) = sum_{i<=j} Q_ij x_i x_j + offset,                  x_i in {0,1}
* HUBO:   E(s) = sum J_mn s_m s_n + sum K_lmn s_l s_m s_n           (no global sign)

Minimizing the Ising convention therefore *rewards* aligned spins on positive
couplings; the HUBO convention *penalizes* them, which is why ``hubo_to_ising``
negates the quadratic weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "IsingModel",
    "HuboModel",
    "QuboMatrix",
    "as_spin_config",
    "ising_energy",
    "ising_energies",
    "hubo_energy",
    "hubo_to_ising",
    "ising_to_qubo",
    "qubo_to_ising",
]

# Models up to this size keep a dense coupling matrix for force evaluation;
# larger ones use CSR.
DENSE_LIMIT = 2048


def as_spin_config(s: Sequence[int] | np.ndarray) -> np.ndarray:
    """Validate and return a spin vector with entries exactly +-1."""
    arr = np.asarray(s, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError("spin configuration must be one-dimensional")
    if not np.all(np.abs(arr) == 1.0):
        raise ValueError("spin entries must be exactly -1 or +1")
    return arr


def _canonical_couplings(
    n: int, couplings: Iterable[tuple[int, int, float]]
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows, cols, vals = [], [], []
    for i, j, w in couplings:
        i, j = int(i), int(j)
        if i == j:
            raise ValueError(f"self-coupling ({i},{i}) is not allowed")
        if i > j:
            i, j = j, i
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"coupling index ({i},{j}) outside [0,{n})")
        rows.append(i)
        cols.append(j)
        vals.append(float(w))
    rows_a = np.asarray(rows, dtype=np.int64)
    cols_a = np.asarray(cols, dtype=np.int64)
    vals_a = np.asarray(vals, dtype=np.float64)
    order = np.lexsort((cols_a, rows_a))
    rows_a, cols_a, vals_a = rows_a[order], cols_a[order], vals_a[order]
    if rows_a.size:
        dup = (rows_a[1:] == rows_a[:-1]) & (cols_a[1:] == cols_a[:-1])
        if np.any(dup):
            k = int(np.nonzero(dup)[0][0])
            raise ValueError(f"duplicate coupling ({rows_a[k]},{cols_a[k]})")
    return rows_a, cols_a, vals_a


@dataclass(frozen=True, eq=False)
class IsingModel:
    """Sparse Ising model with couplings J (i<j), fields h and a constant offset.

    Immutable after construction; safe to share across workers.  The coupling
    list is stored in canonical (i,j)-sorted order so that energies do not
    depend on the order couplings were supplied in.
    """

    n: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    fields: np.ndarray
    offset: float = 0.0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_couplings(
        cls,
        n: int,
        couplings: Iterable[tuple[int, int, float]] = (),
        fields: Sequence[float] | np.ndarray | None = None,
        offset: float = 0.0,
    ) -> "IsingModel":
        if n < 1:
            raise ValueError("model needs at least one variable")
        rows, cols, vals = _canonical_couplings(n, couplings)
        if fields is None:
            h = np.zeros(n, dtype=np.float64)
        else:
            h = np.asarray(fields, dtype=np.float64).copy()
            if h.shape != (n,):
                raise ValueError(f"fields must have length {n}")
        return cls(n=n, rows=rows, cols=cols, values=vals, fields=h, offset=float(offset))

    @property
    def num_couplings(self) -> int:
        return int(self.values.size)

    def couplings(self) -> list[tuple[int, int, float]]:
        """Coupling list as (i, j, J_ij) tuples with i<j, canonically ordered."""
        return [
            (int(i), int(j), float(w))
            for i, j, w in zip(self.rows, self.cols, self.values)
        ]

    def upper(self) -> sp.csr_matrix:
        """Upper-triangular coupling matrix (CSR), built once and cached."""
        if "upper" not in self._cache:
            m = sp.coo_matrix(
                (self.values, (self.rows, self.cols)), shape=(self.n, self.n)
            ).tocsr()
            m.sort_indices()
            self._cache["upper"] = m
        return self._cache["upper"]

    def symmetric_csr(self) -> sp.csr_matrix:
        """Symmetric coupling matrix in CSR form, built once and cached."""
        if "sym_csr" not in self._cache:
            u = self.upper()
            m = (u + u.T).tocsr()
            m.sort_indices()
            self._cache["sym_csr"] = m
        return self._cache["sym_csr"]

    def force_matrix(self) -> np.ndarray | sp.csr_matrix:
        """Symmetric coupling matrix used for local-field evaluation.

        Dense for n <= DENSE_LIMIT, CSR above.
        """
        if "force" not in self._cache:
            if self.n <= DENSE_LIMIT:
                self._cache["force"] = self.symmetric_csr().toarray()
            else:
                self._cache["force"] = self.symmetric_csr()
        return self._cache["force"]

    def coupling_rms(self) -> float:
        """Root-mean-square of the nonzero couplings (0.0 if there are none)."""
        if self.values.size == 0:
            return 0.0
        return float(np.sqrt(np.mean(self.values**2)))

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(self.rows, self.cols)]

    def adjacency(self) -> list[list[int]]:
        """Adjacency list of the interaction graph."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in zip(self.rows, self.cols):
            adj[int(i)].append(int(j))
            adj[int(j)].append(int(i))
        return adj


def ising_energy(model: IsingModel, s: Sequence[int] | np.ndarray) -> float:
    """Energy of one spin configuration under the suite-wide Ising convention."""
    spins = as_spin_config(s)
    if spins.shape != (model.n,):
        raise ValueError(f"expected {model.n} spins, got {spins.shape[0]}")
    u = model.upper()
    pair = float(np.sum(spins * (u @ spins)))
    lin = float(np.dot(model.fields, spins))
    return -pair - lin + model.offset


def ising_energies(model: IsingModel, spins: np.ndarray) -> np.ndarray:
    """Energies of a batch of configurations, one per column of ``spins`` (n, k).

    Uses the same contraction order as :func:`ising_energy` so per-column
    results agree with single-configuration evaluation.
    """
    if spins.shape[0] != model.n:
        raise ValueError(f"expected {model.n} rows, got {spins.shape[0]}")
    u = model.upper()
    pair = np.sum(spins * (u @ spins), axis=0)
    lin = model.fields @ spins
    return -pair - lin + model.offset


def _canonical_terms(
    n: int, terms: Iterable[tuple[tuple[int, ...], float]]
) -> list[tuple[tuple[int, ...], float]]:
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[tuple[int, ...], float]] = []
    for idx, w in terms:
        t = tuple(int(v) for v in idx)
        if len(t) not in (2, 3):
            raise ValueError(f"term degree must be 2 or 3, got {len(t)}")
        if any(a >= b for a, b in zip(t, t[1:])):
            raise ValueError(f"term indices must be strictly increasing: {t}")
        if not all(0 <= v < n for v in t):
            raise ValueError(f"term index out of range: {t}")
        if t in seen:
            raise ValueError(f"duplicate term {t}")
        seen.add(t)
        out.append((t, float(w)))
    out.sort(key=lambda tw: (len(tw[0]), tw[0]))
    return out


@dataclass(frozen=True)
class HuboModel:
    """Spin polynomial of degree <= 3: E(s) = sum_w J s s + sum_w K s s s."""

    n: int
    terms: tuple[tuple[tuple[int, ...], float], ...]

    @classmethod
    def from_terms(
        cls, n: int, terms: Iterable[tuple[tuple[int, ...], float]]
    ) -> "HuboModel":
        if n < 1:
            raise ValueError("model needs at least one variable")
        return cls(n=n, terms=tuple(_canonical_terms(n, terms)))

    def pairs(self) -> list[tuple[tuple[int, int], float]]:
        return [(t, w) for t, w in self.terms if len(t) == 2]  # type: ignore[misc]

    def triples(self) -> list[tuple[tuple[int, int, int], float]]:
        return [(t, w) for t, w in self.terms if len(t) == 3]  # type: ignore[misc]

    def max_degree(self) -> int:
        return max((len(t) for t, _ in self.terms), default=0)


def hubo_energy(model: HuboModel, s: Sequence[int] | np.ndarray) -> float:
    """Energy of a spin configuration: weighted sum of spin products."""
    spins = as_spin_config(s)
    if spins.shape != (model.n,):
        raise ValueError(f"expected {model.n} spins, got {spins.shape[0]}")
    total = 0.0
    for idx, w in model.terms:
        prod = 1.0
        for v in idx:
            prod *= spins[v]
        total += w * prod
    return total


def hubo_to_ising(model: HuboModel) -> IsingModel:
    """Map a degree-2 spin polynomial onto the Ising convention.

    Quadratic weights are negated so that minimizing the Ising energy
    minimizes the polynomial.  Raises for models with cubic terms; those must
    go through the quadratization in :mod:`sbqa.reduction` first.
    """
    if model.max_degree() > 2:
        raise ValueError("model has cubic terms; reduce it to quadratic first")
    couplings = [(t[0], t[1], -w) for t, w in model.pairs()]
    return IsingModel.from_couplings(model.n, couplings)


@dataclass(frozen=True, eq=False)
class QuboMatrix:
    """Sparse upper-triangular QUBO (diagonal included) over binary variables."""

    n: int
    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    offset: float = 0.0

    @classmethod
    def from_entries(
        cls,
        n: int,
        entries: Iterable[tuple[int, int, float]],
        offset: float = 0.0,
    ) -> "QuboMatrix":
        entries = list(entries)
        rows = np.fromiter((e[0] for e in entries), dtype=np.int64, count=len(entries))
        cols = np.fromiter((e[1] for e in entries), dtype=np.int64, count=len(entries))
        vals = np.fromiter((e[2] for e in entries), dtype=np.float64, count=len(entries))
        return cls.from_arrays(n, rows, cols, vals, offset=offset)

    @classmethod
    def from_arrays(
        cls,
        n: int,
        rows: np.ndarray,
        cols: np.ndarray,
        values: np.ndarray,
        offset: float = 0.0,
    ) -> "QuboMatrix":
        if n < 1:
            raise ValueError("QUBO needs at least one variable")
        rows_a = np.asarray(rows, dtype=np.int64).copy()
        cols_a = np.asarray(cols, dtype=np.int64).copy()
        vals_a = np.asarray(values, dtype=np.float64).copy()
        swap = rows_a > cols_a
        rows_a[swap], cols_a[swap] = cols_a[swap], rows_a[swap]
        if rows_a.size and not (
            (rows_a >= 0).all() and (cols_a < n).all()
        ):
            raise ValueError(f"QUBO index outside [0,{n})")
        order = np.lexsort((cols_a, rows_a))
        rows_a, cols_a, vals_a = rows_a[order], cols_a[order], vals_a[order]
        if rows_a.size:
            dup = (rows_a[1:] == rows_a[:-1]) & (cols_a[1:] == cols_a[:-1])
            if np.any(dup):
                k = int(np.nonzero(dup)[0][0])
                raise ValueError(f"duplicate QUBO entry ({rows_a[k]},{cols_a[k]})")
        return cls(n=n, rows=rows_a, cols=cols_a, values=vals_a, offset=float(offset))

    def entries(self) -> list[tuple[int, int, float]]:
        return [
            (int(i), int(j), float(w))
            for i, j, w in zip(self.rows, self.cols, self.values)
        ]

    def energy(self, x: Sequence[int] | np.ndarray) -> float:
        xv = np.asarray(x, dtype=np.float64)
        if xv.shape != (self.n,):
            raise ValueError(f"expected {self.n} binaries, got {xv.shape}")
        if not np.all((xv == 0.0) | (xv == 1.0)):
            raise ValueError("binary entries must be exactly 0 or 1")
        total = self.offset
        for i, j, w in zip(self.rows, self.cols, self.values):
            total += w * xv[i] * xv[j]
        return float(total)

    def energies(self, x: np.ndarray) -> np.ndarray:
        """Energies of a batch of binary configurations, one per row (k, n)."""
        if x.shape[1] != self.n:
            raise ValueError(f"expected {self.n} columns, got {x.shape[1]}")
        xv = np.asarray(x, dtype=np.float64)
        out = np.full(x.shape[0], self.offset, dtype=np.float64)
        for i, j, w in zip(self.rows, self.cols, self.values):
            out += w * xv[:, i] * xv[:, j]
        return out


def ising_to_qubo(model: IsingModel) -> QuboMatrix:
    """Exact re-encoding under s = 2x - 1; energies agree configuration-wise.

    Off-diagonal entries are -4 J_ij (power-of-two scaling, lossless); the
    diagonal absorbs the linear terms, Q_ii = 2 S_i - 2 h_i with S_i the sum
    of couplings incident to i.
    """
    n = model.n
    incident = np.zeros(n, dtype=np.float64)
    np.add.at(incident, model.rows, model.values)
    np.add.at(incident, model.cols, model.values)
    diag = 2.0 * incident - 2.0 * model.fields
    keep = np.nonzero(diag != 0.0)[0]
    rows = np.concatenate([model.rows, keep])
    cols = np.concatenate([model.cols, keep])
    vals = np.concatenate([-4.0 * model.values, diag[keep]])
    offset = model.offset - float(np.sum(model.values)) + float(np.sum(model.fields))
    return QuboMatrix.from_arrays(n, rows, cols, vals, offset=offset)


def qubo_to_ising(q: QuboMatrix) -> IsingModel:
    """Exact re-encoding under x = (s + 1)/2; energies agree configuration-wise."""
    n = q.n
    on_diag = q.rows == q.cols
    diag = np.zeros(n, dtype=np.float64)
    diag[q.rows[on_diag]] = q.values[on_diag]
    o_rows, o_cols, o_vals = q.rows[~on_diag], q.cols[~on_diag], q.values[~on_diag]
    offdiag_sum = np.zeros(n, dtype=np.float64)
    np.add.at(offdiag_sum, o_rows, o_vals)
    np.add.at(offdiag_sum, o_cols, o_vals)
    h = -offdiag_sum / 4.0 - diag / 2.0
    offset = q.offset + float(np.sum(o_vals)) / 4.0 + float(np.sum(diag)) / 2.0
    model = IsingModel(
        n=n,
        rows=o_rows.copy(),
        cols=o_cols.copy(),
        values=-o_vals / 4.0,
        fields=h,
        offset=float(offset),
    )
    return model
