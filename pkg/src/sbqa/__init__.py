"""Quantum-inspired Ising/QUBO/HUBO solver suite and benchmarking harness."""

from .models import (
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
from .serialization import LoadedInstance, ParseError, load_instance, save_instance
from .solvers import (
    DtsqaParams,
    NumericalError,
    SaParams,
    SbmParams,
    SbqaParams,
    SolverRun,
    dsatur_coloring,
    dtsqa_solve,
    j_perp,
    sa_solve,
    sbm_solve,
    sbqa_solve,
    threshold_f,
)
from .reduction import (
    Reduction,
    de_reduce,
    penalty_line_search,
    reduce_hubo,
    sufficient_penalty,
)
from .bench import (
    GapRecord,
    ScalingFit,
    SolverSpec,
    TteReport,
    autotune_sbqa,
    fit_power_law,
    optimality_gap,
    sensitivity_sweep,
    time_to_epsilon,
    tte_protocol,
)

__version__ = "0.1.0"
