"""Solver implementations sharing the SolverRun interface and seeded determinism."""

from .coloring import color_classes, dsatur_coloring, validate_coloring
from .dtsqa import DtsqaParams, dtsqa_solve
from .engine import (
    NumericalError,
    SbmParams,
    SbqaParams,
    SolverRun,
    anneal_ramp,
    derive_seed,
    gamma_x,
    j_perp,
    replica_coupling,
    replica_rng,
    sbm_solve,
    sbm_trajectory,
    sbqa_solve,
    sbqa_trajectory,
    threshold_f,
)
from .sa import SaParams, geometric_ladder, sa_solve

__all__ = [
    "NumericalError",
    "SbmParams",
    "SbqaParams",
    "SaParams",
    "DtsqaParams",
    "SolverRun",
    "anneal_ramp",
    "color_classes",
    "derive_seed",
    "dsatur_coloring",
    "dtsqa_solve",
    "gamma_x",
    "geometric_ladder",
    "j_perp",
    "replica_coupling",
    "replica_rng",
    "sa_solve",
    "sbm_solve",
    "sbm_trajectory",
    "sbqa_solve",
    "sbqa_trajectory",
    "threshold_f",
    "validate_coloring",
]
