"""Coupling-weight samplers for instance generation."""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SIDON28_VALUES",
    "Uniform",
    "Normal",
    "Cauchy",
    "SymPareto",
    "Sidon28",
    "DiscreteSet",
    "parse_distribution",
]

SIDON28_VALUES = (
    -1.0, -19.0 / 28.0, -13.0 / 28.0, -8.0 / 28.0,
    8.0 / 28.0, 13.0 / 28.0, 19.0 / 28.0, 1.0,
)


@dataclass(frozen=True)
class Uniform:
    lo: float = -1.0
    hi: float = 1.0

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.uniform(self.lo, self.hi, size)

    def __str__(self) -> str:
        return f"uniform({self.lo},{self.hi})"


@dataclass(frozen=True)
class Normal:
    mu: float = 0.0
    sigma: float = 1.0

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.normal(self.mu, self.sigma, size)

    def __str__(self) -> str:
        return f"normal({self.mu},{self.sigma})"


@dataclass(frozen=True)
class Cauchy:
    x0: float = 0.0
    gamma: float = 1.0

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return self.x0 + self.gamma * rng.standard_cauchy(size)

    def __str__(self) -> str:
        return f"cauchy({self.x0},{self.gamma})"


@dataclass(frozen=True)
class SymPareto:
    """Classical Pareto magnitude (support [1, inf)) with a fair random sign."""

    shape: float = 2.0

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        sign = rng.integers(0, 2, size) * 2.0 - 1.0
        return sign * (1.0 + rng.pareto(self.shape, size))

    def __str__(self) -> str:
        return f"sym_pareto({self.shape})"


@dataclass(frozen=True)
class Sidon28:
    """Uniform draw from {+-8/28, +-13/28, +-19/28, +-1}."""

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.choice(np.asarray(SIDON28_VALUES), size)

    def __str__(self) -> str:
        return "sidon28"


@dataclass(frozen=True)
class DiscreteSet:
    values: tuple[float, ...]

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        return rng.choice(np.asarray(self.values, dtype=np.float64), size)

    def __str__(self) -> str:
        return "discrete(" + ",".join(repr(v) for v in self.values) + ")"


_DIST_RE = re.compile(r"^\s*([a-z_0-9]+)\s*(?:\(([^)]*)\))?\s*$")


def parse_distribution(spec: str):
    """Parse 'normal(0,1)', 'uniform(-1,1)', 'cauchy(0,1)', 'sym_pareto(2)',
    'sidon28', 'pm1' or 'discrete(v1,v2,...)'."""
    m = _DIST_RE.match(spec.lower())
    if not m:
        raise ValueError(f"cannot parse distribution {spec!r}")
    name, argstr = m.group(1), m.group(2)
    args = [float(a) for a in argstr.split(",")] if argstr else []
    if name == "uniform":
        return Uniform(*args) if args else Uniform()
    if name == "normal":
        return Normal(*args) if args else Normal()
    if name == "cauchy":
        return Cauchy(*args) if args else Cauchy()
    if name == "sym_pareto":
        return SymPareto(*args) if args else SymPareto()
    if name == "sidon28":
        return Sidon28()
    if name == "pm1":
        return DiscreteSet((-1.0, 1.0))
    if name == "discrete":
        if not args:
            raise ValueError("discrete(...) needs at least one value")
        return DiscreteSet(tuple(args))
    raise ValueError(f"unknown distribution {name!r}")
