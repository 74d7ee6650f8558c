"""Shared domain types and quantum-number bookkeeping."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence


class Statistics(enum.Enum):
    BOSON = "boson"
    FERMION = "fermion"

    @classmethod
    def parse(cls, text: str) -> "Statistics":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown statistics {text!r}; expected 'boson' or 'fermion'") from None


class BoundCharacter(enum.Enum):
    LOWER_BOUND = "LowerBound"
    UPPER_BOUND = "UpperBound"
    EXACT = "Exact"
    NO_GUARANTEE = "NoGuarantee"

    def __str__(self) -> str:
        return self.value


class EtError(Exception):
    """Base class for failures of the envelope equations."""


class NoRootError(EtError):
    """The stationarity residual never changes sign on the scan grid."""


class IrrelevantEnergyError(EtError):
    """The approximation is complex or non-negative for an attractive potential.

    ``energy`` holds the real (non-negative) value when one exists and
    ``None`` when no real solution exists.
    """

    def __init__(self, message: str, energy: float | None = None, solution: "EtSolution | None" = None):
        super().__init__(message)
        self.energy = energy
        self.solution = solution


@dataclass(frozen=True)
class ParticleSystem:
    n_particles: int
    statistics: Statistics = Statistics.BOSON

    def __post_init__(self):
        check_n(self.n_particles)

    @property
    def n_pairs(self) -> int:
        return pair_count(self.n_particles)

    def q_ground(self) -> float:
        return q_ground(self.n_particles, self.statistics)


@dataclass(frozen=True)
class EtSolution:
    """Solution of the envelope equations.

    ``residual`` is the absolute mismatch of the stationarity condition at
    ``x0``; ``n_roots_found`` counts every stationary point seen by the scan.
    """

    x0: float
    p0: float
    energy: float
    bound: BoundCharacter
    residual: float
    n_roots_found: int
    q: float
    n_particles: int


def check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValueError(f"need an integer particle count N >= 2, got {n!r}")
    return int(n)


def pair_count(n: int) -> int:
    """Number of particle pairs, N(N-1)/2."""
    n = check_n(n)
    return n * (n - 1) // 2


def q_from_occupations(occ: Sequence[int], n: int) -> float:
    """Global quantum number for an occupation list of the N-1 internal modes."""
    n = check_n(n)
    occ = list(occ)
    if len(occ) != n - 1:
        raise ValueError(f"expected {n - 1} occupation numbers for N={n}, got {len(occ)}")
    for k in occ:
        if int(k) != k or k < 0:
            raise ValueError(f"occupation numbers must be non-negative integers, got {k!r}")
    return float(sum(int(k) for k in occ)) + (n - 1) / 2


def q_ground(n: int, statistics: Statistics | str) -> float:
    """Ground-state value of Q for bosons or fermions."""
    n = check_n(n)
    if isinstance(statistics, str):
        statistics = Statistics.parse(statistics)
    if statistics is Statistics.BOSON:
        return (n - 1) / 2
    return (n * n - 1) / 2
