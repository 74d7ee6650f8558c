"""Closed-form energies for the Calogero and Gaussian benchmarks.

Units are hbar = 1 throughout. The Gaussian helpers also take the
(a.u., Kelvin) convention in which the inverse mass is quoted directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import IrrelevantEnergyError, check_n, pair_count, q_ground, Statistics
from .special import BRANCH_POINT, CLAMP, lambert_w0
from . import solver


@dataclass(frozen=True)
class CalogeroParams:
    m: float
    omega: float
    g: float

    def __post_init__(self):
        if not (self.m > 0 and self.omega > 0 and self.g >= 0):
            raise ValueError("Calogero parameters need m > 0, omega > 0, g >= 0")

    @classmethod
    def from_g_prime(cls, g_prime: float, m: float = 1.0, omega: float = 1.0) -> "CalogeroParams":
        return cls(m, omega, g_prime / m)

    @property
    def g_prime(self) -> float:
        return self.m * self.g

    def potential(self) -> solver.Calogero:
        return solver.Calogero(self.m, self.omega, self.g)

    def kinetic(self) -> solver.NonRelativistic:
        return solver.NonRelativistic(1.0 / self.m)


@dataclass(frozen=True)
class GaussianParams:
    m: float
    v_g: float
    a: float

    def __post_init__(self):
        if not (self.m > 0 and self.v_g > 0 and self.a > 0):
            raise ValueError("Gaussian parameters need m > 0, v_g > 0, a > 0")

    @classmethod
    def from_v0(cls, inv_mass: float, v0: float, a: float) -> "GaussianParams":
        """Depth from the integrated strength, ``v_g = v0 / (sqrt(pi) a)``."""
        if not (inv_mass > 0 and v0 > 0 and a > 0):
            raise ValueError("need inverse mass > 0, V0 > 0, a > 0")
        return cls(1.0 / inv_mass, v0 / (math.sqrt(math.pi) * a), a)

    def potential(self) -> solver.Gaussian:
        return solver.Gaussian(self.v_g, self.a)

    def kinetic(self) -> solver.NonRelativistic:
        return solver.NonRelativistic(1.0 / self.m)


def _calogero_prefactor(p: CalogeroParams, n: int) -> float:
    return p.omega * math.sqrt(n / 2.0) * (n - 1) / 2.0


def calogero_exact(p: CalogeroParams, n: int) -> float:
    """Exact fermionic ground-state energy."""
    n = check_n(n)
    root = math.sqrt(1.0 + 4.0 * p.g_prime)
    return _calogero_prefactor(p, n) * (n + 1 + n * (root - 1.0) / 2.0)


def calogero_et(p: CalogeroParams, n: int) -> float:
    """Envelope lower bound on the fermionic ground state."""
    n = check_n(n)
    return _calogero_prefactor(p, n) * math.sqrt((n + 1) ** 2 + 2.0 * n * p.g_prime)


def calogero_delta(p: CalogeroParams, n: int) -> float:
    exact = calogero_exact(p, n)
    return (exact - calogero_et(p, n)) / exact


def calogero_delta_limit(g_prime: float) -> float:
    """Large-N saturation value of the Calogero relative error."""
    if g_prime < 0:
        raise ValueError("g' must be non-negative")
    root = math.sqrt(1.0 + 4.0 * g_prime)
    return (root - 1.0) / (root + 1.0)


@dataclass(frozen=True)
class GaussianEt:
    y: float
    w0: float | None
    energy: float | None

    @property
    def relevant(self) -> bool:
        return self.energy is not None and self.energy < 0.0


def gaussian_y(p: GaussianParams, n: int, q: float | None = None) -> float:
    """Lambert argument; reduces to ``-1/(2a sqrt(2 m v_g N))`` for the bosonic ground state."""
    n = check_n(n)
    c = pair_count(n)
    q = q_ground(n, Statistics.BOSON) if q is None else q
    return -q * math.sqrt(n) / (2.0 * p.a * c * math.sqrt(2.0 * p.m * p.v_g))


def gaussian_et_terms(p: GaussianParams, n: int, q: float | None = None) -> GaussianEt:
    """Lambert argument, W0 value and energy without relevance filtering.

    ``w0`` and ``energy`` are ``None`` when the argument lies below -1/e.
    """
    y = gaussian_y(p, n, q)
    if y < BRANCH_POINT - CLAMP:
        return GaussianEt(y, None, None)
    w = lambert_w0(y)
    c = pair_count(n)
    energy = -c * p.v_g * y * y * (1.0 + 2.0 * w) / (w * w)
    return GaussianEt(y, w, energy)


def gaussian_et(p: GaussianParams, n: int, q: float | None = None) -> float:
    """Envelope upper bound for N bosons in the Gaussian well.

    ``q`` defaults to the bosonic ground state; the bound is only
    guaranteed there.

    Raises
    ------
    IrrelevantEnergyError
        If no real solution exists or the energy is non-negative.
    """
    terms = gaussian_et_terms(p, n, q)
    if terms.energy is None:
        raise IrrelevantEnergyError(f"Lambert argument Y = {terms.y:.6g} < -1/e: complex energy")
    if terms.energy >= 0.0:
        raise IrrelevantEnergyError(f"non-negative energy {terms.energy:.6g}", terms.energy)
    return terms.energy


def gaussian_delta(e_lm: float, e_et: float) -> float:
    """Relative error of the envelope value against a reference energy."""
    if not (e_lm < 0 and math.isfinite(e_lm)):
        raise ValueError(f"reference energy must be negative and finite, got {e_lm!r}")
    return (e_lm - e_et) / e_lm
