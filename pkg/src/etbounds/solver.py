"""Envelope-theory engine for arbitrary kinetic laws and pair potentials.

The three envelope equations are reduced to a single condition on the
distance scale ``x0`` by setting ``p0 = Q / x0``. The remaining
stationarity residual

    N p0 T'(p0) - sqrt(C) x0 V'(x0 / sqrt(C)),   C = N(N-1)/2

is scanned on a logarithmic grid, every sign change is bisected, and
the energy ``N T(p0) + C V(x0 / sqrt(C))`` is evaluated at each root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import (
    BoundCharacter,
    EtSolution,
    IrrelevantEnergyError,
    NoRootError,
    check_n,
    pair_count,
)
from .expr import Expression

__all__ = [
    "KineticLaw", "NonRelativistic", "CustomKinetic",
    "PairPotential", "Calogero", "Gaussian", "PowerLawSum", "CustomPotential",
    "SolverConfig", "ProbeWindow",
    "residual", "energy_at", "solve_et", "classify_bound", "find_roots",
]


def _map_scalar(fn: Callable[[float], tuple[float, float]], x):
    """Apply a scalar (value, derivative) function elementwise."""
    if np.ndim(x) == 0:
        return fn(float(x))
    flat = np.asarray(x, dtype=float).ravel()
    out = np.array([fn(float(v)) for v in flat], dtype=float).reshape(-1, 2)
    shape = np.shape(x)
    return out[:, 0].reshape(shape), out[:, 1].reshape(shape)


# -- kinetic laws --------------------------------------------------------

class KineticLaw:
    """T(p) together with T'(p); ``evaluate`` accepts floats or arrays."""

    def evaluate(self, p):
        raise NotImplementedError

    def mass_scale(self) -> float:
        """Effective mass used only to pick default scan windows."""
        t1, _ = self.evaluate(1.0)
        return 1.0 / (2.0 * t1) if t1 > 0 and math.isfinite(t1) else 1.0

    @staticmethod
    def nonrelativistic(mass: float | None = None, inverse_mass: float | None = None) -> "NonRelativistic":
        if (mass is None) == (inverse_mass is None):
            raise ValueError("give exactly one of mass or inverse_mass")
        return NonRelativistic(1.0 / mass if inverse_mass is None else inverse_mass)


@dataclass(frozen=True)
class NonRelativistic(KineticLaw):
    """``T(p) = p^2 / (2m)``, stored through the inverse mass."""

    inverse_mass: float

    def __post_init__(self):
        if not self.inverse_mass > 0:
            raise ValueError("inverse mass must be positive")

    @property
    def mass(self) -> float:
        return 1.0 / self.inverse_mass

    def evaluate(self, p):
        return 0.5 * self.inverse_mass * p * p, self.inverse_mass * p

    def mass_scale(self) -> float:
        return self.mass


@dataclass(frozen=True)
class CustomKinetic(KineticLaw):
    expr: Expression

    @classmethod
    def from_text(cls, text: str, params=None) -> "CustomKinetic":
        return cls(Expression(text, "p", params))

    def evaluate(self, p):
        return _map_scalar(self.expr, p)


# -- pair potentials -----------------------------------------------------

class PairPotential:
    """V(x) together with V'(x); ``evaluate`` accepts floats or arrays."""

    def evaluate(self, x):
        raise NotImplementedError

    def length_scale(self) -> float | None:
        """Natural length of the potential, if it has one."""
        return None


@dataclass(frozen=True)
class Calogero(PairPotential):
    """``m w^2 x^2 / 4 + g / x^2``."""

    m: float
    omega: float
    g: float

    def __post_init__(self):
        if not (self.m > 0 and self.omega > 0 and self.g >= 0):
            raise ValueError("Calogero potential needs m > 0, omega > 0, g >= 0")

    def evaluate(self, x):
        k = 0.25 * self.m * self.omega ** 2
        return k * x * x + self.g / (x * x), 2.0 * k * x - 2.0 * self.g / (x * x * x)

    def length_scale(self) -> float:
        return 1.0 / math.sqrt(self.m * self.omega)


@dataclass(frozen=True)
class Gaussian(PairPotential):
    """``-v_g exp(-x^2 / a^2)``."""

    v_g: float
    a: float

    def __post_init__(self):
        if not (self.v_g > 0 and self.a > 0):
            raise ValueError("Gaussian potential needs v_g > 0 and a > 0")

    def evaluate(self, x):
        e = np.exp(-(x / self.a) ** 2)
        return -self.v_g * e, 2.0 * self.v_g * x / self.a ** 2 * e

    def length_scale(self) -> float:
        return self.a


@dataclass(frozen=True)
class PowerLawSum(PairPotential):
    """``sum(c * x**e for c, e in terms)``."""

    terms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((float(c), float(e)) for c, e in self.terms))
        if not self.terms:
            raise ValueError("power-law sum needs at least one term")

    def evaluate(self, x):
        v = 0.0
        dv = 0.0
        for c, e in self.terms:
            v = v + c * x ** e
            if e != 0.0:
                dv = dv + c * e * x ** (e - 1.0)
        return v + 0.0 * x, dv + 0.0 * x


@dataclass(frozen=True)
class CustomPotential(PairPotential):
    expr: Expression

    @classmethod
    def from_text(cls, text: str, params=None) -> "CustomPotential":
        return cls(Expression(text, "x", params))

    def evaluate(self, x):
        return _map_scalar(self.expr, x)


# -- configuration -------------------------------------------------------

@dataclass(frozen=True)
class SolverConfig:
    """Root-search settings.

    ``x0_scan_min``/``x0_scan_max`` left as ``None`` span twelve decades
    around ``sqrt(C) * L``, where ``L`` is the potential's natural length.
    ``residual_tol`` is relative to ``|lhs| + |rhs|`` and rejects brackets
    that straddle a pole rather than a root.
    """

    x0_scan_min: float | None = None
    x0_scan_max: float | None = None
    scan_points: int = 961
    root_tol: float = 1e-12
    max_bisection_steps: int = 200
    residual_tol: float = 1e-8

    def __post_init__(self):
        if self.scan_points < 64:
            raise ValueError("scan_points must be >= 64")
        lo, hi = self.x0_scan_min, self.x0_scan_max
        if lo is not None and not lo > 0:
            raise ValueError("x0_scan_min must be positive")
        if lo is not None and hi is not None and not lo < hi:
            raise ValueError("x0_scan_min must be below x0_scan_max")


@dataclass(frozen=True)
class ProbeWindow:
    """Abscissae on which envelope tangency is checked."""

    x_min: float
    x_max: float
    p_min: float
    p_max: float
    per_decade: int = 64

    def __post_init__(self):
        if not (0 < self.x_min < self.x_max and 0 < self.p_min < self.p_max):
            raise ValueError("probe window must be strictly positive and increasing")

    @classmethod
    def around(cls, length: float, decades: float = 3.0) -> "ProbeWindow":
        f = 10.0 ** decades
        return cls(length / f, length * f, 1.0 / (length * f), f / length)

    def s_grid(self, lo: float, hi: float) -> np.ndarray:
        s_lo, s_hi = lo * lo, hi * hi
        n = int(math.ceil(self.per_decade * math.log10(s_hi / s_lo))) + 1
        return np.geomspace(s_lo, s_hi, max(n, 3))


def characteristic_length(kinetic: KineticLaw, potential: PairPotential, q: float) -> float:
    length = potential.length_scale()
    if length is not None:
        return length
    v1, _ = potential.evaluate(1.0)
    m = kinetic.mass_scale()
    if v1 == 0.0 or not math.isfinite(v1):
        return 1.0
    return q / math.sqrt(2.0 * m * abs(v1))


# -- envelope equations --------------------------------------------------

def _sides(kinetic, potential, n, q, x0):
    c = pair_count(n)
    sc = math.sqrt(c)
    p0 = q / x0
    _, dt = kinetic.evaluate(p0)
    _, dv = potential.evaluate(x0 / sc)
    return n * p0 * dt, sc * x0 * dv


def residual(kinetic: KineticLaw, potential: PairPotential, n: int, q: float, x0):
    """Stationarity mismatch with ``p0 = q / x0``; vectorised over ``x0``."""
    n = check_n(n)
    if np.any(np.asarray(x0) <= 0):
        raise ValueError("x0 must be positive")
    lhs, rhs = _sides(kinetic, potential, n, q, x0)
    return lhs - rhs


def energy_at(kinetic: KineticLaw, potential: PairPotential, n: int, q: float, x0):
    c = pair_count(n)
    t, _ = kinetic.evaluate(q / x0)
    v, _ = potential.evaluate(x0 / math.sqrt(c))
    return n * t + c * v


def _bisect_log(f, lo, hi, flo, config):
    for _ in range(config.max_bisection_steps):
        if hi / lo - 1.0 <= config.root_tol:
            break
        mid = math.sqrt(lo * hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return math.sqrt(lo * hi)


def find_roots(kinetic, potential, n, q, lo, hi, config: SolverConfig) -> list[float]:
    """All roots of the residual bracketed on a log grid in ``[lo, hi]``."""
    grid = np.geomspace(lo, hi, config.scan_points)
    with np.errstate(all="ignore"):
        res = np.asarray(residual(kinetic, potential, n, q, grid), dtype=float)

    def f(x):
        with np.errstate(all="ignore"):
            return float(residual(kinetic, potential, n, q, x))

    roots = []
    for i in range(len(grid) - 1):
        r0, r1 = res[i], res[i + 1]
        if not (math.isfinite(r0) and math.isfinite(r1)):
            continue
        if r0 == 0.0:
            roots.append(float(grid[i]))
            continue
        if r0 * r1 < 0.0:
            roots.append(_bisect_log(f, float(grid[i]), float(grid[i + 1]), r0, config))
    if res[-1] == 0.0:
        roots.append(float(grid[-1]))

    accepted = []
    for x in roots:
        with np.errstate(all="ignore"):
            lhs, rhs = _sides(kinetic, potential, n, q, x)
        scale = abs(lhs) + abs(rhs)
        if math.isfinite(scale) and abs(lhs - rhs) <= config.residual_tol * scale:
            accepted.append(x)
    return accepted


def _shape(values: np.ndarray, s: np.ndarray) -> str:
    """Curvature class of samples ``values`` taken at increasing ``s``."""
    f0, f1, f2 = values[:-2], values[1:-1], values[2:]
    s0, s1, s2 = s[:-2], s[1:-1], s[2:]
    chord = (f0 * (s2 - s1) + f2 * (s1 - s0)) / (s2 - s0)
    dev = f1 - chord
    scale = np.maximum(np.maximum(np.abs(f0), np.abs(f1)), np.abs(f2))
    tol = 1e-10 * np.maximum(scale, 1e-14 * np.max(np.abs(values)))
    concave = bool(np.any(dev > tol))
    convex = bool(np.any(dev < -tol))
    if concave and convex:
        return "mixed"
    if concave:
        return "concave"
    if convex:
        return "convex"
    return "affine"


def classify_bound(kinetic: KineticLaw, potential: PairPotential, probe: ProbeWindow | None = None) -> BoundCharacter:
    """Decide which way the envelope inequalities go.

    Both T and V are viewed as functions of the squared argument. A tangent
    quadratic lies above a function that is concave in the squared argument
    and below one that is convex, so concave/affine pairs give an upper
    bound and convex/affine pairs a lower bound.
    """
    if probe is None:
        probe = ProbeWindow.around(characteristic_length(kinetic, potential, 1.0))
    sx = probe.s_grid(probe.x_min, probe.x_max)
    sp = probe.s_grid(probe.p_min, probe.p_max)
    with np.errstate(over="ignore", under="ignore"):
        v, _ = potential.evaluate(np.sqrt(sx))
        t, _ = kinetic.evaluate(np.sqrt(sp))
    shapes = {_shape(np.asarray(v, dtype=float), sx), _shape(np.asarray(t, dtype=float), sp)}
    if "mixed" in shapes:
        return BoundCharacter.NO_GUARANTEE
    shapes.discard("affine")
    if not shapes:
        return BoundCharacter.EXACT
    if shapes == {"concave"}:
        return BoundCharacter.UPPER_BOUND
    if shapes == {"convex"}:
        return BoundCharacter.LOWER_BOUND
    return BoundCharacter.NO_GUARANTEE


def is_attractive(potential: PairPotential, probe: ProbeWindow) -> bool:
    """True when V(x) <= 0 at every probed abscissa."""
    with np.errstate(over="ignore", under="ignore"):
        v, _ = potential.evaluate(np.sqrt(probe.s_grid(probe.x_min, probe.x_max)))
    return bool(np.all(np.asarray(v) <= 0.0))


def select_root(energies: Sequence[float], bound: BoundCharacter) -> int:
    """Index of the reported root: highest energy for lower bounds, lowest otherwise."""
    pick = max if bound is BoundCharacter.LOWER_BOUND else min
    return pick(range(len(energies)), key=lambda i: energies[i])


def solve_et(
    kinetic: KineticLaw,
    potential: PairPotential,
    n: int,
    q: float,
    config: SolverConfig | None = None,
    probe: ProbeWindow | None = None,
) -> EtSolution:
    """Solve the envelope equations for ``n`` particles at quantum number ``q``.

    Raises
    ------
    NoRootError
        No sign change of the residual inside the scan window.
    IrrelevantEnergyError
        The potential is attractive everywhere and there is either no real
        solution or the energy is non-negative.
    """
    n = check_n(n)
    if not q > 0:
        raise ValueError("quantum number Q must be positive")
    config = config or SolverConfig()
    length = characteristic_length(kinetic, potential, q)
    probe = probe or ProbeWindow.around(length)
    sc = math.sqrt(pair_count(n))
    lo = config.x0_scan_min if config.x0_scan_min is not None else 1e-6 * sc * length
    hi = config.x0_scan_max if config.x0_scan_max is not None else 1e6 * sc * length
    if not lo < hi:
        raise ValueError("empty scan window")

    attractive = is_attractive(potential, probe)
    roots = find_roots(kinetic, potential, n, q, lo, hi, config)
    if not roots:
        if attractive:
            raise IrrelevantEnergyError("no real solution of the envelope equations")
        raise NoRootError(f"residual keeps its sign on x0 in [{lo:g}, {hi:g}]; enlarge the scan window")

    energies = [float(energy_at(kinetic, potential, n, q, x)) for x in roots]
    bound = classify_bound(kinetic, potential, probe)
    i = select_root(energies, bound)
    x0 = roots[i]
    sol = EtSolution(
        x0=x0,
        p0=q / x0,
        energy=energies[i],
        bound=bound,
        residual=abs(float(residual(kinetic, potential, n, q, x0))),
        n_roots_found=len(roots),
        q=q,
        n_particles=n,
    )
    if attractive and sol.energy >= 0.0:
        raise IrrelevantEnergyError(
            f"non-negative energy {sol.energy:g} for an attractive potential", sol.energy, sol
        )
    return sol
