"""Two-body ground states by finite differences, as an independent check.

The relative motion of two particles of mass ``m`` is a one-dimensional
problem with reduced mass ``m / 2``. It is discretised with the
three-point Laplacian in a Dirichlet box and the lowest eigenvalue of
the resulting tridiagonal matrix is isolated by Sturm-sequence bisection.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .solver import PairPotential

MAX_ITER = 200


class Boundary(enum.Enum):
    FULL_LINE = "full"
    HALF_LINE_DIRICHLET = "half"


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Box ``[-L, L]`` (full line) or ``(0, L]`` with ``psi(0) = 0`` (half line)."""

    half_width: float
    points: int = 4001
    boundary: Boundary = Boundary.FULL_LINE

    def __post_init__(self):
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if self.points < 201 or self.points % 2 == 0:
            raise ValueError("points must be odd and at least 201")

    @classmethod
    def for_potential(cls, potential: PairPotential, points: int = 4001,
                      boundary: Boundary = Boundary.FULL_LINE, length: float | None = None) -> "GridSpec":
        length = length or potential.length_scale() or 1.0
        return cls(15.0 * length, points, boundary)

    @property
    def spacing(self) -> float:
        if self.boundary is Boundary.FULL_LINE:
            return 2.0 * self.half_width / (self.points + 1)
        return self.half_width / (self.points + 1)

    def nodes(self) -> np.ndarray:
        i = np.arange(1, self.points + 1, dtype=float)
        h = self.spacing
        if self.boundary is Boundary.FULL_LINE:
            return -self.half_width + i * h
        return i * h

    def refined(self) -> "GridSpec":
        return GridSpec(self.half_width, 2 * self.points - 1, self.boundary)


def _matrix(potential: PairPotential, m: float, grid: GridSpec):
    h = grid.spacing
    x = grid.nodes()
    # full-line nodes sit symmetrically; the pair potential depends on |x|
    with np.errstate(all="ignore"):
        v, _ = potential.evaluate(np.abs(x))
    v = np.asarray(v, dtype=float)
    if v.shape != x.shape:
        v = np.broadcast_to(v, x.shape).copy()
    bad = ~np.isfinite(v)
    if bad.any():
        raise OracleError(f"potential is not finite at x = {x[bad][0]:g}")
    c = 1.0 / (m * h * h)  # 1 / (2 mu h^2) with mu = m / 2
    diag = np.ascontiguousarray(2.0 * c + v)
    off = np.full(len(x) - 1, -c)
    return diag, off


def two_body_ground(potential: PairPotential, m: float, grid: GridSpec) -> float:
    """Lowest eigenvalue of the discretised relative-motion Hamiltonian."""
    if not m > 0:
        raise ValueError("mass must be positive")
    diag, off = _matrix(potential, m, grid)
    c = -off[0]
    hi = float(diag.min())
    lo = hi - 2.0 * c  # Gershgorin
    if _kernels.sturm_count(diag, off, hi) < 1:
        hi += 1e-12 * max(1.0, abs(hi))
    if _kernels.sturm_count(diag, off, lo) != 0 or _kernels.sturm_count(diag, off, hi) < 1:
        raise OracleError("could not bracket the lowest eigenvalue")
    value, iterations = _kernels.lowest_eigenvalue(diag, off, lo, hi, 4e-16, MAX_ITER)
    if iterations >= MAX_ITER:
        raise OracleError("eigenvalue bisection did not converge")
    return value


def _richardson(e_coarse, e_fine, h_coarse, h_fine):
    r2 = (h_coarse / h_fine) ** 2
    return e_fine + (e_fine - e_coarse) / (r2 - 1.0)


def refine(potential: PairPotential, m: float, grid: GridSpec) -> tuple[float, float]:
    """Richardson-extrapolated energy and an estimate of its error.

    Three nested grids (``points``, ``2 points - 1``, ``4 points - 3``)
    give two extrapolations; the finer one is returned and their
    difference is the error estimate.
    """
    grids = [grid, grid.refined(), grid.refined().refined()]
    energies = [two_body_ground(potential, m, g) for g in grids]
    h = [g.spacing for g in grids]
    r1 = _richardson(energies[0], energies[1], h[0], h[1])
    r2 = _richardson(energies[1], energies[2], h[1], h[2])
    return r2, abs(r2 - r1)
