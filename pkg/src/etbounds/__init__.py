"""Envelope-theory ground-state bounds for one-dimensional N-body systems."""
from .core import (
    BoundCharacter,
    EtSolution,
    IrrelevantEnergyError,
    NoRootError,
    ParticleSystem,
    Statistics,
    pair_count,
    q_from_occupations,
    q_ground,
)
from .expr import Dual, Expression, eval_with_derivative, parse
from .models import (
    CalogeroParams,
    GaussianParams,
    calogero_delta,
    calogero_delta_limit,
    calogero_et,
    calogero_exact,
    gaussian_delta,
    gaussian_et,
)
from .oracle import Boundary, GridSpec, refine, two_body_ground
from .solver import (
    Calogero,
    CustomKinetic,
    CustomPotential,
    Gaussian,
    NonRelativistic,
    PowerLawSum,
    ProbeWindow,
    SolverConfig,
    classify_bound,
    residual,
    solve_et,
)
from .special import LambertDomainError, lambert_w0

__version__ = "0.1.0"
