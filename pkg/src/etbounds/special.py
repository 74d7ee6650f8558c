"""Principal real branch of the Lambert W function."""
from __future__ import annotations

import math

INV_E = math.exp(-1.0)
BRANCH_POINT = -INV_E
# rounding slack absorbed at the branch point
CLAMP = 1e-15
MAX_ITER = 50


class LambertDomainError(ValueError):
    """Argument below the branch point -1/e; no real W0 exists."""

    def __init__(self, z: float):
        super().__init__(f"W0 is undefined for z = {z!r} < -1/e")
        self.z = z


def _seed(z: float) -> float:
    if z < -0.25:
        # series about the branch point in p = sqrt(2(e z + 1))
        p = math.sqrt(max(2.0 * (math.e * z + 1.0), 0.0))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    if z <= 3.0:
        return math.log1p(z) if z > -0.25 else z
    l1 = math.log(z)
    l2 = math.log(l1)
    return l1 - l2 + l2 / l1


def lambert_w0(z: float) -> float:
    """Solve ``w * exp(w) = z`` for ``w >= -1``.

    Halley iteration from a regime-dependent seed. Arguments within
    ``1e-15`` below ``-1/e`` are treated as the branch point itself.

    Raises
    ------
    LambertDomainError
        If ``z < -1/e`` beyond the clamp tolerance, or ``z`` is NaN.
    """
    z = float(z)
    if math.isnan(z):
        raise LambertDomainError(z)
    if z < BRANCH_POINT:
        if z >= BRANCH_POINT - CLAMP:
            return -1.0
        raise LambertDomainError(z)
    if z == 0.0:
        return 0.0
    if z == BRANCH_POINT:
        return -1.0
    if math.isinf(z):
        return math.inf

    w = _seed(z)
    for _ in range(MAX_ITER):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1) if wp1 != 0.0 else 0.0
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if w < -1.0:
            w = -1.0
        if abs(step) < 1e-16 * max(1.0, abs(w)):
            break
    return w
