"""Pure-Python Sturm-sequence kernels for symmetric tridiagonal matrices."""
import math

TINY = 1e-300


def sturm_count(diag, off, shift):
    """Number of eigenvalues below ``shift`` (negative LDL^T pivots)."""
    n = len(diag)
    count = 0
    q = diag[0] - shift
    if q == 0.0:
        q = -TINY
    if q < 0.0:
        count += 1
    for i in range(1, n):
        e = off[i - 1]
        q = diag[i] - shift - e * e / q
        if q == 0.0:
            q = -TINY
        if q < 0.0:
            count += 1
    return count


def lowest_eigenvalue(diag, off, lo, hi, rtol, max_iter):
    """Bisect ``[lo, hi]`` down to the smallest eigenvalue.

    Requires ``sturm_count(lo) == 0`` and ``sturm_count(hi) >= 1``.
    Returns ``(eigenvalue, iterations)``; iterations equal to ``max_iter``
    signals non-convergence.
    """
    diag = list(map(float, diag))
    off = list(map(float, off))
    it = 0
    while it < max_iter:
        if hi - lo <= rtol * max(abs(lo), abs(hi)) + 1e-300:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sturm_count(diag, off, mid) >= 1:
            hi = mid
        else:
            lo = mid
        it += 1
    return 0.5 * (lo + hi), it
