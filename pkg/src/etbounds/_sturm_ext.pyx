# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Sturm-sequence kernels; same contract as ``_sturm_py``."""

cdef double TINY = 1e-300


cdef Py_ssize_t _count(const double[::1] diag, const double[::1] off, double shift) noexcept nogil:
    cdef Py_ssize_t n = diag.shape[0]
    cdef Py_ssize_t i
    cdef Py_ssize_t count = 0
    cdef double q = diag[0] - shift
    cdef double e
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


def sturm_count(const double[::1] diag, const double[::1] off, double shift):
    return _count(diag, off, shift)


def lowest_eigenvalue(const double[::1] diag, const double[::1] off, double lo, double hi,
                      double rtol, int max_iter):
    cdef int it = 0
    cdef double mid
    with nogil:
        while it < max_iter:
            if hi - lo <= rtol * max(abs(lo), abs(hi)) + 1e-300:
                break
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if _count(diag, off, mid) >= 1:
                hi = mid
            else:
                lo = mid
            it += 1
    return 0.5 * (lo + hi), it
