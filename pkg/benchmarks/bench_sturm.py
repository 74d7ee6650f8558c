#!/usr/bin/env python3
"""Time the compiled and pure-Python Sturm kernels on oracle matrices.

    python benchmarks/bench_sturm.py [--points 2001 8001 32001] [--repeat 3]
"""
import argparse
import time

from etbounds import _sturm_py
from etbounds.oracle import Boundary, GridSpec, _matrix
from etbounds.solver import Calogero, Gaussian

try:
    from etbounds import _sturm_ext
except ImportError:
    _sturm_ext = None


def bench(kernel, diag, off, repeat):
    c = -off[0]
    hi = float(diag.min())
    lo = hi - 2.0 * c
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        value, _ = kernel.lowest_eigenvalue(diag, off, lo, hi, 4e-16, 200)
        best = min(best, time.perf_counter() - t0)
    return value, best


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--points", type=int, nargs="+", default=[2001, 8001, 32001])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cases = [
        ("gaussian", Gaussian(1.0, 1.0), Boundary.FULL_LINE),
        ("calogero", Calogero(1.0, 1.0, 1.0), Boundary.HALF_LINE_DIRICHLET),
    ]
    print(f"{'case':<10} {'points':>7} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}  agree")
    for name, pot, boundary in cases:
        for n in args.points:
            diag, off = _matrix(pot, 1.0, GridSpec(15.0, n, boundary))
            e_py, t_py = bench(_sturm_py, diag, off, args.repeat)
            if _sturm_ext is None:
                print(f"{name:<10} {n:>7} {t_py:>11.4f} {'n/a':>11} {'n/a':>8}")
                continue
            e_cy, t_cy = bench(_sturm_ext, diag, off, args.repeat)
            print(f"{name:<10} {n:>7} {t_py:>11.4f} {t_cy:>11.4f} {t_py / t_cy:>7.1f}x  {e_py == e_cy}")


if __name__ == "__main__":
    main()
