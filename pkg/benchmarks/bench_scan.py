"""Time the slope scan with both backends and check they return the same pairs.

    python3 benchmarks/bench_scan.py [--sizes 6 10 16] [--repeat 3]
"""
import argparse
import time
from fractions import Fraction
from math import lcm

from tropabel import _kernels_py, kernels
from tropabel.enumerate import _q_matrix
from tropabel.torus import CurveClass, TropicalTorus


def instance():
    T = TropicalTorus(((Fraction(23, 3), Fraction(5, 7)), (Fraction(5, 7), Fraction(31, 5))))
    C = CurveClass(((2, 0), (0, 2)))
    Q = _q_matrix(T, C)
    q = (Q[0][0], Q[0][1], Q[1][1])
    den = lcm(*(x.denominator for x in q))
    return C.flat(), tuple(int(x * den) for x in q)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 10, 16])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    c, q = instance()
    print(f"compiled backend available: {kernels.BACKEND == 'cython'}")
    print(f"{'K':>4} {'python s':>10} {'cython s':>10} {'speedup':>8}  same")
    for K in args.sizes:
        W = 4
        t_py, out_py = best_of(lambda: _kernels_py.scan_slope_pairs(*c, *q, K, W), args.repeat)
        if kernels.BACKEND == "cython":
            t_cy, out_cy = best_of(lambda: kernels.scan_slope_pairs(c, q, K, W, "cython"), args.repeat)
            same = sorted(out_cy[0]) == sorted(out_py[0]) and out_cy[1] == out_py[1]
            print(f"{K:>4} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>8.1f}  {same}")
        else:
            print(f"{K:>4} {t_py:>10.4f} {'-':>10} {'-':>8}  -")


if __name__ == "__main__":
    main()
