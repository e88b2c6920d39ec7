"""Compare the compiled and pure-Python kernels on the workloads that matter.

    python bench/bench_kernels.py [--repeat 5]

Each row times the same call on both backends and prints the speed-up.
"""

import argparse
import sys
import time

from auxseq import kernels
from auxseq.ring import base_element


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def ring_pow_with(kern, order, n):
    b = list(base_element(order).coeffs)
    acc = list(b)
    for bit in bin(n)[3:]:
        acc = kern.sqr_reduce(acc, order)
        if bit == "1":
            acc = kern.mul_reduce(acc, b, order)
    return acc


def workloads():
    small = [3, 5, 7, 11, 13, 17, 19, 23]
    yield "mul_reduce N=8 small x20000", lambda k: [k.mul_reduce(small, small, 8) for _ in range(20000)]
    yield "sqr_reduce N=8 small x20000", lambda k: [k.sqr_reduce(small, 8) for _ in range(20000)]
    yield "term window N=8, n=0..2000", lambda k: [ring_pow_with(k, 8, n) for n in range(2001)]
    yield "ring_pow N=3, n=10^6", lambda k: ring_pow_with(k, 3, 10**6)
    yield "ring_pow N=32, n=10^5", lambda k: ring_pow_with(k, 32, 10**5)
    yield "advance_two_term N=3, 10^5 steps", lambda k: k.advance_two_term([0, 1, 2], 3, 10**5)
    yield "series_coeffs N=5, 20000 terms", lambda k: k.series_coeffs([0, 1, 1, -1, 0], [1, -1, 0, 0, 0, -1], 20000)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    if kernels.compiled_backend is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    print(f"{'workload':<36}{'python s':>12}{'cython s':>12}{'speed-up':>10}")
    for name, fn in workloads():
        py = best_of(lambda: fn(kernels.python_backend), args.repeat)
        cy = best_of(lambda: fn(kernels.compiled_backend), args.repeat)
        print(f"{name:<36}{py:>12.4f}{cy:>12.4f}{py / cy:>9.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
