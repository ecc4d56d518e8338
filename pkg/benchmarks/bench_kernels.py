#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-Python twin.

Times the hot numerical loops on representative workloads and prints
per-call timings plus speedups.  Both backends produce bitwise-identical
results (asserted here as well), so the only difference is speed.

Usage:
    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import time

from circbridge import _kernels_py as kernels_py

try:
    from circbridge import _kernels as kernels_c
except ImportError:
    kernels_c = None


CASES = [
    ("i0_series_sum(300)", lambda m: m.i0_series_sum(300.0), 2000),
    ("i1_series_sum(300)", lambda m: m.i1_series_sum(300.0), 2000),
    ("sigma2_series(299)", lambda m: m.sigma2_series(299.0), 2000),
    (
        "vm_scaled_mass(k=2048)",
        lambda m: m.vm_scaled_mass(2048.0, -math.pi, 0.02, 1e-13, 40),
        200,
    ),
    (
        "vm_scaled_mass(k=1e5)",
        lambda m: m.vm_scaled_mass(1e5, -0.045, 0.002, 1e-14, 40),
        200,
    ),
    ("wn_density_at(v=0.3)", lambda m: m.wn_density_at(0.1, 0.3, 8), 20000),
]


def time_case(fn, module, repeat):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for _ in range(repeat):
            fn(module)
        best = min(best, (time.perf_counter() - t0) / repeat)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=None, help="override per-case repeats")
    args = parser.parse_args()

    if kernels_c is None:
        print("compiled extension not built; only timing the pure-Python kernels")

    header = "%-26s %12s %12s %9s" % ("kernel", "python", "compiled", "speedup")
    print(header)
    print("-" * len(header))
    for name, fn, repeat in CASES:
        n = args.repeat or repeat
        t_py = time_case(fn, kernels_py, n)
        if kernels_c is not None:
            assert fn(kernels_c) == fn(kernels_py), "backend results diverged: %s" % name
            t_c = time_case(fn, kernels_c, n)
            print(
                "%-26s %10.2f us %10.2f us %8.1fx" % (name, t_py * 1e6, t_c * 1e6, t_py / t_c)
            )
        else:
            print("%-26s %10.2f us %12s %9s" % (name, t_py * 1e6, "-", "-"))


if __name__ == "__main__":
    main()
