#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Times the two hot paths (cyclic Jacobi eigendecomposition and the
s-convexity grid scan) on both backends and prints a table with the
speedup.  Usage:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 16,32,64 --repeat 5 --grid 121
"""
import argparse
import time

import numpy as np

from kaudit.backend import available_backends


def time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(backends, sizes, repeat):
    rng = np.random.default_rng(0)
    print(f"\n{'jacobi_eigh':<14} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for n in sizes:
        a = rng.standard_normal((n, n))
        a = (a + a.T) / 2
        times = {
            name: time_call(lambda mod=mod: mod.jacobi_eigh(a), repeat)
            for name, mod in backends.items()
        }
        speed = times["pure"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"  n = {n:<8} {times['pure'] * 1e3:>10.2f}ms {times.get('compiled', float('nan')) * 1e3:>10.2f}ms {speed:>8.1f}x")


def bench_sconvex(backends, grids, repeat):
    print(f"\n{'sconvex_scan':<14} {'pure':>12} {'compiled':>12} {'speedup':>9}")
    for g in grids:
        xs = np.linspace(1.0, 4.0, g)
        fx = xs**0.7
        lam = np.linspace(0.0, 1.0, g)
        args = (xs, fx, lam, lam**0.7, (1 - lam) ** 0.7, 0, 0.7)
        times = {
            name: time_call(lambda mod=mod: mod.sconvex_scan(*args), repeat)
            for name, mod in backends.items()
        }
        speed = times["pure"] / times["compiled"] if "compiled" in times else float("nan")
        print(f"  grid {g:<7} {times['pure'] * 1e3:>10.2f}ms {times.get('compiled', float('nan')) * 1e3:>10.2f}ms {speed:>8.1f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="16,32,64,96", help="comma-separated Jacobi matrix sizes")
    ap.add_argument("--grid", default="61,121,201", help="comma-separated scan grid sizes")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    print("available backends:", ", ".join(backends))
    if "compiled" not in backends:
        print("compiled extension not built; timing the fallback only")
    bench_jacobi(backends, [int(s) for s in args.sizes.split(",")], args.repeat)
    bench_sconvex(backends, [int(s) for s in args.grid.split(",")], args.repeat)


if __name__ == "__main__":
    main()
