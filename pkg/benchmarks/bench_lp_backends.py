#!/usr/bin/env python3
"""Benchmark the numba kernel against the pure-numpy fallback on the two hot
oracle workloads: origin-containment LPs and pairwise face LPs.

Run:  python benchmarks/bench_lp_backends.py [trials]

Both backends are imported directly (the RANDPOLY_BACKEND env flag selects
which one the package itself uses at import time).
"""

import sys
import time

import numpy as np


def containment_problems(rng, trials, n, d):
    out = []
    for _ in range(trials):
        X = rng.standard_normal((n, d))
        col = X.sum(axis=0)
        A = np.zeros((d + 1, n + 2))
        A[:d, :n] = X.T
        A[:d, n] = col
        A[:d, n + 1] = -col
        A[d, :n] = 1.0
        A[d, n] = n
        A[d, n + 1] = -n
        b = np.zeros(d + 1)
        b[d] = 1.0
        c = np.zeros(n + 2)
        c[n] = 1.0
        c[n + 1] = -1.0
        out.append((A, b, c))
    return out


def face_problems(rng, trials, n, d, k):
    out = []
    for _ in range(trials):
        X = rng.standard_normal((n, d))
        XK = X[:k]
        XR = X[k:]
        r = n - k
        rest_sum = XR.sum(axis=0)
        nv = 2 * k + r + 2
        A = np.zeros((d + 2, nv))
        A[:d, :k] = XK.T
        A[:d, k:2 * k] = -XK.T
        A[:d, 2 * k:2 * k + r] = -XR.T
        A[:d, nv - 2] = -rest_sum
        A[:d, nv - 1] = rest_sum
        A[d, :k] = 1.0
        A[d, k:2 * k] = -1.0
        A[d + 1, 2 * k:2 * k + r] = 1.0
        A[d + 1, nv - 2] = r
        A[d + 1, nv - 1] = -r
        b = np.zeros(d + 2)
        b[d] = 1.0
        b[d + 1] = 1.0
        c = np.zeros(nv)
        c[nv - 2] = 1.0
        c[nv - 1] = -1.0
        out.append((A, b, c))
    return out


def bench(name, solver, problems):
    t0 = time.perf_counter()
    agg = 0.0
    for A, b, c in problems:
        status, obj, x, resid = solver(A, b, c)
        if status == 0:
            agg += obj
    dt = time.perf_counter() - t0
    per = dt / len(problems) * 1e6
    print(f"  {name:6s}: {dt:8.3f} s total, {per:8.1f} us/LP  (checksum {agg:.6f})")
    return dt


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    from randpoly._lp_numpy import simplex_standard as lp_numpy
    try:
        from randpoly._lp_numba import simplex_standard as lp_numba
    except ImportError:
        lp_numba = None
        print("numba unavailable; benchmarking the numpy fallback only")

    rng = np.random.default_rng(2024)
    suites = [
        ("containment d=3 n=6", containment_problems(rng, trials, 6, 3)),
        ("containment d=4 n=7", containment_problems(rng, trials, 7, 4)),
        ("face k=2 d=12 n=15", face_problems(rng, max(1, trials // 4), 15, 12, 2)),
    ]
    if lp_numba is not None:
        # trigger JIT compilation outside the timed region
        bench_problem = suites[0][1][0]
        lp_numba(*bench_problem)

    for name, problems in suites:
        print(f"{name} ({len(problems)} LPs)")
        t_np = bench("numpy", lp_numpy, problems)
        if lp_numba is not None:
            t_nb = bench("numba", lp_numba, problems)
            print(f"  speedup: {t_np / t_nb:.1f}x")


if __name__ == "__main__":
    main()
