"""Throughput comparison of the compiled and pure-NumPy kernel backends.

Runs the four hottest kernels on identical seeded inputs through both
implementations, reports best-of-N wall times and the speedup ratio, and
verifies that the outputs agree before timing.  Compilation happens during
an untimed warmup pass, so the numbers reflect steady-state throughput.

Usage:
    python3 benchmarks/backend_bench.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from pirtemp.kernels import numba_impl, numpy_impl


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_case(name: str, make_args, call, repeats: int):
    """Time `call(impl, *args)` on both backends with identical inputs."""
    args_a = make_args(np.random.default_rng(7))
    args_b = make_args(np.random.default_rng(7))
    out_numba = call(numba_impl, *args_a)
    out_numpy = call(numpy_impl, *args_b)
    if not np.allclose(np.asarray(out_numba, dtype=float),
                       np.asarray(out_numpy, dtype=float),
                       rtol=1e-10, atol=1e-12):
        raise AssertionError(f"{name}: backends disagree")

    t_numba = best_of(lambda: call(numba_impl, *args_a), repeats)
    t_numpy = best_of(lambda: call(numpy_impl, *args_b), repeats)
    return name, t_numba, t_numpy


def case_bench_batch(rng):
    return (rng.uniform(-50.0, 50.0, size=(512, 30)),)


def run_bench_batch(impl, X):
    total = np.zeros(X.shape[0])
    for fid in range(1, 8):
        total += impl.bench_batch(fid, X)
    return total


def case_whale_step(rng):
    n, dim = 256, 30
    X = rng.uniform(-100.0, 100.0, size=(n, dim))
    best = X[np.argmin(np.abs(X).sum(axis=1))].copy()
    return (X, best,
            0.9, 1.0,
            rng.random(n), rng.random(n),
            rng.random(n), rng.uniform(-1.0, 1.0, n),
            rng.integers(0, n, n),
            np.full(dim, -100.0), np.full(dim, 100.0))


def run_whale_step(impl, *args):
    return impl.whale_step(*args)


def case_smo_solve(rng):
    n = 220
    X = rng.uniform(-2.0, 2.0, size=(n, 3))
    y = np.sin(X).sum(axis=1) + 0.05 * rng.normal(size=n)
    K = numpy_impl.rbf_from_sq(numpy_impl.sq_dists(X, X), 0.5)
    return (K, y, 10.0, 0.1, 1e-5, 200_000)


def run_smo_solve(impl, K, y, c, eps, tol, max_steps):
    beta, bias, _steps, _gap, _conv = impl.smo_solve(K, y, c, eps, tol, max_steps)
    return np.append(beta, bias)


def case_cool_batch(rng):
    n = 2000
    t_peak = rng.uniform(294.0, 460.0, size=n)
    t2 = rng.uniform(0.0, 1800.0, size=n)
    return (t_peak, t2, 60.0, 120.0 * 890.0, 293.0, 1.0)


def run_cool_batch(impl, *args):
    return impl.cool_batch(*args)


CASES = [
    ("bench_batch (512x30, F1-F7)", case_bench_batch, run_bench_batch),
    ("whale_step (256x30)", case_whale_step, run_whale_step),
    ("smo_solve (n=220 RBF)", case_smo_solve, run_smo_solve),
    ("cool_batch (2000 scenarios)", case_cool_batch, run_cool_batch),
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repetitions per case (best is kept)")
    args = parser.parse_args()

    rows = [bench_case(name, make, call, args.repeats)
            for name, make, call in CASES]

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_numba, t_numpy in rows:
        print(f"{name:<{width}}  {t_numba * 1e3:>8.2f}ms  {t_numpy * 1e3:>8.2f}ms"
              f"  {t_numpy / t_numba:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
