#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Each kernel is timed on a sweep-shaped workload (best of `--repeat` runs,
after a warmup call that absorbs JIT compilation).  Run:

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from menonsums import kernels
from menonsums.arith import power_divisors


def best_of(fn, repeat: int) -> float:
    fn()  # warmup; compiles the numba path on first call
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workloads():
    pds2 = np.array(power_divisors(720720, 2), dtype=np.int64)
    rng = np.random.default_rng(1)
    t_idx = rng.integers(-1, 5040, size=100_000)
    weights = rng.integers(1, 100, size=100_000).astype(np.float64)
    roots = np.exp(2j * np.pi * np.arange(5040) / 5040)
    return [
        ("menon_gcd_sum(100000)", "menon_gcd_sum", lambda f: f(100_000)),
        ("sum menon_gcd_sum n<=2000", "menon_gcd_sum", lambda f: [f(n) for n in range(1, 2001)]),
        ("klee_brute_count(100000, 2)", "klee_brute_count", lambda f: f(100_000, 2)),
        ("klee_brute_count(30000, 1)", "klee_brute_count", lambda f: f(30_000, 1)),
        ("sgcd_weights(720720, s=2)", "sgcd_weights", lambda f: f(720720, pds2)),
        ("dlog_cyclic(3^12)", "dlog_cyclic", lambda f: f(531441, 5, 354294)),
        ("dlog_two_gens(2^19)", "dlog_two_gens", lambda f: f(1 << 19, 1 << 17)),
        ("weighted_char_sum(1e5 terms)", "weighted_char_sum", lambda f: f(t_idx, weights, roots)),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return

    print(f"selected backend at import: {kernels.BACKEND}")
    print(f"{'workload':<34} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for label, name, call in workloads():
        t_np = best_of(lambda: call(kernels.IMPLEMENTATIONS[name]["numpy"]), args.repeat)
        t_nb = best_of(lambda: call(kernels.IMPLEMENTATIONS[name]["numba"]), args.repeat)
        print(f"{label:<34} {t_np*1e3:>8.2f}ms {t_nb*1e3:>8.2f}ms {t_np/t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
