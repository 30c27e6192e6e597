#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--quick]

Both implementations are imported explicitly (independent of the
ACSLAB_PURE_PYTHON selection), run on identical workloads, checked for
agreement, and timed.
"""

import argparse
import sys
import time

import numpy as np

sys.path.insert(0, "src")

from acslab._kernels import implementations  # noqa: E402
from acslab.viterbi import ConvCode, build_trellis  # noqa: E402


def timeit(fn, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_acs(impls, steps):
    rows = []
    rng = np.random.default_rng(7)
    for K, gens in ((3, (0o7, 0o5)), (7, (0o171, 0o133))):
        tr = build_trellis(ConvCode(K, gens))
        syms = rng.integers(0, 1 << tr.n_out, steps).astype(np.int64)
        pm0 = np.full(tr.num_states, 4095, dtype=np.int64)
        pm0[0] = 0
        for kind, k, label in ((0, 0, "exact"), (1, 6, "lower_or k=6")):
            results = {}
            times = {}
            for name, mod in impls.items():
                times[name], results[name] = timeit(lambda m=mod: m.acs_run(
                    syms, tr.pred, tr.tsym, pm0, tr.popcnt, kind, k, 12,
                    4095, None))
            if len(results) == 2:
                a, b = results.values()
                assert (a[0] == b[0]).all() and (a[1] == b[1]).all()
            rows.append((f"acs_run K={K} {label} ({steps} steps)", times))
    return rows


def bench_metrics(impls, n_exh, n_samples):
    rows = []
    for kind, k, label in ((1, n_exh // 2, "lower_or"), (2, 4, "truncated")):
        times = {}
        results = {}
        for name, mod in impls.items():
            times[name], results[name] = timeit(lambda m=mod: m.pair_metrics(
                kind, k, n_exh, None, 0, 1 << (2 * n_exh)))
        if len(results) == 2:
            a, b = results.values()
            assert a[:5] == b[:5] and (a[5] == b[5]).all()
        rows.append((f"pair_metrics n={n_exh} {label} (2^{2 * n_exh} pairs)", times))
    times = {}
    for name, mod in impls.items():
        times[name], _ = timeit(lambda m=mod: m.pair_metrics_sampled(
            1, 8, 16, None, 12345, 0, n_samples))
    rows.append((f"pair_metrics_sampled n=16 ({n_samples} samples)", times))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    impls = implementations()
    print("implementations:", ", ".join(impls))
    if "compiled" not in impls:
        print("note: compiled extension not built; timing fallback only")

    steps = 20_000 if args.quick else 100_000
    n_exh = 8 if args.quick else 10
    n_samples = 200_000 if args.quick else 2_000_000

    rows = bench_acs(impls, steps) + bench_metrics(impls, n_exh, n_samples)

    width = max(len(r[0]) for r in rows)
    print(f"\n{'workload':<{width}}  {'python':>10}  {'compiled':>10}  {'speedup':>8}")
    for label, times in rows:
        py = times.get("python", float("nan"))
        cy = times.get("compiled")
        if cy is None:
            print(f"{label:<{width}}  {py * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
        else:
            print(f"{label:<{width}}  {py * 1e3:>8.2f}ms  {cy * 1e3:>8.2f}ms  "
                  f"{py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
