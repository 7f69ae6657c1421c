#!/usr/bin/env python3
"""Benchmark the compiled kernels against their plain numpy twins.

Each hot loop in defalg._kernels ships in two variants: a numba-compiled
one and a pure numpy one.  The package picks a variant at import time
from the DEFALG_BACKEND environment variable; this script times both on
the same inputs and checks that they return identical results.

The workloads are small but honest: multiplication tensors of truncated
polynomial algebras k[x]/(x^s) and nilpotent module actions, the same
shapes the oracle scans feed the kernels in practice.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from defalg import _kernels


def truncated_mul(s: int) -> np.ndarray:
    """Multiplication tensor of k[x]/(x^s) on the basis 1, x, ..., x^(s-1)."""
    mul = np.zeros((s, s, s), np.int64)
    for i in range(s):
        for j in range(s):
            if i + j < s:
                mul[i, j, i + j] = 1
    return mul


def shift_action(s: int, t: int) -> np.ndarray:
    """Action tensor of the same algebra on k^t where x acts as a shift."""
    act = np.zeros((s, t, t), np.int64)
    act[0] = np.eye(t, dtype=np.int64)
    for l in range(t - 1):
        act[1, l + 1, l] = 1
    for i in range(2, s):
        act[i] = act[1] @ act[i - 1]
    return act


def nonunit_pairs(s: int):
    pi, pj = [], []
    for i in range(1, s):
        for j in range(i, s):
            pi.append(i)
            pj.append(j)
    return np.array(pi, np.int64), np.array(pj, np.int64)


def workload_rref(rng, p):
    a = rng.integers(0, p, size=(220, 330)).astype(np.int64)
    return f"rref {a.shape[0]}x{a.shape[1]} mod {p}", (a, p)


def workload_assoc(p):
    s, t = 4, 2
    mul = truncated_mul(s)
    act = shift_action(s, t)
    pair_i, pair_j = nonunit_pairs(s)
    hi = p ** (len(pair_i) * t)
    hi = min(hi, 1 << 18)
    return f"assoc s={s} t={t} ({hi} cands, p={p})", (mul, act, pair_i, pair_j, p, 0, hi)


def workload_linmap(p):
    s, t = 5, 2
    mul = truncated_mul(s)
    act = shift_action(s, t)
    kill = np.zeros((1, s), np.int64)
    kill[0, 1] = 1
    hi = min(p ** (s * t), 1 << 18)
    return f"linmap s={s} t={t} ({hi} cands, p={p})", (mul, act, kill, p, 0, hi)


def workload_polyrel(p):
    # images of x in k[x]/(x^s) subject to the single relation x^s = 0
    s = 6
    mulc = truncated_mul(s)
    base = np.zeros((1, s), np.int64)
    base[0, 1] = 1
    span = np.eye(s, dtype=np.int64)
    rel_ptr = np.array([0, 1], np.int64)
    coefv = np.zeros((1, s), np.int64)
    coefv[0, 0] = 1
    exps = np.array([[s]], np.int64)
    hi = min(p**s, 1 << 18)
    return f"polyrel s={s} ({hi} cands, p={p})", (
        mulc,
        base,
        span,
        rel_ptr,
        coefv,
        exps,
        p,
        0,
        hi,
    )


def results_equal(a, b) -> bool:
    if isinstance(a, tuple):
        return all(results_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def bench(fn, args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="timed runs per case")
    ap.add_argument("--seed", type=int, default=0, help="rng seed for the rref case")
    args = ap.parse_args()

    if "numba" not in _kernels.available_backends():
        print("numba is not importable; nothing to compare")
        return 1

    rng = np.random.default_rng(args.seed)
    cases = []
    for p in (2, 3):
        label, wargs = workload_rref(rng, p)
        cases.append((label, _kernels.rref_modp_numba, _kernels.rref_modp_numpy, wargs))
        label, wargs = workload_assoc(p)
        cases.append((label, _kernels.scan_assoc_numba, _kernels.scan_assoc_numpy, wargs))
        label, wargs = workload_linmap(p)
        cases.append((label, _kernels.scan_linmap_numba, _kernels.scan_linmap_numpy, wargs))
        label, wargs = workload_polyrel(p)
        cases.append(
            (label, _kernels.scan_polyrel_numba, _kernels.scan_polyrel_numpy, wargs)
        )

    print(f"active backend: {_kernels.BACKEND} (set DEFALG_BACKEND=numba|numpy)")
    print(f"{'workload':38} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    mismatches = 0
    for label, f_nb, f_np, wargs in cases:
        got_nb = f_nb(*wargs)  # first call also pays the compile cost
        got_np = f_np(*wargs)
        if not results_equal(got_nb, got_np):
            print(f"{label:38} BACKEND MISMATCH")
            mismatches += 1
            continue
        t_nb = bench(f_nb, wargs, args.repeat)
        t_np = bench(f_np, wargs, args.repeat)
        ratio = t_np / t_nb if t_nb > 0 else float("inf")
        print(f"{label:38} {t_nb * 1e3:9.2f}ms {t_np * 1e3:9.2f}ms {ratio:7.1f}x")
    if mismatches:
        print(f"{mismatches} workload(s) disagreed between backends")
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
