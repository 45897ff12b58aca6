#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled extension.

Micro-benchmarks exercise the two hot paths (PBW straightening and
fraction-free elimination) in-process on both backends; the end-to-end
row rebuilds a W-algebra basis in a subprocess with WALG_BACKEND forced.

    python benchmarks/bench_backends.py [--repeat N] [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

from walg import _kernels as pyk

try:
    from walg import _speedups as cyk
except ImportError:
    cyk = None


def adapted_sl4_bracket():
    from walg.liealg import make_sln, partition_triple
    from walg.context import build_context
    e, h, f = partition_triple(4, [2, 1, 1])
    ctx = build_context(make_sln(4), e, "zero", h=h, f=f)
    return ctx.basis.bracket, ctx.basis.lie.dim


def straightening_workload(bracket, dim, n_products=300, seed=5):
    rng = random.Random(seed)
    pairs = []
    for _ in range(n_products):
        def word():
            exps = {}
            for _ in range(rng.randint(1, 4)):
                i = rng.randrange(dim)
                exps[i] = exps.get(i, 0) + 1
            return {tuple(sorted(exps.items())): F(rng.randint(1, 3), rng.randint(1, 2))}
        pairs.append((word(), word()))
    return pairs


def rref_workload(nrows=220, ncols=130, density=0.06, seed=6):
    rng = random.Random(seed)
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                row[j] = F(rng.randint(-5, 5), rng.randint(1, 4))
        rows.append(row)
    return rows, ncols


def dense_workload(n=40, seed=7):
    rng = random.Random(seed)
    rows = [[F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)]
    return rows, n


def timeit(fn, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def run_micro(repeat):
    bracket, dim = adapted_sl4_bracket()
    pairs = straightening_workload(bracket, dim)
    sp_rows, sp_cols = rref_workload()
    de_rows, de_cols = dense_workload()
    backends = [("python", pyk)] + ([("compiled", cyk)] if cyk else [])

    # sanity: identical outputs before timing anything
    if cyk:
        for t1, t2 in pairs[:20]:
            assert pyk.mul_terms(t1, t2, bracket, {}) == \
                cyk.mul_terms(t1, t2, bracket, {})
        assert pyk.rref_sparse([dict(r) for r in sp_rows], sp_cols) == \
            cyk.rref_sparse([dict(r) for r in sp_rows], sp_cols)

    results = {}
    for name, impl in backends:
        def bench_straighten():
            cache = {}
            for t1, t2 in pairs:
                impl.mul_terms(t1, t2, bracket, cache)

        def bench_sparse():
            impl.rref_sparse([dict(r) for r in sp_rows], sp_cols)

        def bench_dense():
            impl.rref_dense([list(r) for r in de_rows], de_cols)

        results[name] = {
            "straightening (300 products, sl4)": timeit(bench_straighten, repeat),
            "rref sparse (220x130)": timeit(bench_sparse, repeat),
            "rref dense (40x40)": timeit(bench_dense, repeat),
        }
    return results


E2E_SNIPPET = """
import time
from walg.liealg import make_sln, partition_triple
from walg.context import build_context
from walg.whittaker import h_basis, verify_theorem
t0 = time.perf_counter()
e, h, f = partition_triple(3, [3])
ctx = build_context(make_sln(3), e, "zero", h=h, f=f)
hb = h_basis(12, ctx)
verify_theorem(12, ctx, hb)
print(time.perf_counter() - t0)
"""


def run_e2e(repeat):
    out = {}
    for name in ["python"] + (["compiled"] if cyk else []):
        env = dict(os.environ, WALG_BACKEND=name)
        best = None
        for _ in range(repeat):
            proc = subprocess.run([sys.executable, "-c", E2E_SNIPPET], env=env,
                                  capture_output=True, text=True, check=True)
            t = float(proc.stdout.strip())
            best = t if best is None else min(best, t)
        out[name] = best
    return out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--skip-e2e", action="store_true")
    args = parser.parse_args()

    if cyk is None:
        print("note: walg._speedups is not built; timing pure Python only\n")
    results = run_micro(args.repeat)
    if not args.skip_e2e:
        e2e = run_e2e(args.repeat)
        for name, t in e2e.items():
            results.setdefault(name, {})["end-to-end (sl3 principal, deg 12)"] = t

    workloads = list(results["python"].keys())
    width = max(len(w) for w in workloads) + 2
    header = f"{'workload':<{width}} {'python':>10}"
    if cyk:
        header += f" {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for w in workloads:
        line = f"{w:<{width}} {results['python'][w] * 1e3:>8.1f}ms"
        if cyk:
            c = results["compiled"][w]
            line += f" {c * 1e3:>8.1f}ms {results['python'][w] / c:>7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
