#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot kernels (layered BFS, dual ball growth, girth scan)
in-process, and one end-to-end k=3 pipeline run per backend in a
subprocess (backend selection happens at import).  Run after
`pip install -e .`:

    python benchmarks/bench_kernels.py --sizes 500 2000
"""

import argparse
import statistics
import subprocess
import sys
import time

import numpy as np

from cyclenest.generate import gnp_average_degree
from cyclenest._kernels import pure

try:
    from cyclenest._kernels import _fast
except ImportError:
    _fast = None


def timeit(fn, repeats=5):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_kernels(n: int, avg_degree: float, seed: int):
    g = gnp_average_degree(n, avg_degree, seed=seed)
    fmask = np.zeros(g.n, np.uint8)
    src = np.asarray([0], np.int32)
    xs = np.asarray([0], np.int32)
    ys = np.asarray([g.n // 2], np.int32)

    cases = [
        ("bfs", "csr_bfs", (g.indptr, g.indices, src, fmask, -1, -1)),
        ("dual_bfs", "csr_dual_bfs", (g.indptr, g.indices, xs, ys, fmask, g.n)),
        ("girth", "csr_girth_scan", (g.indptr, g.indices)),
    ]
    rows = []
    for label, fn_name, args in cases:
        t_pure = timeit(lambda: getattr(pure, fn_name)(*args))
        t_fast = (timeit(lambda: getattr(_fast, fn_name)(*args))
                  if _fast is not None else float("nan"))
        rows.append((label, t_pure, t_fast))
    return g, rows


_PIPELINE_SNIPPET = """
import statistics, time
from cyclenest import find_nested_cycles
from cyclenest.generate import gnp_average_degree
import cyclenest
g = gnp_average_degree({n}, {avg_degree}, seed={seed})
samples = []
for _ in range(3):
    t0 = time.perf_counter()
    report = find_nested_cycles(g, 3, rng_seed={seed})
    samples.append(time.perf_counter() - t0)
assert report.backend == "{backend}", report.backend
print(statistics.median(samples))
"""


def bench_pipeline(n: int, avg_degree: float, seed: int, backend: str) -> float:
    env = {"CYCLENEST_PURE_KERNELS": "1"} if backend == "pure" else {}
    import os

    result = subprocess.run(
        [sys.executable, "-c",
         _PIPELINE_SNIPPET.format(n=n, avg_degree=avg_degree, seed=seed,
                                  backend=backend)],
        capture_output=True, text=True, check=True,
        env={**os.environ, **env})
    return float(result.stdout.strip())


def print_row(label, t_pure, t_fast):
    ratio = t_pure / t_fast if t_fast == t_fast and t_fast > 0 else float("nan")
    print(f"{label:<22}{t_pure * 1e3:>10.2f}ms{t_fast * 1e3:>10.2f}ms"
          f"{ratio:>9.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[500, 2000])
    parser.add_argument("--avg-degree", type=float, default=30.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if _fast is None:
        print("note: compiled backend unavailable; timing pure only\n")

    for n in args.sizes:
        g, rows = bench_kernels(n, args.avg_degree, args.seed)
        print(f"G(n={n}, avg degree {args.avg_degree}) with m={g.m}")
        print(f"{'kernel':<22}{'pure':>12}{'compiled':>12}{'speedup':>10}")
        for label, t_pure, t_fast in rows:
            print_row(label, t_pure, t_fast)
        t_pure = bench_pipeline(n, args.avg_degree, args.seed, "pure")
        t_fast = (bench_pipeline(n, args.avg_degree, args.seed, "compiled")
                  if _fast is not None else float("nan"))
        print_row("pipeline k=3", t_pure, t_fast)
        print()


if __name__ == "__main__":
    main()
