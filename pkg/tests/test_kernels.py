"""Parity between the compiled and pure kernel backends.

Every kernel is required to be bit-for-bit identical across backends
(including parent tie-breaking), so the pipeline's determinism does not
depend on which backend was selected at import.
"""

import numpy as np
import pytest

from cyclenest._kernels import BACKEND, pure
from cyclenest.generate import gnp

_fast = pytest.importorskip(
    "cyclenest._kernels._fast",
    reason="compiled kernels not built; parity has nothing to compare")


def graphs_for_parity():
    for seed, n, p in [(0, 1, 0.0), (1, 2, 1.0), (2, 30, 0.1), (3, 30, 0.4),
                       (4, 120, 0.03), (5, 120, 0.2), (6, 300, 0.02)]:
        yield gnp(n, p, seed=seed)


def masks_for(g, rng):
    empty = np.zeros(g.n, np.uint8)
    some = np.zeros(g.n, np.uint8)
    if g.n > 3:
        some[rng.choice(g.n, size=g.n // 4, replace=False)] = 1
    return [empty, some]


def test_bfs_parity():
    rng = np.random.default_rng(0)
    for g in graphs_for_parity():
        for fmask in masks_for(g, rng):
            free = np.flatnonzero(fmask == 0)
            if len(free) == 0:
                continue
            srcs = np.asarray(
                sorted(int(v) for v in rng.choice(free, size=min(3, len(free)),
                                                  replace=False)), np.int32)
            for max_depth in (-1, 0, 2):
                for stop_above in (-1, g.n // 2, 1):
                    a = pure.csr_bfs(g.indptr, g.indices, srcs, fmask,
                                     max_depth, stop_above)
                    b = _fast.csr_bfs(g.indptr, g.indices, srcs, fmask,
                                      max_depth, stop_above)
                    assert (a[0] == b[0]).all(), "dist mismatch"
                    assert (a[1] == b[1]).all(), "parent mismatch"
                    assert a[2] == b[2], "depth mismatch"


def test_dual_bfs_parity():
    rng = np.random.default_rng(1)
    for g in graphs_for_parity():
        if g.n < 6:
            continue
        for fmask in masks_for(g, rng):
            free = np.flatnonzero(fmask == 0)
            if len(free) < 4:
                continue
            pick = rng.choice(free, size=4, replace=False)
            xs = np.asarray(sorted(int(v) for v in pick[:2]), np.int32)
            ys = np.asarray(sorted(int(v) for v in pick[2:]), np.int32)
            for cap in (0, 1, 5, g.n):
                a = pure.csr_dual_bfs(g.indptr, g.indices, xs, ys, fmask, cap)
                b = _fast.csr_dual_bfs(g.indptr, g.indices, xs, ys, fmask, cap)
                assert a[0] == b[0], "meet mismatch"
                for x, y in zip(a[1:], b[1:]):
                    assert (np.asarray(x) == np.asarray(y)).all()


def test_girth_parity():
    for g in graphs_for_parity():
        a = pure.csr_girth_scan(g.indptr, g.indices)
        b = _fast.csr_girth_scan(g.indptr, g.indices)
        assert a == b


def test_backend_selection_respects_environment():
    import os

    if os.environ.get("CYCLENEST_PURE_KERNELS") == "1":
        assert BACKEND == "pure"
    else:
        assert BACKEND == "compiled"
