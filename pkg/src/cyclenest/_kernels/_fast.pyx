# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels.

Bit-for-bit equivalent to ``cyclenest._kernels.pure``; see that module
for the argument and return conventions.  Layer frontiers are expanded
in ascending vertex order so parent links match the pure backend.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t
from libc.stdlib cimport qsort


cdef int _cmp_i32(const void* a, const void* b) noexcept nogil:
    cdef int32_t x = (<const int32_t*> a)[0]
    cdef int32_t y = (<const int32_t*> b)[0]
    if x < y:
        return -1
    if x > y:
        return 1
    return 0


def csr_bfs(int64_t[::1] indptr, int32_t[::1] indices, int32_t[::1] sources,
            uint8_t[::1] forbidden, long max_depth, long stop_above):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    parent_arr = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] dist = dist_arr
    cdef int32_t[::1] parent = parent_arr
    cur_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    nxt_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    cdef int32_t[::1] cur = cur_arr
    cdef int32_t[::1] nxt = nxt_arr
    cdef int32_t[::1] tmp

    cdef Py_ssize_t ncur = sources.shape[0]
    cdef Py_ssize_t i, j, nn
    cdef int32_t u, v
    for i in range(ncur):
        cur[i] = sources[i]
    if ncur > 1:
        qsort(&cur[0], ncur, sizeof(int32_t), _cmp_i32)
    for i in range(ncur):
        dist[cur[i]] = 0

    cdef long total = ncur
    cdef long depth = 0
    while ncur > 0:
        if stop_above >= 0 and total > stop_above:
            break
        if max_depth >= 0 and depth >= max_depth:
            break
        nn = 0
        for i in range(ncur):
            u = cur[i]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if dist[v] < 0 and forbidden[v] == 0:
                    dist[v] = <int32_t> (depth + 1)
                    parent[v] = u
                    nxt[nn] = v
                    nn += 1
        if nn == 0:
            break
        qsort(&nxt[0], nn, sizeof(int32_t), _cmp_i32)
        tmp = cur
        cur = nxt
        nxt = tmp
        ncur = nn
        depth += 1
        total += nn
    return dist_arr, parent_arr, depth


def csr_dual_bfs(int64_t[::1] indptr, int32_t[::1] indices, int32_t[::1] xs,
                 int32_t[::1] ys, uint8_t[::1] forbidden, long cap):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_x_arr = np.full(n, -1, dtype=np.int32)
    par_x_arr = np.full(n, -1, dtype=np.int32)
    dist_y_arr = np.full(n, -1, dtype=np.int32)
    par_y_arr = np.full(n, -1, dtype=np.int32)
    cdef int32_t[::1] dist_x = dist_x_arr
    cdef int32_t[::1] par_x = par_x_arr
    cdef int32_t[::1] dist_y = dist_y_arr
    cdef int32_t[::1] par_y = par_y_arr

    fx_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    nx_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    fy_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    ny_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    cdef int32_t[::1] fx = fx_arr
    cdef int32_t[::1] nxf = nx_arr
    cdef int32_t[::1] fy = fy_arr
    cdef int32_t[::1] nyf = ny_arr
    cdef int32_t[::1] tmp

    cdef Py_ssize_t nfx = xs.shape[0]
    cdef Py_ssize_t nfy = ys.shape[0]
    cdef Py_ssize_t i, j, nnx, nny
    cdef int32_t u, v, meet
    for i in range(nfx):
        fx[i] = xs[i]
    for i in range(nfy):
        fy[i] = ys[i]
    if nfx > 1:
        qsort(&fx[0], nfx, sizeof(int32_t), _cmp_i32)
    if nfy > 1:
        qsort(&fy[0], nfy, sizeof(int32_t), _cmp_i32)
    for i in range(nfx):
        dist_x[fx[i]] = 0
    for i in range(nfy):
        dist_y[fy[i]] = 0

    sizes_x_arr = np.zeros(n + 2, dtype=np.int64)
    sizes_y_arr = np.zeros(n + 2, dtype=np.int64)
    cdef int64_t[::1] sizes_x = sizes_x_arr
    cdef int64_t[::1] sizes_y = sizes_y_arr
    sizes_x[0] = nfx
    sizes_y[0] = nfy
    cdef Py_ssize_t nrec = 1

    meet = -1
    for i in range(nfx):
        if dist_y[fx[i]] >= 0:
            meet = fx[i]
            break
    if meet >= 0:
        return (int(meet), dist_x_arr, par_x_arr, dist_y_arr, par_y_arr,
                sizes_x_arr[:nrec].copy(), sizes_y_arr[:nrec].copy())

    cdef long t
    for t in range(1, cap + 1):
        if nfx == 0 and nfy == 0:
            break
        meet = -1
        nnx = 0
        for i in range(nfx):
            u = fx[i]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if dist_x[v] < 0 and forbidden[v] == 0:
                    dist_x[v] = <int32_t> t
                    par_x[v] = u
                    nxf[nnx] = v
                    nnx += 1
                    if dist_y[v] >= 0 and (meet < 0 or v < meet):
                        meet = v
        nny = 0
        for i in range(nfy):
            u = fy[i]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if dist_y[v] < 0 and forbidden[v] == 0:
                    dist_y[v] = <int32_t> t
                    par_y[v] = u
                    nyf[nny] = v
                    nny += 1
                    if dist_x[v] >= 0 and (meet < 0 or v < meet):
                        meet = v
        if nnx > 1:
            qsort(&nxf[0], nnx, sizeof(int32_t), _cmp_i32)
        if nny > 1:
            qsort(&nyf[0], nny, sizeof(int32_t), _cmp_i32)
        sizes_x[nrec] = sizes_x[nrec - 1] + nnx
        sizes_y[nrec] = sizes_y[nrec - 1] + nny
        nrec += 1
        if meet >= 0:
            return (int(meet), dist_x_arr, par_x_arr, dist_y_arr, par_y_arr,
                    sizes_x_arr[:nrec].copy(), sizes_y_arr[:nrec].copy())
        tmp = fx
        fx = nxf
        nxf = tmp
        nfx = nnx
        tmp = fy
        fy = nyf
        nyf = tmp
        nfy = nny

    return (-1, dist_x_arr, par_x_arr, dist_y_arr, par_y_arr,
            sizes_x_arr[:nrec].copy(), sizes_y_arr[:nrec].copy())


def csr_girth_scan(int64_t[::1] indptr, int32_t[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n if n > 0 else 1, -1, dtype=np.int32)
    parent_arr = np.full(n if n > 0 else 1, -1, dtype=np.int32)
    cur_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    nxt_arr = np.empty(n if n > 0 else 1, dtype=np.int32)
    cdef int32_t[::1] dist = dist_arr
    cdef int32_t[::1] parent = parent_arr
    cdef int32_t[::1] cur = cur_arr
    cdef int32_t[::1] nxt = nxt_arr
    cdef int32_t[::1] tmp

    cdef long best = -1
    cdef int32_t best_root = -1, best_a = -1, best_b = -1
    cdef Py_ssize_t root, i, j, ncur, nn
    cdef int32_t u, v, pu
    cdef long depth, du, cand

    for root in range(n):
        if best == 3:
            break
        for i in range(n):
            dist[i] = -1
            parent[i] = -1
        dist[root] = 0
        cur[0] = <int32_t> root
        ncur = 1
        depth = 0
        while ncur > 0:
            if best >= 0 and 2 * depth >= best:
                break
            nn = 0
            for i in range(ncur):
                u = cur[i]
                du = dist[u]
                pu = parent[u]
                for j in range(indptr[u], indptr[u + 1]):
                    v = indices[j]
                    if dist[v] < 0:
                        dist[v] = <int32_t> (du + 1)
                        parent[v] = u
                        nxt[nn] = v
                        nn += 1
                    elif v != pu and parent[v] != u:
                        cand = du + dist[v] + 1
                        if best < 0 or cand < best:
                            best = cand
                            best_root = <int32_t> root
                            best_a = u
                            best_b = v
            if nn > 1:
                qsort(&nxt[0], nn, sizeof(int32_t), _cmp_i32)
            tmp = cur
            cur = nxt
            nxt = tmp
            ncur = nn
            depth += 1
    return int(best), int(best_root), int(best_a), int(best_b)
