"""Pure-Python reference implementations of the search kernels.

Each function mirrors the compiled twin in ``_fast.pyx`` exactly:
same arguments, same outputs, same deterministic tie-breaking (layers
are expanded in ascending vertex order, so parent links always point to
the smallest-id neighbor in the previous layer).
"""

import numpy as np


def csr_bfs(indptr, indices, sources, forbidden, max_depth, stop_above):
    """Layered BFS over a CSR adjacency, skipping forbidden vertices.

    Returns (dist, parent, completed_depth).  Unreached vertices get
    dist = parent = -1; sources sit at depth 0 with parent -1.  The
    search stops after completing a layer when the frontier is empty,
    when completed_depth == max_depth (if max_depth >= 0), or when the
    cumulative reached count exceeds stop_above (if stop_above >= 0).
    """
    n = len(indptr) - 1
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int32)
    ip = indptr
    idx = indices
    frontier = sorted(int(s) for s in sources)
    for s in frontier:
        dist[s] = 0
    total = len(frontier)
    depth = 0
    while frontier:
        if stop_above >= 0 and total > stop_above:
            break
        if max_depth >= 0 and depth >= max_depth:
            break
        nxt = []
        for u in frontier:
            for v in idx[ip[u]:ip[u + 1]]:
                v = int(v)
                if dist[v] < 0 and not forbidden[v]:
                    dist[v] = depth + 1
                    parent[v] = u
                    nxt.append(v)
        if not nxt:
            break
        nxt.sort()
        frontier = nxt
        depth += 1
        total += len(nxt)
    return dist, parent, depth


def csr_dual_bfs(indptr, indices, xs, ys, forbidden, cap):
    """Grow balls from xs and ys one layer per round, watching for a meet.

    Both sides expand within each round (x side first; the expansions are
    independent, so the round outcome is symmetric in x and y).  After a
    round, the meet is the smallest-id vertex lying in both balls.

    Returns (meet, dist_x, par_x, dist_y, par_y, sizes_x, sizes_y) where
    meet is -1 if the balls never met within cap rounds and sizes_s[t] is
    the size of the side-s ball of radius t, for every completed radius.
    """
    n = len(indptr) - 1
    ip = indptr
    idx = indices
    dist_x = np.full(n, -1, dtype=np.int32)
    par_x = np.full(n, -1, dtype=np.int32)
    dist_y = np.full(n, -1, dtype=np.int32)
    par_y = np.full(n, -1, dtype=np.int32)

    fx = sorted(int(s) for s in xs)
    fy = sorted(int(s) for s in ys)
    for s in fx:
        dist_x[s] = 0
    for s in fy:
        dist_y[s] = 0
    sizes_x = [len(fx)]
    sizes_y = [len(fy)]

    meets = [v for v in fx if dist_y[v] >= 0]
    if meets:
        return (min(meets), dist_x, par_x, dist_y, par_y,
                np.asarray(sizes_x, np.int64), np.asarray(sizes_y, np.int64))

    for t in range(1, cap + 1):
        if not fx and not fy:
            break
        meets = []
        nxt_x = []
        for u in fx:
            for v in idx[ip[u]:ip[u + 1]]:
                v = int(v)
                if dist_x[v] < 0 and not forbidden[v]:
                    dist_x[v] = t
                    par_x[v] = u
                    nxt_x.append(v)
                    if dist_y[v] >= 0:
                        meets.append(v)
        nxt_y = []
        for u in fy:
            for v in idx[ip[u]:ip[u + 1]]:
                v = int(v)
                if dist_y[v] < 0 and not forbidden[v]:
                    dist_y[v] = t
                    par_y[v] = u
                    nxt_y.append(v)
                    if dist_x[v] >= 0:
                        meets.append(v)
        nxt_x.sort()
        nxt_y.sort()
        sizes_x.append(sizes_x[-1] + len(nxt_x))
        sizes_y.append(sizes_y[-1] + len(nxt_y))
        if meets:
            return (min(meets), dist_x, par_x, dist_y, par_y,
                    np.asarray(sizes_x, np.int64), np.asarray(sizes_y, np.int64))
        fx = nxt_x
        fy = nxt_y

    return (-1, dist_x, par_x, dist_y, par_y,
            np.asarray(sizes_x, np.int64), np.asarray(sizes_y, np.int64))


def csr_girth_scan(indptr, indices):
    """Shortest-cycle scan: BFS from every vertex with cross-edge detection.

    Returns (best, root, a, b) where best is the length of a shortest
    closed walk dist[a] + dist[b] + 1 over a non-tree edge (a, b) seen
    from some BFS root.  The minimum over all roots equals the girth;
    best = -1 means the graph is a forest.  BFS from a root is pruned
    once 2 * depth >= best, and the scan exits early at best == 3.
    """
    n = len(indptr) - 1
    ip = indptr
    idx = indices
    best = -1
    best_root = best_a = best_b = -1
    dist = np.full(n, -1, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int32)
    for root in range(n):
        if best == 3:
            break
        dist.fill(-1)
        parent.fill(-1)
        dist[root] = 0
        frontier = [root]
        depth = 0
        while frontier:
            if best >= 0 and 2 * depth >= best:
                break
            nxt = []
            for u in frontier:
                du = int(dist[u])
                pu = int(parent[u])
                for v in idx[ip[u]:ip[u + 1]]:
                    v = int(v)
                    if dist[v] < 0:
                        dist[v] = du + 1
                        parent[v] = u
                        nxt.append(v)
                    elif v != pu and int(parent[v]) != u:
                        cand = du + int(dist[v]) + 1
                        if best < 0 or cand < best:
                            best = cand
                            best_root, best_a, best_b = root, u, v
            nxt.sort()
            frontier = nxt
            depth += 1
    return best, best_root, best_a, best_b
