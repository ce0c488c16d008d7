"""Shared graph constructions for the test suite."""

import pytest

from cyclenest import Graph


def complete(n: int) -> Graph:
    return Graph(n, [(a, b) for a in range(n) for b in range(a + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    # Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def hypercube3() -> Graph:
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return Graph(8, edges)


def two_triangles() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def k4() -> Graph:
    return complete(4)


def connected_after_removal(g: Graph, removed: set) -> bool:
    keep = [v for v in range(g.n) if v not in removed]
    if len(keep) <= 1:
        return True
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            w = int(w)
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(keep)


def brute_force_cut_bound(g: Graph, max_size: int):
    """Smallest vertex cut of size <= max_size by enumeration, else None.

    Uses the same convention as vertex_connectivity_exact: leaving a
    single vertex counts as disconnection.
    """
    import itertools

    for k in range(max_size + 1):
        for cut in itertools.combinations(range(g.n), k):
            removed = set(cut)
            if g.n - k == 1:
                return k
            if not connected_after_removal(g, removed):
                return k
    return None
