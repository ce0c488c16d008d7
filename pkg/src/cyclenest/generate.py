"""Seeded random-graph generators (PCG64 streams via numpy).

All randomness in the package flows through numpy's PCG64 generator so
results reproduce across platforms; see the README's reproducibility
note.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph


def gnp(n: int, p: float, seed: int) -> Graph:
    """G(n, p) by independent coin flips on the upper triangle."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError(f"illegal G(n, p) parameters n={n}, p={p}")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    for u in range(n - 1):
        hits = np.flatnonzero(rng.random(n - 1 - u) < p)
        edges.extend((u, u + 1 + int(v)) for v in hits)
    return Graph(n, edges)


def gnp_average_degree(n: int, avg_degree: float, seed: int) -> Graph:
    """G(n, p) with p chosen so the expected average degree is avg_degree."""
    if n < 2:
        raise ValueError("need n >= 2")
    p = min(1.0, avg_degree / (n - 1))
    if p < 0:
        raise ValueError("average degree must be >= 0")
    return gnp(n, p, seed)


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Random d-regular graph by the pairing model.

    Stubs are paired by a random shuffle; collisions (loops or repeated
    edges) put their stubs back into play and the round repeats, with a
    full restart when no suitable pairing remains.
    """
    if (n * d) % 2 != 0:
        raise ValueError("n * d must be even")
    if not 0 <= d < n:
        raise ValueError("need 0 <= d < n")
    rng = np.random.default_rng(seed)

    def suitable(edges: set, counts: dict[int, int]) -> bool:
        # Some non-edge must remain between stub-holding vertices.
        if not counts:
            return True
        nodes = sorted(counts)
        for i, s1 in enumerate(nodes):
            for s2 in nodes[i + 1:]:
                if (s1, s2) not in edges:
                    return True
        return False

    def try_pairing() -> set | None:
        edges: set = set()
        stubs = [v for v in range(n) for _ in range(d)]
        while stubs:
            counts: dict[int, int] = {}
            stubs = [int(v) for v in rng.permutation(stubs)]
            for s1, s2 in zip(stubs[::2], stubs[1::2]):
                if s1 > s2:
                    s1, s2 = s2, s1
                if s1 != s2 and (s1, s2) not in edges:
                    edges.add((s1, s2))
                else:
                    counts[s1] = counts.get(s1, 0) + 1
                    counts[s2] = counts.get(s2, 0) + 1
            if not suitable(edges, counts):
                return None
            stubs = [v for v, c in sorted(counts.items()) for _ in range(c)]
        return edges

    edges = try_pairing()
    while edges is None:
        edges = try_pairing()
    return Graph(n, sorted(edges))
