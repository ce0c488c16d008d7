"""Short connections under a forbidden vertex set, via dual ball growth,
plus exact vertex connectivity for cross-checking the predicted bound.

The connection routine grows balls from both endpoint sets inside
h - s, one layer per round, and stops at the first round where the
balls intersect; the returned path has length at most 2T where
T = ceil(16 log N loglog N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NoShortConnectionError
from .graph import Graph, as_vertex_mask
from ._kernels import csr_bfs, csr_dual_bfs


@dataclass
class ConnectionBudget:
    """Scale constants for one host graph: R = A_sc log N loglog N and
    T = ceil(16 log N loglog N).  Requires N >= n_sc so loglog N > 0."""

    n: int
    a_sc: float = 40.0
    n_sc: int = 16
    r: float = field(init=False)
    t: int = field(init=False)

    def __post_init__(self):
        if self.n < self.n_sc:
            raise ValueError(f"need N >= {self.n_sc}, got {self.n}")
        loglog = math.log(math.log(self.n))
        self.r = self.a_sc * math.log(self.n) * loglog
        self.t = math.ceil(16.0 * math.log(self.n) * loglog)


@dataclass
class BallStep:
    t: int
    size: int
    z: float          # log(N / |B_t|)
    alpha: float      # z / log N
    growth: float | None   # |B_{t+1}| / |B_t|, None on the last recorded step


@dataclass
class BallTrace:
    n: int
    cap: int
    steps: list[BallStep]
    ball: list[int]

    @property
    def sizes(self) -> list[int]:
        return [s.size for s in self.steps]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cap": self.cap,
            "sizes": self.sizes,
            "final_size": self.steps[-1].size if self.steps else 0,
        }


def _trace_from_sizes(n: int, cap: int, sizes: Sequence[int],
                      ball: list[int]) -> BallTrace:
    logn = math.log(n) if n >= 2 else 1.0
    steps = []
    for t, size in enumerate(sizes):
        z = math.log(n / size)
        growth = sizes[t + 1] / size if t + 1 < len(sizes) else None
        steps.append(BallStep(t, int(size), z, z / logn, growth))
    return BallTrace(n, cap, steps, ball)


def grow_ball(h: Graph, x: Iterable[int], s: Iterable[int], cap: int) -> BallTrace:
    """Iterate B_{t+1} = B_t + N_{h-s}(B_t) from B_0 = x.

    Stops at the first t with |B_t| > N/2, at t = cap, or when the ball
    stalls; the full trace of sizes (with z_t and alpha_t) is recorded.
    """
    xs = sorted(set(int(v) for v in x))
    if not xs:
        raise ValueError("x must be nonempty")
    smask = as_vertex_mask(h, s)
    for v in xs:
        if smask[v]:
            raise ValueError(f"x and s overlap at {v}")
    dist, _parent, depth = csr_bfs(
        h.indptr, h.indices, np.asarray(xs, dtype=np.int32), smask,
        cap, h.n // 2)
    reached = dist[dist >= 0]
    sizes = np.cumsum(np.bincount(reached, minlength=depth + 1))[:depth + 1]
    ball = [int(v) for v in np.flatnonzero((dist >= 0) & (dist <= depth))]
    return _trace_from_sizes(h.n, cap, [int(c) for c in sizes], ball)


def _chase(parent: np.ndarray, v: int) -> list[int]:
    out = [int(v)]
    while parent[out[-1]] >= 0:
        out.append(int(parent[out[-1]]))
    return out


def _splice_simple(walk: list[int]) -> list[int]:
    """Remove loops from a walk; symmetric under reversal.

    Repeatedly cuts the segment between the first and last occurrence of
    the smallest-id repeated vertex.
    """
    while True:
        counts: dict[int, int] = {}
        for v in walk:
            counts[v] = counts.get(v, 0) + 1
        repeated = sorted(v for v, c in counts.items() if c > 1)
        if not repeated:
            return walk
        v = repeated[0]
        i = walk.index(v)
        j = len(walk) - 1 - walk[::-1].index(v)
        walk = walk[:i] + walk[j:]


@dataclass
class ConnectionOutcome:
    path: list[int]
    trace_x: BallTrace
    trace_y: BallTrace
    rounds: int
    preconditions: dict

    def to_json(self) -> dict:
        return {
            "path": self.path,
            "length": len(self.path) - 1,
            "rounds": self.rounds,
            "trace_x": self.trace_x.to_json(),
            "trace_y": self.trace_y.to_json(),
            "preconditions": self.preconditions,
        }


def _theoretical_preconditions(h: Graph, nx: int, ny: int, ns: int) -> dict:
    sigma = min(h.min_degree(), math.sqrt(h.n))
    return {
        "sigma": sigma,
        "x_large": nx >= sigma / 4.0,
        "y_large": ny >= sigma / 4.0,
        "s_small": ns <= sigma / 1000.0,
        "held": (nx >= sigma / 4.0 and ny >= sigma / 4.0
                 and ns <= sigma / 1000.0),
    }


def short_connect(h: Graph, x: Iterable[int], y: Iterable[int],
                  s: Iterable[int], cap: int) -> ConnectionOutcome:
    """Join x and y in h - s by a short simple path, with diagnostics.

    Balls grow from both sides for at most cap rounds, checking for a
    meet after every round; the meet vertex is the smallest-id vertex in
    the intersection.  The lemma-scale preconditions (|x|, |y| >=
    sigma/4, |s| <= sigma/1000) are reported, not enforced.
    """
    xs = sorted(set(int(v) for v in x))
    ys = sorted(set(int(v) for v in y))
    if not xs or not ys:
        raise ValueError("x and y must be nonempty")
    smask = as_vertex_mask(h, s)
    for v in xs + ys:
        if smask[v]:
            raise ValueError(f"endpoint {v} lies in the forbidden set")
    pre = _theoretical_preconditions(h, len(xs), len(ys), int(smask.sum()))

    meet, dist_x, par_x, dist_y, par_y, sizes_x, sizes_y = csr_dual_bfs(
        h.indptr, h.indices,
        np.asarray(xs, dtype=np.int32), np.asarray(ys, dtype=np.int32),
        smask, cap)
    rounds = len(sizes_x) - 1
    ball_x = [int(v) for v in np.flatnonzero(dist_x >= 0)]
    ball_y = [int(v) for v in np.flatnonzero(dist_y >= 0)]
    trace_x = _trace_from_sizes(h.n, cap, [int(c) for c in sizes_x], ball_x)
    trace_y = _trace_from_sizes(h.n, cap, [int(c) for c in sizes_y], ball_y)
    if meet < 0:
        raise NoShortConnectionError(
            f"no short connection within {cap} rounds", trace_x, trace_y)

    left = _chase(par_x, meet)      # meet ... x-source
    right = _chase(par_y, meet)     # meet ... y-source
    walk = list(reversed(left)) + right[1:]
    path = _splice_simple(walk)

    xset, yset = set(xs), set(ys)
    assert path[0] in xset and path[-1] in yset
    assert len(set(path)) == len(path)
    assert all(not smask[v] for v in path)
    assert all(h.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))
    assert len(path) - 1 <= 2 * cap
    return ConnectionOutcome(path, trace_x, trace_y, rounds, pre)


def robust_short_connect(h: Graph, x: Iterable[int], y: Iterable[int],
                         s: Iterable[int], budget: ConnectionBudget) -> list[int]:
    """Path from x to y in h - s of length <= 2T; see short_connect."""
    return short_connect(h, x, y, s, budget.t).path


# -- vertex connectivity -----------------------------------------------------

def vertex_connectivity_exact(h: Graph, cap: int = 2000) -> int:
    """kappa(h) by vertex-split max-flow over non-adjacent pairs.

    Convention: removal that leaves a single vertex counts as
    disconnection, so kappa(K_n) = n - 1.  It suffices to examine pairs
    (v0, u) for u non-adjacent to a minimum-degree vertex v0, plus
    non-adjacent pairs inside N(v0): every minimum cut either misses v0
    (then it separates v0 from some non-neighbor) or contains it (then
    it separates two of its neighbors).
    """
    n = h.n
    if n < 2:
        raise ValueError("connectivity needs >= 2 vertices")
    if n > cap:
        raise ValueError(f"exact connectivity capped at {cap} vertices (got {n})")
    if h.m == n * (n - 1) // 2:
        return n - 1
    # Disconnected graphs have kappa 0.
    dist, _, _ = csr_bfs(h.indptr, h.indices,
                         np.asarray([0], dtype=np.int32),
                         np.zeros(n, dtype=np.uint8), -1, -1)
    if (dist < 0).any():
        return 0

    v0 = int(np.argmin(h.degrees))
    nbrs = [int(v) for v in h.neighbors(v0)]
    nbr_set = set(nbrs)
    pairs = [(v0, u) for u in range(n) if u != v0 and u not in nbr_set]
    for i in range(len(nbrs)):
        for j in range(i + 1, len(nbrs)):
            if not h.has_edge(nbrs[i], nbrs[j]):
                pairs.append((nbrs[i], nbrs[j]))

    best = n - 1
    for s, t in pairs:
        best = min(best, _local_connectivity(h, s, t, best))
        if best == 0:
            break
    return best


def _local_connectivity(h: Graph, s: int, t: int, limit: int) -> int:
    """Minimum s-t vertex separator size for non-adjacent s, t.

    Unit-capacity max flow on the vertex-split digraph (v_in = 2v,
    v_out = 2v + 1), by BFS augmentation; gives up early at `limit`
    since only the minimum over pairs matters.
    """
    n = h.n
    inf = n + 1
    res: dict[int, dict[int, int]] = {}

    def add(a: int, b: int, c: int) -> None:
        res.setdefault(a, {})[b] = res.setdefault(a, {}).get(b, 0) + c
        res.setdefault(b, {}).setdefault(a, 0)

    for v in range(n):
        add(2 * v, 2 * v + 1, 1 if v not in (s, t) else inf)
    for u, v in h.edges():
        add(2 * u + 1, 2 * v, inf)
        add(2 * v + 1, 2 * u, inf)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        prev = {source: -1}
        queue = [source]
        qi = 0
        while qi < len(queue) and sink not in prev:
            a = queue[qi]
            qi += 1
            for b, c in res[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            break
        b = sink
        while b != source:
            a = prev[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        flow += 1
    return flow


def predicted_connectivity(h: Graph, c_con: float) -> float:
    """The connectivity lower bound c_con * min(delta(h), sqrt(N))."""
    return c_con * min(h.min_degree(), math.sqrt(h.n))
