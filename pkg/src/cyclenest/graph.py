"""Immutable simple undirected graphs with compact CSR adjacency.

Vertices are dense integer ids 0..n-1.  A graph is never mutated after
construction; deletions are expressed by passing forbidden vertex/edge
masks into the operations that support them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GraphFormatError
from ._kernels import csr_bfs


class Graph:
    """Simple undirected graph stored as a sorted CSR adjacency.

    Neighbor lists are sorted ascending, which makes edge lookups a
    binary search and all traversals deterministic.
    """

    __slots__ = ("n", "indptr", "indices", "m", "_degrees")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        pairs = canonical_edges(n, edges)
        self.n = n
        self.m = len(pairs)
        if self.m:
            arr = np.asarray(pairs, dtype=np.int32)
            heads = np.concatenate([arr[:, 0], arr[:, 1]])
            tails = np.concatenate([arr[:, 1], arr[:, 0]])
            order = np.lexsort((tails, heads))
            self.indices = np.ascontiguousarray(tails[order])
            deg = np.bincount(heads, minlength=n).astype(np.int64)
        else:
            self.indices = np.empty(0, dtype=np.int32)
            deg = np.zeros(n, dtype=np.int64)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=self.indptr[1:])
        self._degrees = deg

    # -- basic accessors -------------------------------------------------

    def degree(self, v: int) -> int:
        return int(self._degrees[v])

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        return i < len(row) and row[i] == v

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, sorted lexicographically."""
        heads = np.repeat(np.arange(self.n, dtype=np.int32), np.diff(self.indptr))
        keep = heads < self.indices
        return np.stack([heads[keep], self.indices[keep]], axis=1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as (u, v) with u < v, in sorted order."""
        for u, v in self.edge_array():
            yield (int(u), int(v))

    def min_degree(self) -> int:
        return int(self._degrees.min()) if self.n else 0

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def canonical_edges(n: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Normalize an edge iterable to sorted unique (u, v) pairs with u < v."""
    seen = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
        if (u, v) in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
    return sorted(seen)


# -- vertex/edge set helpers ---------------------------------------------

def as_vertex_mask(g: Graph, vertices: Iterable[int] | np.ndarray | None) -> np.ndarray:
    """Boolean membership mask over g's vertices."""
    mask = np.zeros(g.n, dtype=np.uint8)
    if vertices is None:
        return mask
    for v in vertices:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
        mask[v] = 1
    return mask


def mask_to_sorted_ids(mask: np.ndarray) -> list[int]:
    return [int(v) for v in np.flatnonzero(mask)]


def canonical_edge_set(edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    """Edge set with every pair stored as (min, max)."""
    return frozenset((min(u, v), max(u, v)) for u, v in edges)


def validate_edge_set(g: Graph, f: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    fs = canonical_edge_set(f)
    for u, v in fs:
        if not g.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the host graph")
    return fs


# -- spec operations ------------------------------------------------------

def average_degree(g: Graph) -> Fraction:
    """Average degree 2*m/n as an exact rational."""
    if g.n == 0:
        raise ValueError("empty graph")
    return Fraction(2 * g.m, g.n)


def external_neighborhood(
    g: Graph,
    u: Iterable[int],
    f: Iterable[tuple[int, int]] = (),
) -> set[int]:
    """Vertices outside u adjacent to u through an edge not in f."""
    u = set(int(x) for x in u)
    if not u:
        raise ValueError("u must be nonempty")
    fs = canonical_edge_set(f)
    out: set[int] = set()
    for x in u:
        for y in g.neighbors(x):
            y = int(y)
            if y in u:
                continue
            if fs and (min(x, y), max(x, y)) in fs:
                continue
            out.add(y)
    return out


@dataclass
class InducedSubgraph:
    """An induced subgraph together with a bidirectional id remap."""

    graph: Graph
    old_of_new: np.ndarray  # old_of_new[new_id] = original id
    new_of_old: dict[int, int]

    def lift_vertices(self, new_ids: Sequence[int]) -> list[int]:
        return [int(self.old_of_new[v]) for v in new_ids]


def induced_subgraph(g: Graph, s: Iterable[int]) -> InducedSubgraph:
    """G[s] with vertices renumbered 0..|s|-1 in ascending original id."""
    ids = sorted(set(int(x) for x in s))
    if not ids:
        raise ValueError("s must be nonempty")
    old_of_new = np.asarray(ids, dtype=np.int64)
    new_of_old = {old: new for new, old in enumerate(ids)}
    edges = []
    for old_u in ids:
        for old_v in g.neighbors(old_u):
            old_v = int(old_v)
            if old_u < old_v and old_v in new_of_old:
                edges.append((new_of_old[old_u], new_of_old[old_v]))
    return InducedSubgraph(Graph(len(ids), edges), old_of_new, new_of_old)


@dataclass
class BfsResult:
    """Layered reachability with parent links.

    dist[v] and parent[v] are -1 for unreached vertices; layer t holds
    the vertices at distance exactly t from the sources.
    """

    dist: np.ndarray
    parent: np.ndarray
    completed_depth: int

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.completed_depth + 1)]
        for v in np.flatnonzero(self.dist >= 0):
            d = int(self.dist[v])
            if d <= self.completed_depth:
                out[d].append(int(v))
        return out

    def path_to(self, v: int) -> list[int]:
        """Path from the nearest source to v via parent links."""
        if self.dist[v] < 0:
            raise ValueError(f"vertex {v} was not reached")
        path = [int(v)]
        while self.parent[path[-1]] >= 0:
            path.append(int(self.parent[path[-1]]))
        path.reverse()
        return path


def bfs_layers(
    g: Graph,
    sources: Iterable[int],
    forbidden: Iterable[int] = (),
    max_depth: int = -1,
) -> BfsResult:
    """BFS from a source set in g minus the forbidden vertices.

    Ties in parent links go to the smallest vertex id (sorted adjacency
    plus FIFO order), which keeps extracted paths deterministic.
    """
    src = sorted(set(int(x) for x in sources))
    if not src:
        raise ValueError("sources must be nonempty")
    fmask = as_vertex_mask(g, forbidden)
    for v in src:
        if fmask[v]:
            raise ValueError(f"source {v} is forbidden")
    dist, parent, depth = csr_bfs(
        g.indptr, g.indices,
        np.asarray(src, dtype=np.int32), fmask,
        max_depth, -1,
    )
    return BfsResult(dist, parent, depth)


# -- path checks ----------------------------------------------------------

def is_path(g: Graph, vertices: Sequence[int]) -> bool:
    """True iff the sequence is a simple path in g (length 0 allowed)."""
    if len(vertices) == 0:
        return False
    if len(set(vertices)) != len(vertices):
        return False
    return all(g.has_edge(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1))


# -- edge-list interchange format ------------------------------------------
#
# First line "N M", then M lines "u v" with 0 <= u < v < N; '#' starts a
# comment line.  This is the interchange format for every CLI command.

def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        rows = [ln.strip() for ln in fh]
    rows = [r for r in rows if r and not r.startswith("#")]
    if not rows:
        raise GraphFormatError(f"{path}: empty file")
    head = rows[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"{path}: header must be 'N M'")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise GraphFormatError(f"{path}: expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for r in rows[1:]:
        parts = r.split()
        if len(parts) != 2:
            raise GraphFormatError(f"{path}: bad edge line {r!r}")
        u, v = int(parts[0]), int(parts[1])
        if not u < v:
            raise GraphFormatError(f"{path}: edges must satisfy u < v, got {r!r}")
        edges.append((u, v))
    try:
        return Graph(n, edges)
    except GraphFormatError as exc:
        raise GraphFormatError(f"{path}: {exc}") from exc


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in g.edges():
            fh.write(f"{u} {v}\n")
