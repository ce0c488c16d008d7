"""Cycles, nested families, and the noncrossing cyclic-order checks.

A family C_1, ..., C_k (outermost first) is accepted when the vertex
sets form a containment chain, the edge sets are pairwise disjoint, and
reading each inner cycle's vertices along the next outer cycle gives the
inner cycle's own cyclic order, up to rotation and reversal.  Reversal
is allowed independently at each layer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph


class Cycle:
    """A simple cycle x_1 ... x_l (l >= 3) in a host graph."""

    __slots__ = ("vertices", "host")

    def __init__(self, host: Graph, vertices: Sequence[int]):
        vs = [int(v) for v in vertices]
        problem = cycle_defect(host, vs)
        if problem:
            raise ValueError(problem)
        self.vertices = tuple(vs)
        self.host = host

    def __len__(self) -> int:
        return len(self.vertices)

    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return sequence_cycle_edges(self.vertices)

    def __repr__(self) -> str:
        return f"Cycle({list(self.vertices)})"


def cycle_defect(g: Graph, vertices: Sequence[int]) -> str | None:
    """Why the sequence fails to be a cycle in g, or None if it is one."""
    if len(vertices) < 3:
        return f"cycle needs >= 3 vertices, got {len(vertices)}"
    if len(set(vertices)) != len(vertices):
        return "repeated vertex in cycle sequence"
    for v in vertices:
        if not 0 <= v < g.n:
            return f"vertex {v} out of range"
    for i in range(len(vertices)):
        u, v = vertices[i], vertices[(i + 1) % len(vertices)]
        if not g.has_edge(u, v):
            return f"missing edge ({u}, {v})"
    return None


def sequence_cycle_edges(vertices: Sequence[int]) -> frozenset[tuple[int, int]]:
    out = set()
    for i in range(len(vertices)):
        u, v = vertices[i], vertices[(i + 1) % len(vertices)]
        out.add((min(u, v), max(u, v)))
    return frozenset(out)


def _is_cyclic_rotation(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    doubled = list(b) + list(b)
    first = a[0]
    for i, x in enumerate(doubled[:len(b)]):
        if x == first and doubled[i:i + len(a)] == list(a):
            return True
    return False


def cyclic_sequences_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff a and b agree as cyclic sequences up to rotation and reversal."""
    return _is_cyclic_rotation(a, b) or _is_cyclic_rotation(list(reversed(a)), b)


def _inner_positions(outer: Cycle, inner: Cycle) -> dict[int, int]:
    pos = {v: i for i, v in enumerate(outer.vertices)}
    missing = [v for v in inner.vertices if v not in pos]
    if missing:
        raise ValueError(f"not nested: {missing} not on the outer cycle")
    return pos


def cyclic_order_agrees(outer: Cycle, inner: Cycle) -> bool:
    """Does the order induced by the outer cycle match the inner cycle?

    The inner vertices are read off in their cyclic order along the
    outer cycle and compared with the inner cycle's own sequence, up to
    rotation and reversal.  Raises when the inner cycle is not contained
    in the outer one.
    """
    pos = _inner_positions(outer, inner)
    induced = sorted(inner.vertices, key=pos.__getitem__)
    return cyclic_sequences_equal(induced, inner.vertices)


def crossing_oracle(outer: Cycle, inner: Cycle) -> bool:
    """Chord-interleaving check equivalent to cyclic_order_agrees.

    Places the inner edges on the circle of outer positions and reports
    True iff no two of them interleave.  Edges {a, b} and {c, d}
    interleave iff exactly one of c, d lies strictly between a and b in
    the cyclic order.
    """
    pos = _inner_positions(outer, inner)
    chords = []
    k = len(inner.vertices)
    for i in range(k):
        p = pos[inner.vertices[i]]
        q = pos[inner.vertices[(i + 1) % k]]
        chords.append((min(p, q), max(p, q)))
    for i in range(len(chords)):
        a, b = chords[i]
        for j in range(i + 1, len(chords)):
            c, d = chords[j]
            c_in = a < c < b
            d_in = a < d < b
            if c_in != d_in and c != a and c != b and d != a and d != b:
                return False
    return True


@dataclass
class LayerVerdict:
    """Outcome of the order check between consecutive layers i, i+1."""

    outer_index: int
    containment_ok: bool
    edge_disjoint_ok: bool
    order_ok: bool


@dataclass
class FamilyVerdict:
    """Itemized outcome of verify_family; passed iff all four checks hold."""

    cycles_valid: bool
    containment: bool
    edge_disjoint: bool
    order_agrees: bool
    failures: list[str] = field(default_factory=list)
    layers: list[LayerVerdict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.cycles_valid and self.containment
                and self.edge_disjoint and self.order_agrees)

    def to_json(self) -> dict:
        return {
            "cycles_valid": self.cycles_valid,
            "containment": self.containment,
            "edge_disjoint": self.edge_disjoint,
            "order_agrees": self.order_agrees,
            "pass": self.passed,
            "failures": list(self.failures),
        }


@dataclass
class NestedFamily:
    """Cycles C_1 ... C_k, outermost first."""

    cycles: list[Cycle]

    def to_json(self) -> dict:
        return {"cycles": [list(c.vertices) for c in self.cycles]}

    @staticmethod
    def from_json(g: Graph, data: dict) -> "NestedFamily":
        return NestedFamily([Cycle(g, vs) for vs in data["cycles"]])


def verify_family(g: Graph, family) -> FamilyVerdict:
    """Check a family of vertex sequences against all nesting conditions.

    Accepts a NestedFamily or a plain list of vertex sequences
    (outermost first).  Failures are reported in the verdict, never
    raised.
    """
    if isinstance(family, NestedFamily):
        seqs = [list(c.vertices) for c in family.cycles]
    else:
        seqs = [list(c) for c in family]

    verdict = FamilyVerdict(True, True, True, True)

    cycles: list[Cycle | None] = []
    for i, seq in enumerate(seqs):
        problem = cycle_defect(g, seq)
        if problem:
            verdict.cycles_valid = False
            verdict.failures.append(f"cycle {i + 1}: {problem}")
            cycles.append(None)
        else:
            cycles.append(Cycle(g, seq))

    for i in range(len(seqs) - 1):
        outer_set = set(seqs[i])
        if not set(seqs[i + 1]) <= outer_set:
            verdict.containment = False
            verdict.failures.append(
                f"V(C_{i + 2}) is not contained in V(C_{i + 1})")

    edge_sets = [sequence_cycle_edges(s) if len(s) >= 3 else frozenset() for s in seqs]
    for i in range(len(seqs)):
        for j in range(i + 1, len(seqs)):
            shared = edge_sets[i] & edge_sets[j]
            if shared:
                verdict.edge_disjoint = False
                verdict.failures.append(
                    f"cycles {i + 1} and {j + 1} share edges, e.g. {sorted(shared)[0]}")

    for i in range(len(seqs) - 1):
        outer, inner = cycles[i], cycles[i + 1]
        if outer is None or inner is None:
            continue
        if not inner.vertex_set() <= outer.vertex_set():
            continue  # already reported as a containment failure
        ok = cyclic_order_agrees(outer, inner)
        disjoint = not (edge_sets[i] & edge_sets[i + 1])
        verdict.layers.append(LayerVerdict(i, True, disjoint, ok))
        if not ok:
            verdict.order_agrees = False
            verdict.failures.append(
                f"cyclic order of C_{i + 2} disagrees with the order induced by C_{i + 1}")

    return verdict
