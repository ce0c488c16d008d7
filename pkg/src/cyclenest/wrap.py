"""Outer-cycle construction around a given cycle.

Both wrap modes assign each cycle vertex x_i two distinct external
terminals (a_i^-, a_i^+) and join a_i^+ to a_{i+1}^- by connector
paths that avoid the cycle, all terminals, and each other.  The outer
cycle x_1 a_1^+ Q_1 a_2^- x_2 ... x_l a_l^+ Q_l a_1^- x_1 then visits
V(C) in the original cyclic order and uses no edge with both endpoints
inside V(C).

Controlled mode builds the connectors one at a time with the short-
connection machinery (length-capped); linked mode needs pairwise
vertex-disjoint connectors inside h - V(C) and searches for them by
randomized sequential construction with restarts, falling back to
bounded exhaustive search on tiny instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .connect import ConnectionBudget, short_connect
from .cycles import Cycle, cyclic_order_agrees
from .errors import (LinkageError, NoShortConnectionError,
                     TerminalStarvationError, WrapError)
from .graph import Graph
from .rng import entropy, stream


@dataclass
class WrapBudget:
    """Scale constants and restart limits for the wrapping routines."""

    b_cw: float = 8.0
    b_lw: float = 8.0
    restarts: int = 32          # controlled mode: terminal re-draws
    linked_redraws: int = 32    # linked mode: terminal re-draws
    linked_shuffles: int = 8    # linked mode: segment orders per re-draw
    exhaustive_max_len: int = 4
    exhaustive_max_n: int = 64
    exhaustive_node_budget: int = 1_000_000

    def __post_init__(self):
        if self.b_cw < 1 or self.b_lw < 1:
            raise ValueError("scale constants must be >= 1")


@dataclass
class TerminalAssignment:
    """Per cycle-vertex ordered pair (a_i^-, a_i^+), globally distinct."""

    minus: list[int]
    plus: list[int]

    def all_terminals(self) -> list[int]:
        return self.minus + self.plus

    def to_json(self) -> dict:
        return {"minus": self.minus, "plus": self.plus}


def choose_terminals(h: Graph, c: Cycle, rng_seed) -> TerminalAssignment:
    """Greedily assign two distinct external neighbors to every x_i.

    Works in cycle-index order; the selection among the available
    neighbors is seeded-random so restarts explore different
    assignments.  Raises TerminalStarvationError when some x_i has
    fewer than two available neighbors left.
    """
    rng = stream(rng_seed)
    vset = c.vertex_set()
    used: set[int] = set()
    minus: list[int] = []
    plus: list[int] = []
    for i, x in enumerate(c.vertices):
        avail = sorted(set(int(v) for v in h.neighbors(x)) - vset - used)
        if len(avail) < 2:
            raise TerminalStarvationError(
                f"terminal starvation at x_{i + 1} (vertex {x}): "
                f"{len(avail)} available neighbors", x)
        pick = rng.choice(len(avail), size=2, replace=False)
        a_minus, a_plus = avail[int(pick[0])], avail[int(pick[1])]
        minus.append(a_minus)
        plus.append(a_plus)
        used.add(a_minus)
        used.add(a_plus)
    return TerminalAssignment(minus, plus)


@dataclass
class WrapResult:
    """A successful wrap: the outer cycle plus its construction record."""

    cycle: Cycle
    mode: str
    terminals: TerminalAssignment
    segments: list[list[int]]       # connector paths, terminal to terminal
    restarts_used: int
    scale_ok: bool
    record: dict = field(default_factory=dict)

    @property
    def segment_lengths(self) -> list[int]:
        return [len(s) - 1 for s in self.segments]

    def to_json(self) -> dict:
        return {
            "cycle": list(self.cycle.vertices),
            "length": len(self.cycle),
            "mode": self.mode,
            "terminals": self.terminals.to_json(),
            "segment_lengths": self.segment_lengths,
            "restarts_used": self.restarts_used,
            "theoretical_preconditions_held": self.scale_ok,
            **self.record,
        }


def _sigma(h: Graph) -> float:
    return min(h.min_degree(), math.sqrt(h.n))


def _reject_oversized(h: Graph, c: Cycle) -> None:
    # 2l terminals plus the cycle itself need 3l vertices before any
    # connector interiors exist.
    if 3 * len(c) > h.n:
        raise WrapError(
            f"cycle of length {len(c)} leaves no room for terminals in a "
            f"{h.n}-vertex host (3l > N)")


def _assemble(h: Graph, c: Cycle, segments: list[list[int]]) -> Cycle:
    vertices: list[int] = []
    for i in range(len(c)):
        vertices.append(c.vertices[i])
        vertices.extend(segments[i])
    return Cycle(h, vertices)


def _check_postconditions(h: Graph, c: Cycle, outer: Cycle,
                          length_cap: float | None) -> None:
    """Independent re-verification; construction is never trusted."""
    vset = c.vertex_set()
    if not vset <= outer.vertex_set():
        raise AssertionError("wrap lost cycle vertices")
    if not cyclic_order_agrees(outer, c):
        raise AssertionError("wrap broke the cyclic order")
    ov = outer.vertices
    for i in range(len(ov)):
        u, v = ov[i], ov[(i + 1) % len(ov)]
        if u in vset and v in vset:
            raise AssertionError(
                f"outer cycle uses edge ({u}, {v}) inside V(C)")
    if length_cap is not None and len(outer) > length_cap + 1e-9:
        raise AssertionError(
            f"outer cycle length {len(outer)} exceeds cap {length_cap}")


def controlled_wrap(h: Graph, c: Cycle, budget: WrapBudget,
                    conn: ConnectionBudget, rng_seed: int) -> WrapResult:
    """Wrap c with an outer cycle of length at most B_cw * l * R.

    Connectors Q_i: a_i^+ -> a_{i+1}^- are built one at a time through
    the short-connection routine, forbidding V(C), every terminal, and
    the interiors of the previous connectors.  Connection failures
    trigger fresh terminal draws, up to the restart budget.
    """
    _reject_oversized(h, c)
    ell = len(c)
    scale_ok = _sigma(h) >= budget.b_cw * ell * conn.r
    vset = c.vertex_set()
    last_failure = "terminal starvation on every draw"
    for attempt in range(budget.restarts):
        try:
            terms = choose_terminals(h, c, entropy(rng_seed, attempt))
        except TerminalStarvationError as exc:
            last_failure = str(exc)
            continue
        core = vset | set(terms.all_terminals())
        interiors: set[int] = set()
        segments: list[list[int]] = []
        failed_at = -1
        for i in range(ell):
            a_from = terms.plus[i]
            a_to = terms.minus[(i + 1) % ell]
            forbidden = (core - {a_from, a_to}) | interiors
            try:
                out = short_connect(h, [a_from], [a_to], forbidden, conn.t)
            except NoShortConnectionError:
                failed_at = i
                break
            segments.append(out.path)
            interiors.update(out.path[1:-1])
        if failed_at >= 0:
            last_failure = f"wrap failed at segment {failed_at + 1}"
            continue
        outer = _assemble(h, c, segments)
        max_q = max(len(s) - 1 for s in segments)
        assert len(outer) <= 3 * ell + ell * max_q
        cap = budget.b_cw * ell * conn.r if scale_ok else None
        _check_postconditions(h, c, outer, cap)
        return WrapResult(
            cycle=outer, mode="controlled", terminals=terms,
            segments=segments, restarts_used=attempt, scale_ok=scale_ok,
            record={"length_cap": cap})
    raise WrapError(
        f"{last_failure} after {budget.restarts} terminal draws",
        diagnostics={"mode": "controlled", "cycle_length": ell,
                     "last_failure": last_failure})


def linked_wrap(h: Graph, c: Cycle, budget: WrapBudget,
                rng_seed: int) -> WrapResult:
    """Wrap c using pairwise vertex-disjoint connectors in h - V(C).

    Strategy: sequential shortest paths with accumulating forbidden
    interiors, over shuffled segment orders and fresh terminal draws;
    if every restart fails, bounded exhaustive search is attempted for
    l <= exhaustive_max_len and |V(h)| <= exhaustive_max_n.
    """
    _reject_oversized(h, c)
    ell = len(c)
    scale_ok = _sigma(h) >= budget.b_lw * ell
    vset = c.vertex_set()
    last_failure = "terminal starvation on every draw"
    first_terms: TerminalAssignment | None = None
    for draw in range(budget.linked_redraws):
        try:
            terms = choose_terminals(h, c, entropy(rng_seed, draw))
        except TerminalStarvationError as exc:
            last_failure = str(exc)
            continue
        if first_terms is None:
            first_terms = terms
        core = vset | set(terms.all_terminals())
        for shuffle in range(budget.linked_shuffles):
            rng = stream(rng_seed, draw, shuffle)
            order = [int(i) for i in rng.permutation(ell)]
            segments: dict[int, list[int]] = {}
            interiors: set[int] = set()
            ok = True
            for i in order:
                a_from = terms.plus[i]
                a_to = terms.minus[(i + 1) % ell]
                forbidden = (core - {a_from, a_to}) | interiors
                try:
                    out = short_connect(h, [a_from], [a_to], forbidden, h.n)
                except NoShortConnectionError:
                    ok = False
                    last_failure = f"no disjoint path for segment {i + 1}"
                    break
                segments[i] = out.path
                interiors.update(out.path[1:-1])
            if ok:
                seg_list = [segments[i] for i in range(ell)]
                outer = _assemble(h, c, seg_list)
                _check_postconditions(h, c, outer, None)
                return WrapResult(
                    cycle=outer, mode="linked", terminals=terms,
                    segments=seg_list,
                    restarts_used=draw * budget.linked_shuffles + shuffle,
                    scale_ok=scale_ok,
                    record={"strategy": "sequential", "order": order})

    if (first_terms is not None and ell <= budget.exhaustive_max_len
            and h.n <= budget.exhaustive_max_n):
        seg_list = _disjoint_paths_exhaustive(
            h, c, first_terms, budget.exhaustive_node_budget)
        if seg_list is not None:
            outer = _assemble(h, c, seg_list)
            _check_postconditions(h, c, outer, None)
            return WrapResult(
                cycle=outer, mode="linked", terminals=first_terms,
                segments=seg_list,
                restarts_used=budget.linked_redraws * budget.linked_shuffles,
                scale_ok=scale_ok,
                record={"strategy": "exhaustive", "order": list(range(ell))})
        last_failure += "; exhaustive search also failed"

    raise LinkageError(
        f"linkage failed: {last_failure}",
        diagnostics={"mode": "linked", "cycle_length": ell,
                     "redraws": budget.linked_redraws,
                     "shuffles": budget.linked_shuffles,
                     "last_failure": last_failure})


def _disjoint_paths_exhaustive(h: Graph, c: Cycle, terms: TerminalAssignment,
                               node_budget: int) -> list[list[int]] | None:
    """Backtracking search for the full disjoint connector system.

    Enumerates simple paths segment by segment (neighbors in ascending
    order) and backtracks across segments; gives up honestly once the
    expansion budget is exhausted.
    """
    ell = len(c)
    vset = c.vertex_set()
    core = vset | set(terms.all_terminals())
    pairs = [(terms.plus[i], terms.minus[(i + 1) % ell]) for i in range(ell)]
    budget_left = [node_budget]
    segments: list[list[int] | None] = [None] * ell
    used: set[int] = set()

    def paths_from(i: int):
        a, b = pairs[i]
        blocked = (core - {a, b}) | used
        stack: list[int] = [a]
        on_path = {a}

        def extend(v: int):
            if budget_left[0] <= 0:
                return
            budget_left[0] -= 1
            for w in h.neighbors(v):
                w = int(w)
                if w == b:
                    yield stack + [b]
                    continue
                if w in blocked or w in on_path:
                    continue
                stack.append(w)
                on_path.add(w)
                yield from extend(w)
                stack.pop()
                on_path.remove(w)

        yield from extend(a)

    def solve(i: int) -> bool:
        if i == ell:
            return True
        for path in paths_from(i):
            segments[i] = path
            interior = set(path[1:-1])
            used.update(interior)
            if solve(i + 1):
                return True
            used.difference_update(interior)
            segments[i] = None
            if budget_left[0] <= 0:
                return False
        return False

    if solve(0):
        return [list(s) for s in segments]  # type: ignore[arg-type]
    return None
