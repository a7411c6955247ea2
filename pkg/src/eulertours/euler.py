"""Euler tours: BEST-theorem counting, transition systems, enumeration and sampling."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from math import factorial, prod

import numpy as np

from eulertours.arborescence import count_arbs_rooted, sample_arb_uniform
from eulertours.errors import InvalidInput, InvalidTour, NotEulerian, TooLarge
from eulertours.graph import Multigraph, is_eulerian

ENUMERATION_MAX_M = 12


@dataclass(frozen=True)
class TransitionSystem:
    """A pairing of In(v) with Out(v) at every vertex, stored arc-wise.

    ``succ[a]`` is the out-arc of ``target(a)`` paired with the in-arc ``a``.
    """

    succ: tuple[int, ...]

    def pairing(self, g: Multigraph, v: int) -> dict[int, int]:
        return {a: self.succ[a] for a in g.in_arcs[v]}

    def validate(self, g: Multigraph) -> None:
        if len(self.succ) != g.m:
            raise InvalidInput("transition system size does not match arc count")
        for v in range(g.n):
            image = sorted(self.succ[a] for a in g.in_arcs[v])
            if image != sorted(g.out_arcs[v]):
                raise InvalidInput(f"pairing at vertex {v} is not a bijection In(v) -> Out(v)")


@dataclass(frozen=True)
class EulerTour:
    """Cyclic arc sequence, rotated so the smallest arc id comes first."""

    arcs: tuple[int, ...]

    @classmethod
    def canonical(cls, arcs) -> EulerTour:
        arcs = tuple(arcs)
        if not arcs:
            return cls(())
        k = arcs.index(min(arcs))
        return cls(arcs[k:] + arcs[:k])

    def __len__(self) -> int:
        return len(self.arcs)


def _require_eulerian(g: Multigraph) -> None:
    if not is_eulerian(g):
        raise NotEulerian("graph is not Eulerian (unbalanced or disconnected)")


def best_count(g: Multigraph) -> int:
    """|ET(g)| = prod_u (d_u - 1)! * |ARBS(g, 0)|."""
    _require_eulerian(g)
    if g.m == 0:
        return 0
    # isolated vertices have no tours through them; drop them before the cofactor
    active = [v for v in range(g.n) if g.out_arcs[v]]
    if len(active) < g.n:
        relabel = {v: i for i, v in enumerate(active)}
        g = Multigraph.from_pairs(len(active), ((relabel[a.source], relabel[a.target]) for a in g.arcs))
    return prod(factorial(d - 1) for d in g.out_degrees()) * count_arbs_rooted(g, 0)


def ts_to_tour(g: Multigraph, ts: TransitionSystem) -> EulerTour | None:
    """The tour induced by ``ts``, or ``None`` when the arc permutation has several cycles."""
    if g.m == 0:
        return None
    seq = [0]
    a = ts.succ[0]
    while a != 0:
        seq.append(a)
        if len(seq) > g.m:
            raise InvalidInput("successor map is not a permutation")
        a = ts.succ[a]
    if len(seq) != g.m:
        return None
    return EulerTour(tuple(seq))


def check_tour(g: Multigraph, t: EulerTour) -> None:
    if sorted(t.arcs) != list(range(g.m)):
        raise InvalidTour("tour must use every arc exactly once")
    for k, a in enumerate(t.arcs):
        b = t.arcs[(k + 1) % g.m]
        if g.arcs[a].target != g.arcs[b].source:
            raise InvalidTour(f"arc {a} does not chain into arc {b}")


def tour_to_ts(g: Multigraph, t: EulerTour) -> TransitionSystem:
    check_tour(g, t)
    succ = [0] * g.m
    for k, a in enumerate(t.arcs):
        succ[a] = t.arcs[(k + 1) % g.m]
    return TransitionSystem(tuple(succ))


def enumerate_tours(g: Multigraph) -> Iterator[EulerTour]:
    """Every Euler tour once, each starting at arc 0 (its canonical rotation)."""
    if g.m > ENUMERATION_MAX_M:
        raise TooLarge(f"tour enumeration limited to m <= {ENUMERATION_MAX_M}")
    _require_eulerian(g)
    if g.m == 0:
        return
    source = [a.source for a in g.arcs]
    target = [a.target for a in g.arcs]
    used = [False] * g.m
    used[0] = True
    seq = [0]

    def rec() -> Iterator[EulerTour]:
        if len(seq) == g.m:
            if target[seq[-1]] == source[0]:
                yield EulerTour(tuple(seq))
            return
        for b in g.out_arcs[target[seq[-1]]]:
            if not used[b]:
                used[b] = True
                seq.append(b)
                yield from rec()
                seq.pop()
                used[b] = False

    yield from rec()


def sample_tour_uniform(g: Multigraph, rng: np.random.Generator) -> EulerTour:
    """Exactly uniform tour via the BEST bijection.

    A uniform arborescence toward the root (vertex 0 unless it is isolated) supplies
    each other vertex's last exit; the remaining exits are shuffled. At the root the
    smallest out-arc is pinned first so every rotation class arises exactly once.
    """
    _require_eulerian(g)
    if g.m == 0:
        raise InvalidInput("graph has no arcs")
    active = [v for v in range(g.n) if g.out_arcs[v]]
    root = active[0]
    if len(active) < g.n:
        # arborescences must span only the vertices the tour visits
        relabel = {v: i for i, v in enumerate(active)}
        h = Multigraph.from_pairs(len(active), ((relabel[a.source], relabel[a.target]) for a in g.arcs))
        tree = sample_arb_uniform(h, relabel[root], rng)
        last = {active[i]: a for i, a in enumerate(tree.parent_arc)}
    else:
        tree = sample_arb_uniform(g, root, rng)
        last = dict(enumerate(tree.parent_arc))

    exits: list[list[int]] = [[] for _ in range(g.n)]
    for v in active:
        outs = list(g.out_arcs[v])
        if v == root:
            first = min(outs)
            rest = [a for a in outs if a != first]
            exits[v] = [first] + [rest[i] for i in rng.permutation(len(rest))]
        else:
            tree_arc = last[v]
            rest = [a for a in outs if a != tree_arc]
            exits[v] = [rest[i] for i in rng.permutation(len(rest))] + [tree_arc]

    pos = [0] * g.n
    seq: list[int] = []
    u = root
    while pos[u] < len(exits[u]):
        a = exits[u][pos[u]]
        pos[u] += 1
        seq.append(a)
        u = g.arcs[a].target
    if len(seq) != g.m:  # pragma: no cover - impossible for an Eulerian graph
        raise AssertionError("BEST traversal did not cover every arc")
    return EulerTour.canonical(seq)
