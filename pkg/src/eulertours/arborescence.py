"""Counting, enumerating and uniformly sampling arborescences (in-trees)."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from eulertours import kernels
from eulertours.errors import InvalidInput, NoArborescence, TooLarge
from eulertours.graph import Multigraph

ENUMERATION_MAX_N = 8
ENUMERATION_MAX_M = 16
DEFAULT_WALK_BUDGET = 10_000_000


@dataclass(frozen=True)
class Arborescence:
    """Spanning in-tree: ``parent_arc[v]`` is v's tree arc id, ``None`` at the root."""

    root: int
    parent_arc: tuple[int | None, ...]

    def arc_ids(self) -> frozenset[int]:
        return frozenset(a for a in self.parent_arc if a is not None)

    def is_valid_for(self, g: Multigraph) -> bool:
        if len(self.parent_arc) != g.n or self.parent_arc[self.root] is not None:
            return False
        for v, a in enumerate(self.parent_arc):
            if v == self.root:
                continue
            if a is None or not (0 <= a < g.m) or g.arcs[a].source != v:
                return False
        for v in range(g.n):
            u, steps = v, 0
            while u != self.root:
                u = g.arcs[self.parent_arc[u]].target
                steps += 1
                if steps > g.n:
                    return False
        return True


def _check_root(g: Multigraph, v: int) -> None:
    if g.n < 1:
        raise InvalidInput("graph has no vertices")
    if not 0 <= v < g.n:
        raise InvalidInput(f"root {v} out of range for n={g.n}")


def count_arbs_rooted(g: Multigraph, v: int) -> int:
    """|ARBS(g, v)| as the root-deleted cofactor of the out-degree Laplacian."""
    _check_root(g, v)
    return kernels.arborescence_count(g.n, g.src, g.dst, v)


def count_arbs_total(g: Multigraph) -> int:
    return sum(count_arbs_rooted(g, v) for v in range(g.n))


def enumerate_arbs(g: Multigraph, v: int) -> Iterator[Arborescence]:
    """Yield every arborescence rooted at ``v`` by backtracking over out-arc choices."""
    _check_root(g, v)
    if g.n > ENUMERATION_MAX_N or g.m > ENUMERATION_MAX_M:
        raise TooLarge(f"enumeration limited to n <= {ENUMERATION_MAX_N}, m <= {ENUMERATION_MAX_M}")
    root = v
    choices = [[a for a in g.out_arcs[u] if g.arcs[a].target != u] for u in range(g.n)]
    order = [u for u in range(g.n) if u != root]
    parent: list[int | None] = [None] * g.n
    target = [a.target for a in g.arcs]

    def closes_cycle(u: int) -> bool:
        w = target[parent[u]]
        while w != root and parent[w] is not None:
            if w == u:
                return True
            w = target[parent[w]]
        return w == u

    def rec(pos: int) -> Iterator[Arborescence]:
        if pos == len(order):
            yield Arborescence(root, tuple(parent))
            return
        u = order[pos]
        for a in choices[u]:
            parent[u] = a
            if not closes_cycle(u):
                yield from rec(pos + 1)
        parent[u] = None

    yield from rec(0)


def _reaches_root(g: Multigraph, root: int) -> bool:
    preds: list[list[int]] = [[] for _ in range(g.n)]
    for a in g.arcs:
        preds[a.target].append(a.source)
    seen = {root}
    stack = [root]
    while stack:
        w = stack.pop()
        for u in preds[w]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.n


def sample_arb_uniform(
    g: Multigraph,
    v: int,
    rng: np.random.Generator,
    walk_budget: int = DEFAULT_WALK_BUDGET,
) -> Arborescence:
    """Uniform arborescence rooted at ``v`` by loop-erased random walks.

    Each step picks uniformly among the non-loop out-arc instances of the current
    vertex, so parallel arcs are weighted by multiplicity. ``walk_budget`` caps the
    total number of walk steps; exceeding it raises :class:`NoArborescence`.
    """
    _check_root(g, v)
    if not _reaches_root(g, v):
        raise NoArborescence(f"some vertex cannot reach root {v}")
    choices = [[a for a in g.out_arcs[u] if g.arcs[a].target != u] for u in range(g.n)]
    target = [a.target for a in g.arcs]
    in_tree = [False] * g.n
    in_tree[v] = True
    nxt: list[int | None] = [None] * g.n
    steps = 0
    for start in range(g.n):
        u = start
        while not in_tree[u]:
            opts = choices[u]
            # overwriting nxt[u] on revisits is exactly the loop erasure
            nxt[u] = opts[int(rng.integers(len(opts)))]
            u = target[nxt[u]]
            steps += 1
            if steps > walk_budget:
                raise NoArborescence(f"walk budget of {walk_budget} steps exhausted")
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = target[nxt[u]]
    nxt[v] = None
    return Arborescence(v, tuple(nxt))
