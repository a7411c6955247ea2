"""Directed multigraphs with identity-bearing arcs."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import comb
from pathlib import Path

import numpy as np

from eulertours import kernels
from eulertours.errors import GraphFormatError, InvalidInput


@dataclass(frozen=True)
class Arc:
    id: int
    source: int
    target: int


@dataclass(frozen=True)
class DegreeSequence:
    """Positive out-degree (= in-degree) sequence d_1..d_n."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if not self.degrees:
            raise InvalidInput("degree sequence must be non-empty")
        if any(d < 1 for d in self.degrees):
            raise InvalidInput(f"degrees must be positive, got {self.degrees}")

    @classmethod
    def regular(cls, d: int, n: int) -> DegreeSequence:
        return cls((d,) * n)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return sum(self.degrees)

    @property
    def m2(self) -> int:
        return sum(d * d for d in self.degrees)

    @cached_property
    def owners(self) -> np.ndarray:
        """owners[k] is the vertex whose point block contains point k."""
        return np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)


@dataclass(frozen=True, eq=False)
class Multigraph:
    """Directed multigraph on vertices 0..n-1; arc ``k`` of ``arcs`` has id ``k``."""

    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInput("vertex count must be non-negative")
        for k, arc in enumerate(self.arcs):
            if arc.id != k:
                raise InvalidInput(f"arc at position {k} has id {arc.id}")
            if not (0 <= arc.source < self.n and 0 <= arc.target < self.n):
                raise InvalidInput(f"arc {k} ({arc.source}->{arc.target}) out of range for n={self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> Multigraph:
        return cls(n, tuple(Arc(k, int(s), int(t)) for k, (s, t) in enumerate(pairs)))

    @classmethod
    def from_arrays(cls, n: int, src, dst) -> Multigraph:
        return cls.from_pairs(n, zip(np.asarray(src).tolist(), np.asarray(dst).tolist()))

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.n, self.arcs))

    def __repr__(self):
        return f"Multigraph(n={self.n}, arcs={[(a.source, a.target) for a in self.arcs]})"

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def src(self) -> np.ndarray:
        return np.fromiter((a.source for a in self.arcs), dtype=np.int64, count=self.m)

    @cached_property
    def dst(self) -> np.ndarray:
        return np.fromiter((a.target for a in self.arcs), dtype=np.int64, count=self.m)

    @cached_property
    def mult(self) -> Counter:
        """(u, v) -> number of arcs u -> v."""
        return Counter((a.source, a.target) for a in self.arcs)

    @cached_property
    def out_arcs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for a in self.arcs:
            out[a.source].append(a.id)
        return tuple(map(tuple, out))

    @cached_property
    def in_arcs(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for a in self.arcs:
            inc[a.target].append(a.id)
        return tuple(map(tuple, inc))

    def out_degree(self, v: int) -> int:
        return len(self.out_arcs[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_arcs[v])

    def out_degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.out_arcs)


def is_balanced(g: Multigraph) -> bool:
    return all(len(o) == len(i) for o, i in zip(g.out_arcs, g.in_arcs))


def _reaches_all(g: Multigraph, start: int, wanted: set[int]) -> bool:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for a in g.arcs:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return wanted <= seen


def is_eulerian(g: Multigraph) -> bool:
    """Balanced degrees and a single (weak = strong, when balanced) component of non-isolated vertices."""
    if not is_balanced(g):
        return False
    active = {v for v in range(g.n) if g.out_arcs[v]}
    if not active:
        return True
    return _reaches_all(g, min(active), active)


def count_loops(g: Multigraph) -> int:
    return sum(1 for a in g.arcs if a.source == a.target)


def count_double_arcs(g: Multigraph) -> int:
    """Unordered pairs of parallel non-loop arcs, summed over ordered vertex pairs."""
    return sum(comb(c, 2) for (u, v), c in g.mult.items() if u != v)


def count_short_cycles(g: Multigraph, i: int) -> int:
    """Number of directed i-cycles on i distinct vertices, parallel arcs giving distinct cycles."""
    if i < 1:
        raise InvalidInput("cycle length must be at least 1")
    return kernels.cycle_counts(g.n, g.src, g.dst, i)[i - 1]


def parse_graph(text: str) -> Multigraph:
    """Parse the ``n m`` header followed by ``m`` lines of ``src dst``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphFormatError("empty graph text")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise GraphFormatError(f"bad header {lines[0]!r}; expected 'n m'") from exc
    if n < 0 or m < 0:
        raise GraphFormatError("n and m must be non-negative")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header promises {m} arcs, found {len(lines) - 1}")
    pairs = []
    for lineno, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if len(toks) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'src dst', got {ln!r}")
        try:
            s, t = int(toks[0]), int(toks[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {ln!r}") from exc
        if not (0 <= s < n and 0 <= t < n):
            raise GraphFormatError(f"line {lineno}: vertex out of range [0, {n})")
        pairs.append((s, t))
    return Multigraph.from_pairs(n, pairs)


def format_graph(g: Multigraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{a.source} {a.target}" for a in g.arcs)
    return "\n".join(out) + "\n"


def read_graph(path) -> Multigraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Multigraph, path) -> None:
    Path(path).write_text(format_graph(g))
