"""The directed configuration model.

Vertex v owns the contiguous block of out-points (and, separately, in-points)
``[d_0 + ... + d_{v-1}, d_0 + ... + d_v)``. A configuration is a perfect
matching out-point -> in-point, i.e. a permutation of ``range(m)``.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from math import prod

import numpy as np

from eulertours import kernels
from eulertours.errors import AttemptsExhausted, InvalidInput, TooLarge
from eulertours.graph import DegreeSequence, Multigraph, is_eulerian

ENUMERATION_MAX_M = 10
FOREST_BRUTEFORCE_MAX_N = 6
FOREST_BRUTEFORCE_MAX_POINTS = 10


@dataclass(frozen=True)
class Configuration:
    degrees: DegreeSequence
    matching: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "matching", tuple(int(k) for k in self.matching))
        if sorted(self.matching) != list(range(self.degrees.m)):
            raise InvalidInput("matching must be a permutation of the m points")

    def arc_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        owners = self.degrees.owners
        return owners, owners[np.asarray(self.matching, dtype=np.int64)]

    def to_json(self) -> str:
        return json.dumps({"degrees": list(self.degrees.degrees), "matching": list(self.matching)})

    @classmethod
    def from_json(cls, text: str) -> Configuration:
        obj = json.loads(text)
        return cls(DegreeSequence(obj["degrees"]), obj["matching"])


@dataclass(frozen=True)
class PartialConfig:
    """A partial matching: a set of (out-point, in-point) pairs, each point used once."""

    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        outs = [s for s, _ in self.pairs]
        ins = [t for _, t in self.pairs]
        if len(set(outs)) != len(outs) or len(set(ins)) != len(ins):
            raise InvalidInput("a point appears in more than one pair")


def sample_configuration(d: DegreeSequence, rng: np.random.Generator) -> Configuration:
    return Configuration(d, tuple(rng.permutation(d.m).tolist()))


def project(c: Configuration) -> Multigraph:
    """sigma(F): one arc per matched pair, arc id = out-point index."""
    src, dst = c.arc_arrays()
    return Multigraph.from_arrays(c.degrees.n, src, dst)


def is_simple(g: Multigraph) -> bool:
    loops, doubles = kernels.multiplicity_stats(g.n, g.src, g.dst)
    return loops == 0 and doubles == 0


def sample_simple_eulerian(
    d: DegreeSequence, rng: np.random.Generator, max_attempts: int
) -> tuple[Multigraph, int]:
    """Uniform connected simple graph with out-degrees ``d``, by rejection.

    Returns the graph and the number of configurations drawn (accepted one included).
    """
    if max_attempts < 1:
        raise InvalidInput("max_attempts must be at least 1")
    owners = d.owners
    n = d.n
    for attempt in range(1, max_attempts + 1):
        dst = owners[rng.permutation(d.m)]
        if kernels.multiplicity_stats(n, owners, dst) != (0, 0):
            continue
        g = Multigraph.from_arrays(n, owners, dst)
        if is_eulerian(g):
            return g, attempt
    raise AttemptsExhausted(max_attempts)


def enumerate_configurations(d: DegreeSequence) -> Iterator[Configuration]:
    if d.m > ENUMERATION_MAX_M:
        raise TooLarge(f"configuration enumeration limited to m <= {ENUMERATION_MAX_M}")
    for perm in itertools.permutations(range(d.m)):
        yield Configuration(d, perm)


def falling_factorial(a: int, k: int) -> int:
    """(a)_k = a (a-1) ... (a-k+1), with (a)_0 = 1."""
    if k < 0:
        raise InvalidInput("falling factorial needs k >= 0")
    return prod(range(a, a - k, -1))


def _check_forest_args(x, y, roots) -> tuple[list[int], list[int], frozenset[int]]:
    x = [int(v) for v in x]
    y = [int(v) for v in y]
    roots = frozenset(int(r) for r in roots)
    if len(x) != len(y):
        raise InvalidInput("x and y must have the same length")
    if not roots:
        raise InvalidInput("root set must be non-empty")
    if any(v < 0 for v in x + y):
        raise InvalidInput("point counts must be non-negative")
    if not roots <= set(range(len(x))):
        raise InvalidInput("roots must be vertices")
    return x, y, roots


def forest_config_count_formula(x: Iterable[int], y: Iterable[int], roots: Iterable[int]) -> int:
    """Configurations of in-directed spanning forests rooted at ``roots``.

    ``x[v]`` in-points and ``y[v]`` out-points at v. Closed form
    ``prod_{v not in R} y_v * sum_{v in R} x_v * (sum_v x_v - 1)_{n-|R|-1}``;
    when every vertex is a root the only forest is empty, counted once.
    """
    x, y, roots = _check_forest_args(x, y, roots)
    n = len(x)
    if len(roots) == n:
        return 1
    return (
        prod(y[v] for v in range(n) if v not in roots)
        * sum(x[v] for v in roots)
        * falling_factorial(sum(x) - 1, n - len(roots) - 1)
    )


def forest_config_count_bruteforce(x: Iterable[int], y: Iterable[int], roots: Iterable[int]) -> int:
    """Count forest configurations by enumerating in-point assignments.

    Every non-root vertex takes one unused in-point (fixing its parent); the
    assignment is kept when following parents from every vertex reaches a root.
    Out-point choices never affect the shape, so each kept assignment stands for
    ``prod_{v not in R} y_v`` partial matchings.
    """
    x, y, roots = _check_forest_args(x, y, roots)
    n = len(x)
    if n > FOREST_BRUTEFORCE_MAX_N or sum(x) > FOREST_BRUTEFORCE_MAX_POINTS:
        raise TooLarge(
            f"brute force limited to n <= {FOREST_BRUTEFORCE_MAX_N}, sum(x) <= {FOREST_BRUTEFORCE_MAX_POINTS}"
        )
    point_owner = [v for v in range(n) for _ in range(x[v])]
    children = [v for v in range(n) if v not in roots]
    out_choices = prod(y[v] for v in children)
    if out_choices == 0:
        return 0
    good = 0
    for points in itertools.permutations(range(len(point_owner)), len(children)):
        parent = dict(zip(children, (point_owner[p] for p in points)))
        if all(_reaches_root(v, parent, roots, n) for v in children):
            good += 1
    return good * out_choices


def enumerate_forest_configs(x: Iterable[int], y: Iterable[int], roots: Iterable[int]) -> Iterator[PartialConfig]:
    """Yield every forest configuration as explicit (out-point, in-point) pairs.

    Points are numbered in per-vertex blocks: in-points by ``x``, out-points by ``y``.
    """
    x, y, roots = _check_forest_args(x, y, roots)
    n = len(x)
    if n > FOREST_BRUTEFORCE_MAX_N or sum(x) > FOREST_BRUTEFORCE_MAX_POINTS:
        raise TooLarge(
            f"enumeration limited to n <= {FOREST_BRUTEFORCE_MAX_N}, sum(x) <= {FOREST_BRUTEFORCE_MAX_POINTS}"
        )
    in_owner = [v for v in range(n) for _ in range(x[v])]
    out_start = list(itertools.accumulate([0] + y))
    children = [v for v in range(n) if v not in roots]
    for points in itertools.permutations(range(len(in_owner)), len(children)):
        parent = dict(zip(children, (in_owner[p] for p in points)))
        if not all(_reaches_root(v, parent, roots, n) for v in children):
            continue
        out_ranges = [range(out_start[v], out_start[v + 1]) for v in children]
        for outs in itertools.product(*out_ranges):
            yield PartialConfig(frozenset(zip(outs, points)))


def _reaches_root(v: int, parent: dict[int, int], roots: frozenset[int], n: int) -> bool:
    for _ in range(n):
        if v in roots:
            return True
        v = parent[v]
    return v in roots
