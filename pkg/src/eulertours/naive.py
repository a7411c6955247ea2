"""Random transition systems as an Euler-tour sampler and approximate counter."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod

import numpy as np

from eulertours.errors import InvalidInput, NotEulerian
from eulertours.euler import EulerTour, TransitionSystem, best_count, ts_to_tour
from eulertours.graph import Multigraph, is_eulerian


def _require_eulerian(g: Multigraph) -> None:
    if not is_eulerian(g):
        raise NotEulerian("graph is not Eulerian (unbalanced or disconnected)")


def random_transition_system(g: Multigraph, rng: np.random.Generator) -> TransitionSystem:
    """Independent uniform pairing In(v) -> Out(v) at every vertex."""
    succ = [0] * g.m
    for ins, outs in zip(g.in_arcs, g.out_arcs):
        for a, k in zip(ins, rng.permutation(len(outs))):
            succ[a] = outs[k]
    return TransitionSystem(tuple(succ))


def sample_naive(g: Multigraph, rng: np.random.Generator) -> EulerTour | None:
    """One run of the naive sampler: a uniform tour with probability |ET|/prod d_v!, else None."""
    _require_eulerian(g)
    return ts_to_tour(g, random_transition_system(g, rng))


def approximate(g: Multigraph, kappa: int, rng: np.random.Generator) -> Fraction:
    """Fraction k/kappa of ``kappa`` naive runs that produced a tour."""
    if kappa < 1:
        raise InvalidInput("kappa must be at least 1")
    _require_eulerian(g)
    hits = sum(ts_to_tour(g, random_transition_system(g, rng)) is not None for _ in range(kappa))
    return Fraction(hits, kappa)


def transition_system_count(g: Multigraph) -> int:
    return prod(factorial(d) for d in g.out_degrees())


def acceptance_probability_exact(g: Multigraph) -> Fraction:
    _require_eulerian(g)
    return Fraction(best_count(g), transition_system_count(g))
