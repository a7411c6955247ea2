from collections import Counter
from math import factorial, prod

import numpy as np
import pytest
from scipy import stats

from eulertours.arborescence import count_arbs_rooted
from eulertours.errors import InvalidInput, InvalidTour, NotEulerian, TooLarge
from eulertours.euler import (
    EulerTour,
    TransitionSystem,
    best_count,
    check_tour,
    enumerate_tours,
    sample_tour_uniform,
    tour_to_ts,
    ts_to_tour,
)
from eulertours.graph import Multigraph

BOWTIE = Multigraph.from_pairs(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def test_best_examples(three_cycle, bidirected_triangle, double_arc_pair):
    assert best_count(three_cycle) == 1
    assert best_count(bidirected_triangle) == 3
    assert best_count(double_arc_pair) == 2
    assert best_count(BOWTIE) == 1


def test_best_identity_any_root():
    g = Multigraph.from_pairs(3, [(0, 1), (0, 1), (0, 2), (1, 0), (1, 0), (1, 2), (2, 1), (2, 0), (1, 1)])
    ordering = prod(factorial(d - 1) for d in g.out_degrees())
    assert {ordering * count_arbs_rooted(g, v) for v in range(g.n)} == {best_count(g)}
    assert best_count(g) == sum(1 for _ in enumerate_tours(g))


def test_isolated_vertices_ignored():
    g = Multigraph.from_pairs(4, [(1, 2), (2, 1)])
    assert best_count(g) == 1
    assert sample_tour_uniform(g, np.random.default_rng(0)).arcs == (0, 1)


def test_not_eulerian_raises():
    with pytest.raises(NotEulerian):
        best_count(Multigraph.from_pairs(2, [(0, 1)]))
    with pytest.raises(NotEulerian):
        next(enumerate_tours(Multigraph.from_pairs(4, [(0, 1), (1, 0), (2, 3), (3, 2)])))


def test_enumeration_guard():
    g = Multigraph.from_pairs(1, [(0, 0)] * 13)
    with pytest.raises(TooLarge):
        next(enumerate_tours(g))


def test_canonical_rotation():
    assert EulerTour.canonical([3, 1, 2, 0]).arcs == (0, 3, 1, 2)
    tours = list(enumerate_tours(Multigraph.from_pairs(1, [(0, 0)] * 3)))
    assert sorted(t.arcs for t in tours) == [(0, 1, 2), (0, 2, 1)]


def test_transition_system_round_trip(bidirected_triangle):
    for t in enumerate_tours(bidirected_triangle):
        ts = tour_to_ts(bidirected_triangle, t)
        ts.validate(bidirected_triangle)
        assert ts_to_tour(bidirected_triangle, ts) == t


def test_split_transition_system_is_not_a_tour(bidirected_triangle):
    # pair each in-arc with the reverse arc: three 2-cycles
    ts = TransitionSystem((1, 0, 3, 2, 5, 4))
    ts.validate(bidirected_triangle)
    assert ts_to_tour(bidirected_triangle, ts) is None
    assert ts.pairing(bidirected_triangle, 0) == {1: 0, 4: 5}


def test_invalid_inputs(bidirected_triangle):
    with pytest.raises(InvalidInput):
        TransitionSystem((0, 1)).validate(bidirected_triangle)
    with pytest.raises(InvalidInput):
        TransitionSystem((2, 0, 1, 3, 4, 5)).validate(bidirected_triangle)
    with pytest.raises(InvalidTour):
        check_tour(bidirected_triangle, EulerTour((0, 2, 1, 3, 4, 5)))
    with pytest.raises(InvalidTour):
        check_tour(bidirected_triangle, EulerTour((0, 1)))


@pytest.mark.parametrize(
    "pairs,n",
    [
        ([(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2)], 3),
        ([(0, 1), (1, 2), (2, 0), (0, 2), (2, 1), (1, 0), (0, 0), (1, 1)], 3),
        ([(0, 1), (0, 1), (1, 0), (1, 0), (0, 0)], 2),
    ],
)
def test_sampler_uniform(pairs, n):
    g = Multigraph.from_pairs(n, pairs)
    tours = {t.arcs for t in enumerate_tours(g)}
    rng = np.random.default_rng(len(pairs))
    draws = Counter()
    for _ in range(300 * len(tours)):
        t = sample_tour_uniform(g, rng)
        check_tour(g, t)
        draws[t.arcs] += 1
    assert set(draws) == tours
    if len(tours) > 1:
        assert stats.chisquare([draws[t] for t in tours]).pvalue > 0.001
