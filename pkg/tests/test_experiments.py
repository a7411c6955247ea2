import math
from fractions import Fraction

import numpy as np
import pytest

from eulertours import experiments as ex
from eulertours.errors import InvalidInput, TooLarge
from eulertours.graph import DegreeSequence


def test_theory_examples():
    th = ex.theory_moments(DegreeSequence.regular(2, 4))
    assert th.arbs_mean == 8
    th = ex.theory_moments(DegreeSequence([1, 1]))
    assert (th.arbs_mean, th.arbs_second_moment) == (1, 2)
    assert th.tours_second_moment_ratio is None and th.chebyshev_ratio is None
    th = ex.theory_moments(DegreeSequence.regular(2, 50))
    assert th.loops_mean == 2 and th.double_arcs_limit == Fraction(1, 2)
    assert th.cycle_means[2] == 2 and th.cycle_means[3] == Fraction(8, 3)
    assert th.weighted_cycle_means[2] == Fraction(3, 2)
    assert th.tours_second_moment_ratio == pytest.approx(2 * math.exp(-0.5))
    assert th.chebyshev_ratio == pytest.approx(math.sqrt(2 * math.exp(-0.5) - 1))
    assert th.tours_mean_limit == pytest.approx(math.e / 100 * 2**50)


def test_double_arc_exact_value_by_enumeration():
    from eulertours.configuration import enumerate_configurations, project
    from eulertours.graph import count_double_arcs, count_loops

    d = DegreeSequence([2, 2, 1])
    total = loops = doubles = 0
    for c in enumerate_configurations(d):
        g = project(c)
        total += 1
        loops += count_loops(g)
        doubles += count_double_arcs(g)
    th = ex.theory_moments(d)
    assert Fraction(loops, total) == th.loops_mean
    assert Fraction(doubles, total) == th.double_arcs_exact


@pytest.mark.parametrize(
    "degrees,mean,second",
    [((1, 1), 1, 2), ((2,), 1, None), ((1, 1, 1), 1, None), ((2, 2), 2, None)],
)
def test_exact_moments_examples(degrees, mean, second):
    res = ex.exact_configuration_moments(DegreeSequence(degrees))
    assert res.matches_theory
    assert res.mean == mean
    if second is not None:
        assert res.second_moment == second


def test_exact_moments_guard():
    with pytest.raises(TooLarge):
        ex.exact_configuration_moments(DegreeSequence.regular(3, 3))


def test_compositions():
    assert sorted(ex.compositions(3, 2)) == [(1, 1, 1), (1, 2), (2, 1)]
    assert sum(1 for m in range(1, 8) for _ in ex.compositions(m, 3)) == 95


def test_weighted_report_invariant_under_reordering():
    x = [1, 0, 3, 2, 5]
    w = [10**40, 3, 0, 7 * 10**39, 1]
    a = ex.weighted_report("x", x, w)
    b = ex.weighted_report("x", x[::-1], w[::-1])
    assert a.mean == pytest.approx(b.mean, rel=1e-12)
    assert a.standard_error == pytest.approx(b.standard_error, rel=1e-12)


def test_moment_report_z_and_tolerance():
    r = ex.moment_report("x", [1.0, 2.0, 3.0], 2.5, allowance=0.0)
    assert r.standard_error == pytest.approx(math.sqrt(1 / 3))
    assert r.z_score == pytest.approx(-0.5 / r.standard_error)
    assert r.within()
    assert not ex.moment_report("x", [1.0, 1.0, 1.0], 2.0).within()


def test_run_trials_independent_of_workers():
    d = DegreeSequence.regular(2, 8)
    one = ex.run_trials(ex._config_chunk, (d.degrees, 3, 4), 30, workers=1)
    two = ex.run_trials(ex._config_chunk, (d.degrees, 3, 4), 30, workers=2)
    assert one == two
    with pytest.raises(InvalidInput):
        ex.run_trials(ex._config_chunk, (d.degrees, 3, 4), -1)


def test_mc_configuration_small_run():
    reps = ex.mc_configuration_moments(DegreeSequence.regular(2, 20), 3000, seed=1)
    assert reps["loops"].within(4)
    assert reps["cycles_2"].theory_value == 2
    assert reps["cycles_6"].allowance == pytest.approx(30 / 40)
    with pytest.raises(InvalidInput):
        ex.mc_configuration_moments(DegreeSequence.regular(2, 20), 0, seed=1)


def test_simple_graph_reports_small():
    reps = ex.mc_simple_graph_moments(DegreeSequence.regular(2, 20), 200, seed=2)
    assert set(reps) >= {"tours_normalized", "tours_second_moment_ratio", "attempts"}
    with pytest.raises(InvalidInput):
        ex.mc_simple_graph_moments(DegreeSequence([1, 1]), 5, seed=2)


def test_w_helpers():
    assert ex.w_log_second_moment(2) == pytest.approx(-0.5 + math.log(2))
    assert ex.w_log_second_moment(2) == pytest.approx(0.193147, abs=1e-6)
    assert ex.w_truncation_tail(2, 12) < 3e-5
    series = sum(1 / (i * 2**i) for i in range(2, 200))
    assert series == pytest.approx(ex.w_log_second_moment(2))
    w = ex.simulate_w(2, 12, 1000, np.random.default_rng(0))
    assert w.shape == (1000,) and (w > 0).all()
    with pytest.raises(InvalidInput):
        ex.simulate_w(1, 12, 10, np.random.default_rng(0))
    with pytest.raises(InvalidInput):
        ex.simulate_w(2, 1, 10, np.random.default_rng(0))


def test_distribution_experiment_small():
    rep = ex.distribution_experiment(2, 12, 50, seed=4, w_draws=2000)
    assert 0 <= rep.ks_distance <= 1
    assert 0 <= rep.threshold_fraction <= 1
    assert len(rep.normalized_samples) == 50
    with pytest.raises(InvalidInput):
        ex.distribution_experiment(2, 5, 10, seed=0)
