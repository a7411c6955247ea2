"""Monte Carlo and exact-enumeration checks of the moment and distribution results.

Every trial draws from its own generator derived from ``(seed, stream, index)``
and per-trial results are merged in index order, so a report depends only on
the seed and parameters, never on the number of worker processes.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial, prod

import numpy as np
from scipy import stats

from eulertours import kernels
from eulertours.arborescence import count_arbs_total
from eulertours.configuration import ENUMERATION_MAX_M, enumerate_configurations, project, sample_simple_eulerian
from eulertours.errors import InvalidInput, TooLarge
from eulertours.euler import best_count, enumerate_tours
from eulertours.graph import DegreeSequence, Multigraph
from eulertours.naive import acceptance_probability_exact, sample_naive

CONFIG_STREAM = 1
SIMPLE_STREAM = 2
W_STREAM = 3
NAIVE_STREAM = 4

ASYMPTOTIC_ALLOWANCE = 0.10
DEFAULT_MAX_CYCLE = 6
DEFAULT_MAX_ATTEMPTS = 100_000


def trial_rng(seed: int, stream: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream, index))))


def run_trials(chunk_fn, params, trials: int, workers: int = 1) -> list:
    """Evaluate ``chunk_fn(params, start, stop)`` over ``range(trials)`` in index order."""
    if trials < 0:
        raise InvalidInput("trials must be non-negative")
    if workers <= 1 or trials < 2:
        return chunk_fn(params, 0, trials)
    nchunks = min(trials, 4 * workers)
    bounds = [trials * k // nchunks for k in range(nchunks + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(chunk_fn, itertools.repeat(params, nchunks), bounds[:-1], bounds[1:])
        return [r for part in parts for r in part]


@dataclass
class MomentReport:
    name: str
    sample_count: int
    mean: float
    variance: float
    standard_error: float
    theory_value: float | None
    z_score: float | None
    allowance: float = 0.0

    def within(self, k_se: float = 3.0) -> bool:
        """|mean - theory| <= k_se * SE + allowance * |theory|."""
        if self.theory_value is None:
            return True
        se = self.standard_error if math.isfinite(self.standard_error) else 0.0
        slack = k_se * se + self.allowance * abs(self.theory_value)
        return abs(self.mean - self.theory_value) <= slack

    def as_dict(self) -> dict:
        out = asdict(self)
        out["within_tolerance"] = self.within()
        return out


def _z(mean, se, theory):
    if theory is None or not se > 0:
        return None
    return (mean - theory) / se


def moment_report(name: str, values, theory=None, allowance: float = 0.0) -> MomentReport:
    x = np.asarray(values, dtype=float)
    k = len(x)
    mean = float(x.mean()) if k else math.nan
    var = float(x.var(ddof=1)) if k > 1 else 0.0
    se = math.sqrt(var / k) if k else math.nan
    theory = None if theory is None else float(theory)
    return MomentReport(name, k, mean, var, se, theory, _z(mean, se, theory), allowance)


def weighted_report(name: str, values, weights, theory=None, allowance: float = 0.0) -> MomentReport:
    """Self-normalised estimate sum(w x) / sum(w) with a delta-method standard error.

    ``weights`` may be arbitrary-size non-negative integers; they are rescaled by
    their maximum before the floating-point stage.
    """
    weights = [int(w) for w in weights]
    top = max(weights, default=0)
    k = len(weights)
    theory = None if theory is None else float(theory)
    if top == 0:
        return MomentReport(name, k, math.nan, math.nan, math.nan, theory, None, allowance)
    w = np.array([float(Fraction(wi, top)) for wi in weights])
    x = np.asarray(values, dtype=float)
    total = w.sum()
    mean = float((w * x).sum() / total)
    var = float((w * (x - mean) ** 2).sum() / total)
    se = float(math.sqrt((w**2 * (x - mean) ** 2).sum()) / total)
    return MomentReport(name, k, mean, var, se, theory, _z(mean, se, theory), allowance)


@dataclass
class TheoryMoments:
    """Exact and limiting values for a degree sequence.

    ``*_limit`` fields are asymptotic (m - n -> infinity); the others are exact.
    Quantities that divide by m - n are ``None`` when m == n.
    """

    n: int
    m: int
    m2: int
    arbs_mean: Fraction
    arbs_second_moment: Fraction
    loops_mean: Fraction
    double_arcs_exact: Fraction
    double_arcs_limit: Fraction
    loops_arb_weighted_exact: Fraction
    loops_arb_weighted_limit: Fraction
    loops_pair_weighted_limit: Fraction
    simple_probability: float
    simple_probability_arb_weighted: float
    simple_probability_pair_weighted: float
    arbs_simple_limit: float
    tours_mean_limit: float
    tours_over_ts_limit: float
    tours_second_moment_ratio: float | None
    chebyshev_ratio: float | None
    cycle_means: dict[int, Fraction] | None = None
    cycle_means_exact: dict[int, Fraction] | None = None
    weighted_cycle_means: dict[int, Fraction] | None = None


def theory_moments(d: DegreeSequence, max_cycle: int = DEFAULT_MAX_CYCLE) -> TheoryMoments:
    n, m, m2 = d.n, d.m, d.m2
    prod_d = prod(d.degrees)
    arbs_mean = Fraction(n * prod_d, m)
    arbs_second = Fraction(m, m - n + 1) * arbs_mean**2
    loops = Fraction(m2, m)
    d_limit = Fraction((m2 - m) ** 2, 2 * m * m)
    pairs = sum(comb(du, 2) for du in d.degrees)
    # ordered pairs (u, v), u != v, of two matched point pairs in S_u x T_v
    d_exact = Fraction(2 * (pairs * pairs - sum(comb(du, 2) ** 2 for du in d.degrees)), m * (m - 1)) if m > 1 else Fraction(0)
    l1_exact = Fraction(sum(du * (du - 1) for du in d.degrees), m - 1) if m > 1 else Fraction(0)
    l1_limit = Fraction(m2 - m, m)
    l2_limit = Fraction(m2 - 2 * m + n, m)
    p_simple = math.exp(-float(loops) - float(d_limit))
    p_simple_1 = math.exp(-float(l1_limit) - float(d_limit))
    p_simple_2 = math.exp(-float(l2_limit) - float(d_limit))
    # the weighted-to-plain ratio of simple-graph probabilities tends to e
    arbs_simple = math.e * float(arbs_mean)
    tours_mean = math.e / m * float(prod(factorial(du) for du in d.degrees))
    if m > n:
        ratio2 = math.exp(-n / m) * m / (m - n)
        cheb = math.sqrt(max(ratio2 - 1.0, 0.0))
    else:
        ratio2 = cheb = None
    out = TheoryMoments(
        n=n,
        m=m,
        m2=m2,
        arbs_mean=arbs_mean,
        arbs_second_moment=arbs_second,
        loops_mean=loops,
        double_arcs_exact=d_exact,
        double_arcs_limit=d_limit,
        loops_arb_weighted_exact=l1_exact,
        loops_arb_weighted_limit=l1_limit,
        loops_pair_weighted_limit=l2_limit,
        simple_probability=p_simple,
        simple_probability_arb_weighted=p_simple_1,
        simple_probability_pair_weighted=p_simple_2,
        arbs_simple_limit=arbs_simple,
        tours_mean_limit=tours_mean,
        tours_over_ts_limit=math.e / m,
        tours_second_moment_ratio=ratio2,
        chebyshev_ratio=cheb,
    )
    if len(set(d.degrees)) == 1:
        deg = d.degrees[0]
        out.cycle_means = {i: Fraction(deg**i, i) for i in range(1, max_cycle + 1)}
        out.weighted_cycle_means = {i: Fraction(deg**i - 1, i) for i in range(1, max_cycle + 1)}
        out.cycle_means_exact = {
            i: Fraction(math.perm(n, i) * deg ** (2 * i), i * math.perm(m, i)) if i <= n else Fraction(0)
            for i in range(1, max_cycle + 1)
        }
    return out


@dataclass
class ExactMoments:
    """Full-enumeration first and second moments of the arborescence count."""

    degrees: tuple[int, ...]
    configurations: int
    mean: Fraction
    second_moment: Fraction
    theory_mean: Fraction
    theory_second_moment: Fraction

    @property
    def matches_theory(self) -> bool:
        return self.mean == self.theory_mean and self.second_moment == self.theory_second_moment

    def reports(self) -> tuple[MomentReport, MomentReport]:
        var = self.second_moment - self.mean**2
        first = MomentReport("arbs_mean_exact", self.configurations, self.mean, var, 0, self.theory_mean, None)
        second = MomentReport(
            "arbs_second_moment_exact", self.configurations, self.second_moment, math.nan, 0, self.theory_second_moment, None
        )
        return first, second


def exact_configuration_moments(d: DegreeSequence) -> ExactMoments:
    if d.m > min(ENUMERATION_MAX_M, 8):
        raise TooLarge("exact configuration moments limited to m <= 8")
    s1 = s2 = 0
    for c in enumerate_configurations(d):
        a = count_arbs_total(project(c))
        s1 += a
        s2 += a * a
    total = factorial(d.m)
    th = theory_moments(d)
    return ExactMoments(d.degrees, total, Fraction(s1, total), Fraction(s2, total), th.arbs_mean, th.arbs_second_moment)


def compositions(m: int, max_part: int):
    """All ordered degree sequences summing to ``m`` with parts in 1..max_part."""
    if m == 0:
        yield ()
        return
    for p in range(1, min(max_part, m) + 1):
        for rest in compositions(m - p, max_part):
            yield (p, *rest)


def cycle_allowance(i: int, n: int) -> float:
    """Relative allowance for i-cycle means at finite n.

    The expected count carries a factor (n)_i / (m)_i * (m/n)^i, whose relative gap
    from 1 is at most about i(i-1)/(2n) to first order for any degree.
    """
    return max(ASYMPTOTIC_ALLOWANCE, i * (i - 1) / (2 * n))


# -- configuration-model Monte Carlo -------------------------------------------------


def _config_chunk(params, start: int, stop: int) -> list:
    degrees, seed, max_cycle = params
    d = DegreeSequence(degrees)
    n, m = d.n, d.m
    owners = d.owners
    out = []
    for idx in range(start, stop):
        rng = trial_rng(seed, CONFIG_STREAM, idx)
        dst = owners[rng.permutation(m)]
        loops, doubles = kernels.multiplicity_stats(n, owners, dst)
        cycles = kernels.cycle_counts(n, owners, dst, max_cycle)
        # projections are balanced, so every root has the same count
        arbs = n * kernels.arborescence_count(n, owners, dst, 0)
        out.append((loops, doubles, tuple(cycles), arbs))
    return out


def mc_configuration_moments(
    d: DegreeSequence,
    trials: int,
    seed: int,
    workers: int = 1,
    max_cycle: int = DEFAULT_MAX_CYCLE,
) -> dict[str, MomentReport]:
    """Plain, arborescence-weighted and pair-weighted observables of random configurations."""
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    rows = run_trials(_config_chunk, (d.degrees, seed, max_cycle), trials, workers)
    th = theory_moments(d, max_cycle)
    loops = [r[0] for r in rows]
    doubles = [r[1] for r in rows]
    arbs = [r[3] for r in rows]
    arbs_sq = [a * a for a in arbs]
    simple = [float(r[0] == 0 and r[1] == 0) for r in rows]
    a = ASYMPTOTIC_ALLOWANCE
    reports = [
        moment_report("loops", loops, th.loops_mean),
        moment_report("double_arcs", doubles, th.double_arcs_limit, a),
        moment_report("simple_fraction", simple, th.simple_probability, a),
        moment_report("arbs_normalized", [float(Fraction(x) / th.arbs_mean) for x in arbs], 1.0),
        moment_report(
            "arbs_normalized_sq",
            [float(Fraction(x) / th.arbs_mean) ** 2 for x in arbs],
            th.arbs_second_moment / th.arbs_mean**2,
        ),
        weighted_report("loops_arb_weighted", loops, arbs, th.loops_arb_weighted_limit, a),
        weighted_report("double_arcs_arb_weighted", doubles, arbs, th.double_arcs_limit, a),
        weighted_report("simple_fraction_arb_weighted", simple, arbs, th.simple_probability_arb_weighted, a),
        weighted_report("loops_pair_weighted", loops, arbs_sq, th.loops_pair_weighted_limit, a),
        weighted_report("double_arcs_pair_weighted", doubles, arbs_sq, th.double_arcs_limit, a),
        weighted_report("simple_fraction_pair_weighted", simple, arbs_sq, th.simple_probability_pair_weighted, a),
    ]
    for i in range(2, max_cycle + 1):
        xs = [r[2][i - 1] for r in rows]
        lam = th.cycle_means[i] if th.cycle_means else None
        mu = th.weighted_cycle_means[i] if th.weighted_cycle_means else None
        ai = cycle_allowance(i, d.n)
        reports.append(moment_report(f"cycles_{i}", xs, lam, ai))
        reports.append(weighted_report(f"cycles_{i}_arb_weighted", xs, arbs, mu, ai))
    return {r.name: r for r in reports}


# -- uniformly random simple Eulerian graphs ----------------------------------------


@dataclass
class GraphSample:
    """Exact tour counts of independently sampled connected simple graphs."""

    degrees: tuple[int, ...]
    tours: list[int]
    attempts: list[int]

    @property
    def ts_count(self) -> int:
        return prod(factorial(du) for du in self.degrees)


def _simple_chunk(params, start: int, stop: int) -> list:
    degrees, seed, max_attempts = params
    d = DegreeSequence(degrees)
    out = []
    for idx in range(start, stop):
        rng = trial_rng(seed, SIMPLE_STREAM, idx)
        g, attempts = sample_simple_eulerian(d, rng, max_attempts)
        out.append((best_count(g), attempts))
    return out


def sample_graph_tours(
    d: DegreeSequence,
    graphs: int,
    seed: int,
    workers: int = 1,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> GraphSample:
    rows = run_trials(_simple_chunk, (d.degrees, seed, max_attempts), graphs, workers)
    return GraphSample(d.degrees, [r[0] for r in rows], [r[1] for r in rows])


def normalized_tours(sample: GraphSample, th: TheoryMoments) -> np.ndarray:
    """T / ((e/m) prod d_v!) per graph, from exact integer counts."""
    ts = sample.ts_count
    return np.array([float(Fraction(t * th.m, ts)) / math.e for t in sample.tours])


def simple_graph_reports(sample: GraphSample) -> dict[str, MomentReport]:
    d = DegreeSequence(sample.degrees)
    th = theory_moments(d)
    a = ASYMPTOTIC_ALLOWANCE
    z = normalized_tours(sample, th)
    k = len(z)
    mean = z.mean()
    second = float((z**2).mean())
    ratio = second / mean**2
    # influence function of second / mean**2 for the delta-method SE
    infl = (z**2 - second) / mean**2 - 2 * second * (z - mean) / mean**3
    ratio_se = float(math.sqrt(infl.var(ddof=1) / k)) if k > 1 else math.nan
    ratio_report = MomentReport(
        "tours_second_moment_ratio",
        k,
        ratio,
        float(infl.var(ddof=1)) if k > 1 else math.nan,
        ratio_se,
        th.tours_second_moment_ratio,
        _z(ratio, ratio_se, th.tours_second_moment_ratio),
        0.20,
    )
    sd_ratio = float(z.std(ddof=1) / mean) if k > 1 else math.nan
    reports = [
        moment_report("tours_normalized", z, 1.0, 0.15),
        moment_report("tours_over_ts", z * (math.e / d.m), th.tours_over_ts_limit, 0.15),
        ratio_report,
        MomentReport("tours_relative_sd", k, sd_ratio, math.nan, math.nan, th.chebyshev_ratio, None, 0.20),
        moment_report("attempts", sample.attempts, 1.0 / th.simple_probability, a),
    ]
    return {r.name: r for r in reports}


def mc_simple_graph_moments(
    d: DegreeSequence,
    trials: int,
    seed: int,
    workers: int = 1,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> dict[str, MomentReport]:
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    if d.m <= d.n:
        raise InvalidInput("need m > n for the tour-count moments")
    return simple_graph_reports(sample_graph_tours(d, trials, seed, workers, max_attempts))


# -- limiting distribution --------------------------------------------------------


def w_truncation_tail(d: int, k_max: int) -> float:
    """sum_{i > k_max} 1/(i d^i): the log-second-moment mass dropped by truncating W."""
    total, i = 0.0, k_max + 1
    while True:
        term = 1.0 / (i * float(d) ** i)
        total += term
        if term < 1e-18:
            return total
        i += 1


def w_log_second_moment(d: int) -> float:
    """sum_{i >= 2} 1/(i d^i) in closed form."""
    return -1.0 / d + math.log(d / (d - 1))


def simulate_w(d: int, k_max: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Draws of prod_{i=2}^{k_max} (1 - d^-i)^{Z_i} e^{1/i}, Z_i ~ Poisson(d^i / i) independent."""
    if d < 2:
        raise InvalidInput("d must be at least 2")
    if k_max < 2:
        raise InvalidInput("k_max must be at least 2")
    log_w = np.zeros(samples)
    for i in range(2, k_max + 1):
        z = rng.poisson(d**i / i, size=samples)
        log_w += z * math.log1p(-(float(d) ** -i)) + 1.0 / i
    return np.exp(log_w)


@dataclass
class DistReport:
    normalized_samples: list[float]
    w_samples: list[float]
    ks_distance: float
    threshold_fraction: float
    relative_sd: float
    chebyshev_ratio: float | None
    truncation_tail: float
    extras: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "graphs": len(self.normalized_samples),
            "w_draws": len(self.w_samples),
            "ks_distance": self.ks_distance,
            "threshold_fraction": self.threshold_fraction,
            "relative_sd": self.relative_sd,
            "chebyshev_ratio": self.chebyshev_ratio,
            "truncation_tail": self.truncation_tail,
            **self.extras,
        }


def dist_report_from_sample(
    sample: GraphSample, w_draws: np.ndarray, k_max: int
) -> DistReport:
    d = DegreeSequence(sample.degrees)
    th = theory_moments(d)
    z = normalized_tours(sample, th)
    ks = float(stats.ks_2samp(z, w_draws).statistic)
    # tours / prod d_v! >= 1/(n m), compared exactly
    threshold_hits = sum(t * d.n * d.m >= sample.ts_count for t in sample.tours)
    deg = sample.degrees[0]
    return DistReport(
        normalized_samples=z.tolist(),
        w_samples=np.asarray(w_draws).tolist(),
        ks_distance=ks,
        threshold_fraction=threshold_hits / len(sample.tours),
        relative_sd=float(z.std(ddof=1) / z.mean()),
        chebyshev_ratio=th.chebyshev_ratio,
        truncation_tail=w_truncation_tail(deg, k_max),
    )


def distribution_experiment(
    d: int,
    n: int,
    graphs: int,
    seed: int,
    workers: int = 1,
    w_draws: int = 100_000,
    k_max: int = 12,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> DistReport:
    """Compare normalized tour counts of random d-in/d-out graphs with simulated W."""
    if d < 2 or n < 10:
        raise InvalidInput("need d >= 2 and n >= 10")
    sample = sample_graph_tours(DegreeSequence.regular(d, n), graphs, seed, workers, max_attempts)
    w = simulate_w(d, k_max, w_draws, trial_rng(seed, W_STREAM, 0))
    return dist_report_from_sample(sample, w, k_max)


def w_self_check(d: int, k_max: int, samples: int, seed: int) -> dict[str, MomentReport]:
    w = simulate_w(d, k_max, samples, trial_rng(seed, W_STREAM, d))
    return {
        "w_mean": moment_report("w_mean", w, 1.0),
        "w_second_moment": moment_report("w_second_moment", w**2, math.exp(w_log_second_moment(d))),
    }


# -- naive transition-system sampler ----------------------------------------------


@dataclass
class NaiveReport:
    acceptance: MomentReport
    exact_acceptance: Fraction
    tour_counts: dict[tuple[int, ...], int]
    chi2_pvalue: float

    def summary(self) -> dict:
        return {
            "acceptance": self.acceptance.as_dict(),
            "exact_acceptance": self.exact_acceptance,
            "accepted": sum(self.tour_counts.values()),
            "distinct_tours": len(self.tour_counts),
            "chi2_pvalue": self.chi2_pvalue,
        }


def _naive_chunk(params, start: int, stop: int) -> list:
    n, pairs, seed = params
    g = Multigraph.from_pairs(n, pairs)
    out = []
    for idx in range(start, stop):
        t = sample_naive(g, trial_rng(seed, NAIVE_STREAM, idx))
        out.append(None if t is None else t.arcs)
    return out


def naive_experiment(g: Multigraph, trials: int, seed: int, workers: int = 1) -> NaiveReport:
    """Acceptance rate of the naive sampler and a chi-square test of uniformity over tours."""
    if trials < 1:
        raise InvalidInput("trials must be at least 1")
    exact = acceptance_probability_exact(g)
    pairs = tuple((a.source, a.target) for a in g.arcs)
    rows = run_trials(_naive_chunk, (g.n, pairs, seed), trials, workers)
    counts = {t.arcs: 0 for t in enumerate_tours(g)}
    for arcs in rows:
        if arcs is not None:
            counts[arcs] += 1
    hits = [float(arcs is not None) for arcs in rows]
    p = float(exact)
    se = math.sqrt(p * (1 - p) / trials)
    mean = float(np.mean(hits))
    acc = MomentReport("acceptance", trials, mean, p * (1 - p), se, p, _z(mean, se, p))
    observed = list(counts.values())
    if len(observed) > 1 and sum(observed) > 0:
        pvalue = float(stats.chisquare(observed).pvalue)
    else:
        pvalue = 1.0
    return NaiveReport(acc, exact, counts, pvalue)
