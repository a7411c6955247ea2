"""Exact oracle suites: BEST identity, cofactor counts, the forest formula and exact moments.

Every check compares a closed form against exhaustive enumeration with zero
tolerance. Results list the failing instances, so an empty ``mismatches`` means
the suite passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from eulertours.arborescence import count_arbs_rooted, enumerate_arbs
from eulertours.configuration import (
    forest_config_count_bruteforce,
    forest_config_count_formula,
    project,
    sample_configuration,
)
from eulertours.euler import best_count, enumerate_tours
from eulertours.experiments import compositions, exact_configuration_moments, trial_rng
from eulertours.graph import DegreeSequence, Multigraph, is_eulerian

CORPUS_STREAM = 11
FOREST_STREAM = 12

HAND_GRAPHS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "three_cycle": (3, ((0, 1), (1, 2), (2, 0))),
    "bidirected_triangle": (3, ((0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2))),
    "double_arc_pair": (2, ((0, 1), (0, 1), (1, 0), (1, 0))),
    "single_loop": (1, ((0, 0),)),
    "two_loops": (1, ((0, 0), (0, 0))),
    "loop_on_cycle": (2, ((0, 0), (0, 1), (1, 0))),
    "bowtie": (5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0))),
    "complete_k4": (4, tuple((u, v) for u in range(4) for v in range(4) if u != v)),
}


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and not self.mismatches


def random_eulerian_corpus(count: int, seed: int, max_n: int = 5, max_m: int = 12) -> list[Multigraph]:
    """Connected projections of random configurations with n <= max_n, m <= max_m."""
    out: list[Multigraph] = []
    idx = 0
    while len(out) < count:
        rng = trial_rng(seed, CORPUS_STREAM, idx)
        idx += 1
        n = int(rng.integers(1, max_n + 1))
        degrees = rng.integers(1, 4, size=n)
        if int(degrees.sum()) > max_m:
            continue
        g = project(sample_configuration(DegreeSequence(degrees.tolist()), rng))
        if is_eulerian(g):
            out.append(g)
    return out


def oracle_corpus(count: int, seed: int) -> list[tuple[str, Multigraph]]:
    hand = [(name, Multigraph.from_pairs(n, pairs)) for name, (n, pairs) in HAND_GRAPHS.items()]
    rand = [(f"random_{k}", g) for k, g in enumerate(random_eulerian_corpus(count, seed))]
    return hand + rand


def check_best_identity(corpus) -> SuiteResult:
    res = SuiteResult("best_identity")
    for name, g in corpus:
        res.checked += 1
        formula = best_count(g)
        brute = sum(1 for _ in enumerate_tours(g))
        if formula != brute:
            res.mismatches.append({"graph": name, "best_count": formula, "enumerated": brute})
    return res


def check_matrix_tree(corpus) -> SuiteResult:
    """Cofactor count vs enumeration for every root, and equal counts over roots."""
    res = SuiteResult("matrix_tree")
    for name, g in corpus:
        counts = []
        for v in range(g.n):
            res.checked += 1
            formula = count_arbs_rooted(g, v)
            brute = sum(1 for _ in enumerate_arbs(g, v))
            counts.append(formula)
            if formula != brute:
                res.mismatches.append({"graph": name, "root": v, "cofactor": formula, "enumerated": brute})
        if len(set(counts)) > 1:
            res.mismatches.append({"graph": name, "unequal_roots": counts})
    return res


def random_forest_instances(count: int, seed: int, max_n: int = 5, max_points: int = 9):
    out = []
    idx = 0
    while len(out) < count:
        rng = trial_rng(seed, FOREST_STREAM, idx)
        idx += 1
        n = int(rng.integers(1, max_n + 1))
        x = rng.integers(0, 4, size=n).tolist()
        if sum(x) > max_points:
            continue
        y = rng.integers(0, 4, size=n).tolist()
        mask = rng.random(n) < 0.4
        mask[int(rng.integers(n))] = True
        roots = [v for v in range(n) if mask[v]]
        out.append((x, y, roots))
    return out


def check_forest_formula(instances) -> SuiteResult:
    res = SuiteResult("forest_formula")
    for x, y, roots in instances:
        res.checked += 1
        formula = forest_config_count_formula(x, y, roots)
        brute = forest_config_count_bruteforce(x, y, roots)
        if formula != brute:
            res.mismatches.append({"x": x, "y": y, "roots": roots, "formula": formula, "bruteforce": brute})
    return res


def check_exact_moments(max_m: int = 7, max_degree: int = 3) -> SuiteResult:
    res = SuiteResult("exact_moments")
    for m in range(1, max_m + 1):
        for comp in compositions(m, max_degree):
            res.checked += 1
            got = exact_configuration_moments(DegreeSequence(comp))
            if not got.matches_theory:
                res.mismatches.append(
                    {
                        "degrees": list(comp),
                        "mean": got.mean,
                        "theory_mean": got.theory_mean,
                        "second_moment": got.second_moment,
                        "theory_second_moment": got.theory_second_moment,
                    }
                )
    return res


def run_all(seed: int = 0, graphs: int = 200, forests: int = 500, max_m: int = 7) -> list[SuiteResult]:
    corpus = oracle_corpus(graphs, seed)
    return [
        check_best_identity(corpus),
        check_matrix_tree(corpus),
        check_forest_formula(random_forest_instances(forests, seed)),
        check_exact_moments(max_m),
    ]


__all__ = [
    "HAND_GRAPHS",
    "SuiteResult",
    "check_best_identity",
    "check_exact_moments",
    "check_forest_formula",
    "check_matrix_tree",
    "oracle_corpus",
    "random_eulerian_corpus",
    "random_forest_instances",
    "run_all",
]
