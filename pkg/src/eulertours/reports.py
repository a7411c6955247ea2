"""Named experiment presets and their JSON / CSV reports.

JSON schema ``report_v1``::

    {"schema": "report_v1", "preset": str, "seed": int, "version": str,
     "params": {...}, "results": {section: {...}}, "notes": [str, ...]}

Moment entries carry name, sample_count, mean, variance, standard_error,
theory_value, z_score, allowance and within_tolerance. Exact rationals are
written as ``"p/q"`` strings, integers wider than 53 bits as decimal strings,
and non-finite floats as null. Keys are sorted so equal runs give equal bytes.

The CSV form is one row per moment entry (columns ``CSV_COLUMNS``); scalar
summary values go in the ``mean`` column with the rest left blank.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction

from eulertours import __version__
from eulertours import experiments as ex
from eulertours.errors import InvalidInput
from eulertours.graph import DegreeSequence, Multigraph

SCHEMA = "report_v1"
CSV_COLUMNS = (
    "section",
    "name",
    "sample_count",
    "mean",
    "variance",
    "standard_error",
    "theory_value",
    "z_score",
    "allowance",
    "within_tolerance",
)

BIDIRECTED_TRIANGLE = ((0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (0, 2))
DOUBLE_ARC_PAIR = ((0, 1), (0, 1), (1, 0), (1, 0))


@dataclass(frozen=True)
class Preset:
    kind: str
    params: dict = field(default_factory=dict)
    description: str = ""


PRESETS_V1: dict[str, Preset] = {
    "smoke": Preset("smoke", {"n": 12, "trials": 400, "graphs": 40, "w_draws": 4000}, "seconds-scale sanity run"),
    "config-d2-n50": Preset(
        "config", {"d": 2, "n": 50, "trials": 100_000}, "loops, double arcs, cycles and weighted moments"
    ),
    "simple-d2-n50": Preset("simple", {"d": 2, "n": 50, "graphs": 2000}, "exact tour counts of simple graphs"),
    "distribution-d2-n100": Preset(
        "distribution",
        {"d": 2, "n": 100, "graphs": 2000, "w_draws": 100_000, "k_max": 12},
        "tour-count moments, KS distance to W and the 1/(nm) threshold fraction",
    ),
    "w-self-check": Preset("w", {"ds": [2, 3], "k_max": 12, "w_draws": 200_000}, "mean and second moment of W"),
    "arbs-exact": Preset("exact_moments", {"max_m": 7, "max_degree": 3}, "exact arborescence moments by enumeration"),
    "naive-small": Preset("naive", {"trials": 100_000}, "naive sampler on two small graphs"),
}


TOUR_MEAN_NOTE = (
    "tour-count target is (e/m) prod d_v!, i.e. arborescence mean e (n/m) prod d_v on simple graphs; "
    "an alternative printed form e^(-n/m) prod d_v disagrees with it and is not used"
)
SD_NOTE = "relative SD target is sqrt(e^(-n/m) m/(m-n) - 1), taken directly from the second-moment ratio"
NOTES: dict[str, list[str]] = {
    "smoke": [TOUR_MEAN_NOTE],
    "simple": [TOUR_MEAN_NOTE, SD_NOTE],
    "distribution": [TOUR_MEAN_NOTE, SD_NOTE],
}


def moment_entries(reports: dict) -> dict:
    return {name: r.as_dict() for name, r in reports.items()}


def _run_smoke(p: dict, seed: int, workers: int) -> dict:
    d = DegreeSequence.regular(2, p["n"])
    sample = ex.sample_graph_tours(d, p["graphs"], seed, workers)
    w = ex.simulate_w(2, 12, p["w_draws"], ex.trial_rng(seed, ex.W_STREAM, 0))
    return {
        "config": moment_entries(ex.mc_configuration_moments(d, p["trials"], seed, workers)),
        "simple": moment_entries(ex.simple_graph_reports(sample)),
        "distribution": ex.dist_report_from_sample(sample, w, 12).summary(),
    }


def _run_config(p: dict, seed: int, workers: int) -> dict:
    d = DegreeSequence.regular(p["d"], p["n"])
    return {"config": moment_entries(ex.mc_configuration_moments(d, p["trials"], seed, workers))}


def _run_simple(p: dict, seed: int, workers: int) -> dict:
    d = DegreeSequence.regular(p["d"], p["n"])
    return {"simple": moment_entries(ex.mc_simple_graph_moments(d, p["graphs"], seed, workers))}


def _run_distribution(p: dict, seed: int, workers: int) -> dict:
    d = DegreeSequence.regular(p["d"], p["n"])
    sample = ex.sample_graph_tours(d, p["graphs"], seed, workers)
    w = ex.simulate_w(p["d"], p["k_max"], p["w_draws"], ex.trial_rng(seed, ex.W_STREAM, 0))
    return {
        "simple": moment_entries(ex.simple_graph_reports(sample)),
        "distribution": ex.dist_report_from_sample(sample, w, p["k_max"]).summary(),
    }


def _run_w(p: dict, seed: int, workers: int) -> dict:
    out = {}
    for d in p["ds"]:
        section = moment_entries(ex.w_self_check(d, p["k_max"], p["w_draws"], seed))
        section["truncation_tail"] = ex.w_truncation_tail(d, p["k_max"])
        out[f"w_d{d}"] = section
    return out


def _run_exact_moments(p: dict, seed: int, workers: int) -> dict:
    rows = {}
    for m in range(1, p["max_m"] + 1):
        for comp in ex.compositions(m, p["max_degree"]):
            res = ex.exact_configuration_moments(DegreeSequence(comp))
            rows[",".join(map(str, comp))] = {
                "mean": res.mean,
                "second_moment": res.second_moment,
                "theory_mean": res.theory_mean,
                "theory_second_moment": res.theory_second_moment,
                "matches": res.matches_theory,
            }
    return {"exact_moments": {"sequences": len(rows), "all_match": all(r["matches"] for r in rows.values()), "rows": rows}}


def _run_naive(p: dict, seed: int, workers: int) -> dict:
    out = {}
    for name, n, pairs in (("bidirected_triangle", 3, BIDIRECTED_TRIANGLE), ("double_arc_pair", 2, DOUBLE_ARC_PAIR)):
        g = Multigraph.from_pairs(n, pairs)
        out[f"naive_{name}"] = ex.naive_experiment(g, p["trials"], seed, workers).summary()
    return out


RUNNERS: dict[str, Callable[[dict, int, int], dict]] = {
    "smoke": _run_smoke,
    "config": _run_config,
    "simple": _run_simple,
    "distribution": _run_distribution,
    "w": _run_w,
    "exact_moments": _run_exact_moments,
    "naive": _run_naive,
}


def run_preset(name: str, seed: int, workers: int = 1) -> dict:
    """Run a named preset and return the ``report_v1`` document (not yet encoded)."""
    if name not in PRESETS_V1:
        raise InvalidInput(f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS_V1))}")
    preset = PRESETS_V1[name]
    return {
        "schema": SCHEMA,
        "preset": name,
        "seed": seed,
        "version": __version__,
        "params": dict(preset.params),
        "results": RUNNERS[preset.kind](preset.params, seed, workers),
        "notes": NOTES.get(preset.kind, []),
    }


def _plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj if abs(obj) < 2**53 else str(obj)
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _plain(obj.item())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(report: dict) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _csv_rows(section: str, body: dict):
    for name, value in body.items():
        if isinstance(value, dict) and "sample_count" in value:
            yield [section, name] + [value.get(c) for c in CSV_COLUMNS[2:]]
        elif isinstance(value, dict):
            yield from _csv_rows(f"{section}.{name}", value)
        elif not isinstance(value, list):
            yield [section, name, None, value] + [None] * (len(CSV_COLUMNS) - 4)


def to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    plain = _plain(report)
    for section in sorted(plain["results"]):
        for row in _csv_rows(section, plain["results"][section]):
            writer.writerow("" if v is None else v for v in row)
    return buf.getvalue()
