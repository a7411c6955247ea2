"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 20 50 100] [--repeat 5]

Each row times one call on a random 2-in/2-out configuration projection and
checks that both backends return the same value.
"""

import argparse
import timeit

import numpy as np

from eulertours import _pykernels, kernels
from eulertours.configuration import project, sample_configuration
from eulertours.graph import DegreeSequence


def best_time(fn, repeat: int) -> float:
    number, elapsed = 1, 0.0
    while True:
        elapsed = timeit.timeit(fn, number=number)
        if elapsed > 0.05:
            break
        number *= 4
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 50, 100, 200])
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if kernels._ext is None:
        print("compiled extension unavailable; only the fallback can be timed")
        return
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<22}{'n':>6}{'compiled ms':>14}{'python ms':>12}{'speedup':>10}")
    for n in args.sizes:
        g = project(sample_configuration(DegreeSequence.regular(args.d, n), rng))
        src, dst = g.src, g.dst
        src_l, dst_l = src.tolist(), dst.tolist()
        cases = [
            ("arborescence_count", lambda: kernels.arborescence_count(n, src, dst, 0),
             lambda: _pykernels.arborescence_count(n, src_l, dst_l, 0)),
            ("multiplicity_stats", lambda: kernels.multiplicity_stats(n, src, dst),
             lambda: _pykernels.multiplicity_stats(n, src_l, dst_l)),
            ("cycle_counts(6)", lambda: kernels.cycle_counts(n, src, dst, 6),
             lambda: _pykernels.cycle_counts(n, src_l, dst_l, 6)),
        ]
        for name, fast, slow in cases:
            if fast() != slow():
                raise SystemExit(f"{name} disagrees at n={n}")
            t_fast = best_time(fast, args.repeat)
            t_slow = best_time(slow, args.repeat)
            print(f"{name:<22}{n:>6}{t_fast * 1e3:>14.4f}{t_slow * 1e3:>12.4f}{t_slow / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
