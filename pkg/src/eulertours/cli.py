"""Command-line front end.

Exit codes: 0 success, 1 malformed input, 2 graph not Eulerian,
3 verification failure, 4 rejection sampling ran out of attempts.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from eulertours import __version__, reports, verify
from eulertours.arborescence import count_arbs_rooted
from eulertours.configuration import sample_simple_eulerian
from eulertours.errors import AttemptsExhausted, InvalidInput, NotEulerian, TooLarge
from eulertours.euler import best_count, sample_tour_uniform
from eulertours.experiments import DEFAULT_MAX_ATTEMPTS, trial_rng
from eulertours.graph import DegreeSequence, format_graph, is_eulerian, read_graph
from eulertours.naive import acceptance_probability_exact, approximate, sample_naive

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_EULERIAN = 2
EXIT_VERIFY = 3
EXIT_ATTEMPTS = 4

# per-command RNG streams, disjoint from the experiment streams
GENERATE_STREAM = 21
SAMPLE_STREAM = 22
ESTIMATE_STREAM = 23


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which here means "not Eulerian"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def ratio(q: Fraction) -> str:
    """Always ``p/q``, so a certain acceptance prints as ``1/1``."""
    return f"{q.numerator}/{q.denominator}"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _degrees(args) -> DegreeSequence:
    if args.degrees and (args.d is not None or args.n is not None):
        raise InvalidInput("give either --degrees or --d/--n, not both")
    if args.degrees:
        try:
            return DegreeSequence([int(x) for x in args.degrees.split(",")])
        except ValueError as exc:
            raise InvalidInput(f"bad --degrees list: {args.degrees!r}") from exc
    if args.d is None or args.n is None:
        raise InvalidInput("need --degrees or both --d and --n")
    return DegreeSequence.regular(args.d, args.n)


def _graph(args):
    if not args.graph:
        raise InvalidInput("--graph is required")
    g = read_graph(args.graph)
    if not is_eulerian(g):
        raise NotEulerian(f"{args.graph}: graph is not Eulerian")
    return g


def cmd_generate(args) -> int:
    d = _degrees(args)
    g, _ = sample_simple_eulerian(d, trial_rng(args.seed, GENERATE_STREAM, 0), args.max_attempts)
    _emit(format_graph(g), args.out)
    return EXIT_OK


def cmd_count(args) -> int:
    g = _graph(args)
    arbs = count_arbs_rooted(g, 0) if g.m else 0
    line = f"arbs={arbs} tours={best_count(g)} acceptance={ratio(acceptance_probability_exact(g))}\n"
    _emit(line, args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    g = _graph(args)
    lines = []
    for k in range(args.kappa):
        rng = trial_rng(args.seed, SAMPLE_STREAM, k)
        if args.naive:
            t = sample_naive(g, rng)
            lines.append("naive reject" if t is None else "naive " + " ".join(map(str, t.arcs)))
        else:
            lines.append(" ".join(map(str, sample_tour_uniform(g, rng).arcs)))
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def cmd_estimate(args) -> int:
    g = _graph(args)
    est = approximate(g, args.kappa, trial_rng(args.seed, ESTIMATE_STREAM, 0))
    line = f"estimate={est.numerator * args.kappa // est.denominator}/{args.kappa}"
    line += f" exact={ratio(acceptance_probability_exact(g))}\n"
    _emit(line, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_all(seed=args.seed)
    lines = []
    for r in results:
        status = "ok" if r.ok else "FAIL"
        lines.append(f"{r.name}: {status} checked={r.checked} mismatches={len(r.mismatches)}")
        lines.extend(f"  {m}" for m in r.mismatches[:5])
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def cmd_experiment(args) -> int:
    if not args.preset:
        raise InvalidInput(f"--preset is required; choose from {', '.join(sorted(reports.PRESETS_V1))}")
    doc = reports.run_preset(args.preset, args.seed, args.workers)
    text = reports.to_csv(doc) if args.format == "csv" else reports.to_json(doc)
    _emit(text, args.out)
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "count": cmd_count,
    "sample": cmd_sample,
    "estimate": cmd_estimate,
    "verify": cmd_verify,
    "experiment": cmd_experiment,
}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--graph", default=None, help="graph file: header 'n m', then one 'src dst' per arc")
    common.add_argument("--n", type=_positive, default=None)
    common.add_argument("--d", type=_positive, default=None)
    common.add_argument("--degrees", default=None, help="comma-separated out-degrees")
    common.add_argument("--kappa", type=_positive, default=1)
    common.add_argument("--max-attempts", type=_positive, default=DEFAULT_MAX_ATTEMPTS)
    common.add_argument("--preset", default=None, choices=sorted(reports.PRESETS_V1))
    common.add_argument("--format", default="json", choices=("json", "csv"))
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--naive", action="store_true", help="sample: use the naive transition-system sampler")

    parser = _Parser(prog="eulertours", description="Count and sample Euler tours of directed multigraphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "generate": "write a random simple connected graph with the given out-degrees",
        "count": "print arborescence and Euler tour counts and the naive acceptance ratio",
        "sample": "print kappa uniformly random Euler tours",
        "estimate": "estimate the naive acceptance ratio from kappa runs",
        "verify": "run the exact oracle suites",
        "experiment": "run a named experiment preset",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, description=text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NotEulerian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_EULERIAN
    except AttemptsExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ATTEMPTS
    except (InvalidInput, TooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
