"""Command-line entry point: ``primelab <command> [options]``.

Each command computes one family of series, then writes CSV (default), SVG
or a plain text table to ``--output`` or stdout. Relative output paths are
resolved against ``$PRIMELAB_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from .cramer import (
    CRAMER_CEILING,
    GENERATOR_ID,
    CramerConfig,
    aggregate,
    collect_stats,
    count_variance,
    expected_consecutive_pairs,
    expected_count,
    expected_twin_sum,
)
from .erdoskac import omega_stats
from .exceptions import InvalidRangeError, PrimelabError
from .output import UsageError, atomic_write, csv_text, svg_text, text_table
from .pnt import QuadratureSpec, abel_estimate, comparison_table, li
from .series import (
    SumSeries,
    TruncationSpec,
    euler_product_truncated,
    gamma_curve,
    loglog_comparison,
    prime_power_tail,
    zeta_partial_sum,
    zeta_tail_corrected,
)
from .sieve import OMEGA_CEILING, SIEVE_CEILING, build_omega_table, build_sieve, prime_count

OUTPUT_DIR_ENV = "PRIMELAB_OUTPUT_DIR"


@dataclass
class RunConfig:
    """Fully resolved run: command, its parameters and where output goes."""

    command: str
    params: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "csv"
    log_x: bool = False

    def header(self) -> list[str]:
        lines = [f"primelab {__version__}", f"command = {self.command}"]
        for key in sorted(self.params):
            lines.append(f"{key} = {json.dumps(self.params[key])}")
        lines.append(f"format = {self.format}")
        lines.append(f"log_x = {json.dumps(self.log_x)}")
        return lines


@dataclass
class Result:
    series: list[SumSeries]
    x_label: str = "x"
    notes: list[str] = field(default_factory=list)
    plot: list[str] | None = None  # labels to draw in SVG; all when None
    title: str = ""


def _sieve_for(params: dict, top: int):
    return build_sieve(max(top, 2), max_limit=params["max_limit"])


def _cmd_pi(p: dict) -> Result:
    xs = sorted(set(p["x"]))
    sieve = _sieve_for(p, max(xs))
    return Result(
        [SumSeries.from_arrays("pi", xs, [prime_count(sieve, x) for x in xs])],
        title="prime counting function",
    )


def _cmd_recip_sum(p: dict) -> Result:
    xs = sorted(set(p["x"]))
    sieve = _sieve_for(p, max(xs))
    return Result(loglog_comparison(sieve, xs), title="sum of 1/p against log log x")


def _grid(x_min: int, x_max: int, points: int) -> list[int]:
    if x_max - x_min + 1 <= points:
        return list(range(x_min, x_max + 1))
    grid = np.geomspace(x_min, x_max, points)
    return sorted(set(int(round(v)) for v in grid))


def _cmd_gamma(p: dict) -> Result:
    x_max = p["x_max"]
    if x_max < 2:
        raise InvalidRangeError(f"gamma needs --x-max >= 2, got {x_max}")
    xs = _grid(2, x_max, p["points"])
    curve = gamma_curve(x_max)
    gam = [curve[x - 2] for x in xs]
    logs = [math.log(x) for x in xs]
    return Result(
        [
            SumSeries.from_arrays("harmonic_sum", xs, [g + lg for g, lg in zip(gam, logs)]),
            SumSeries.from_arrays("log_x", xs, logs),
            SumSeries.from_arrays("gamma_estimate", xs, gam),
        ],
        plot=["gamma_estimate"],
        title="harmonic sum minus log x",
    )


def _cmd_euler_product(p: dict) -> Result:
    cutoffs = sorted(set(p["prime_cutoff"]))
    s = p["s"]
    sieve = _sieve_for(p, max(cutoffs))
    ep = [euler_product_truncated(TruncationSpec(s, c), sieve) for c in cutoffs]
    partial = zeta_partial_sum(s, p["terms"])
    corrected = zeta_tail_corrected(s, p["terms"])
    return Result(
        [
            SumSeries.from_arrays("euler_product", cutoffs, ep),
            SumSeries.from_arrays("zeta_partial", cutoffs, [partial] * len(cutoffs)),
            SumSeries.from_arrays("zeta_tail_corrected", cutoffs, [corrected] * len(cutoffs)),
            SumSeries.from_arrays("diff", cutoffs, [corrected - v for v in ep]),
        ],
        x_label="prime_cutoff",
        plot=["euler_product", "zeta_tail_corrected"],
        title=f"truncated Euler product, s = {s:g}",
    )


def _cmd_tail(p: dict) -> Result:
    cutoffs = sorted(set(p["prime_cutoff"]))
    sieve = _sieve_for(p, max(cutoffs))
    vals = [prime_power_tail(c, p["term_cutoff"], sieve) for c in cutoffs]
    return Result(
        [SumSeries.from_arrays("tail", cutoffs, vals)],
        x_label="prime_cutoff",
        title="prime-power tail",
    )


def _quad(p: dict) -> QuadratureSpec:
    return QuadratureSpec(relative_tolerance=p["tolerance"])


def _cmd_li(p: dict) -> Result:
    xs = sorted(set(p["x"]))
    spec = _quad(p)
    return Result(
        [SumSeries.from_arrays("li", xs, [li(x, spec) for x in xs])],
        title="logarithmic integral from 2",
    )


def _cmd_compare(p: dict) -> Result:
    xs = sorted(set(p["x"]))
    sieve = _sieve_for(p, max(xs))
    return Result(
        comparison_table(sieve, xs, _quad(p)),
        plot=["pi", "li", "x_over_log_x"],
        title="pi(x) against its estimates",
    )


def _cmd_abel(p: dict) -> Result:
    xs = sorted(set(p["x"]))
    sieve = _sieve_for(p, max(xs))
    pis = [prime_count(sieve, x) for x in xs]
    est = [abel_estimate(sieve, x) for x in xs]
    return Result(
        [
            SumSeries.from_arrays("pi", xs, pis),
            SumSeries.from_arrays("abel_estimate", xs, est),
            SumSeries.from_arrays("diff", xs, [e - q for e, q in zip(est, pis)]),
        ],
        plot=["pi", "abel_estimate"],
        title="partial summation reconstruction of pi(x)",
    )


def _cmd_cramer(p: dict) -> Result:
    config = CramerConfig(p["x_max"], p["trials"], p["seed"], max_x=p["max_x"])
    stats = collect_stats(config, workers=p["workers"])
    agg = aggregate(stats)
    trials = list(range(config.trials))
    notes = [
        f"generator = {json.dumps(GENERATOR_ID)}",
        f"expected_count = {expected_count(config.x_max):.12g}",
        f"count_variance_model = {count_variance(config.x_max):.12g}",
    ]
    if config.x_max >= 3:
        notes.append(f"expected_consecutive_pairs = {expected_consecutive_pairs(config.x_max):.12g}")
    if config.x_max >= 4:
        notes.append(f"expected_twin_pairs = {expected_twin_sum(config.x_max):.12g}")
    for name, d in agg.items():
        notes.append(f"{name}: mean = {d['mean']:.12g}, variance = {d['variance']:.12g}")
    sieve = build_sieve(config.x_max)
    notes.append(f"primes: count = {prime_count(sieve, config.x_max)}")
    return Result(
        [
            SumSeries.from_arrays(name, trials, [getattr(s, name) for s in stats])
            for name in ("count", "twin_pairs", "consecutive_pairs")
        ],
        x_label="trial",
        notes=notes,
        title=f"Cramér model, x_max = {config.x_max}",
    )


def _cmd_erdos_kac(p: dict) -> Result:
    ns = sorted(set(p["n_max"]))
    table = build_omega_table(max(ns), multiplicity=p["multiplicity"], max_limit=p["max_n"])
    rows = [
        omega_stats(table, p["n_min"], n, sample_size=p["sample_size"], seed=p["seed"])
        for n in ns
    ]
    loglog = [math.log(math.log(n)) for n in ns]
    return Result(
        [
            SumSeries.from_arrays("sample_size", ns, [r.sample_size for r in rows]),
            SumSeries.from_arrays("mean", ns, [r.mean for r in rows]),
            SumSeries.from_arrays("variance", ns, [r.variance for r in rows]),
            SumSeries.from_arrays("loglog_n", ns, loglog),
            SumSeries.from_arrays("cdf_distance", ns, [r.cdf_distance for r in rows]),
        ],
        x_label="n_max",
        plot=["mean", "variance", "loglog_n"],
        title="prime factor counts",
    )


HANDLERS: dict[str, Callable[[dict], Result]] = {
    "pi": _cmd_pi,
    "recip-sum": _cmd_recip_sum,
    "gamma": _cmd_gamma,
    "euler-product": _cmd_euler_product,
    "tail": _cmd_tail,
    "li": _cmd_li,
    "compare": _cmd_compare,
    "abel": _cmd_abel,
    "cramer": _cmd_cramer,
    "erdos-kac": _cmd_erdos_kac,
}


def resolve_output(path: str | None) -> str | None:
    if path is None or path == "-":
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def render(config: RunConfig, result: Result) -> str:
    if config.format == "csv":
        return csv_text(result.series, config.header() + result.notes, result.x_label)
    if config.format == "svg":
        shown = result.series
        if result.plot is not None:
            shown = [s for s in result.series if s.label in result.plot]
        return svg_text(shown, config.log_x, result.title, result.x_label)
    header = "".join(f"# {line}\n" for line in config.header() + result.notes)
    return header + text_table(result.series, result.x_label)


def run(config: RunConfig, stdout=None) -> int:
    """Execute one command; returns the process exit status."""
    stdout = stdout or sys.stdout
    try:
        if config.command not in HANDLERS:
            raise UsageError(f"unknown command {config.command!r}")
        result = HANDLERS[config.command](config.params)
        text = render(config, result)
        path = resolve_output(config.output_path)
        if path is None:
            stdout.write(text)
        else:
            atomic_write(path, text)
    except UsageError as exc:
        print(f"primelab: usage error: {exc}", file=sys.stderr)
        return 2
    except PrimelabError as exc:
        print(f"primelab: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"primelab: {exc}", file=sys.stderr)
        return 1
    return 0


def _uint64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits: {text}")
    return value


def _int(text: str) -> int:
    """Integers, also accepting 1e6-style literals when they are exact."""
    try:
        return int(text, 10)
    except ValueError:
        value = float(text)
        if not value.is_integer():
            raise argparse.ArgumentTypeError(f"not an integer: {text}")
        return int(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primelab",
        description="Desk-scale experiments on the distribution of primes.",
    )
    parser.add_argument("--version", action="version", version=f"primelab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "svg", "text"), default="csv")
    common.add_argument("--log-x", action="store_true", help="logarithmic x axis in SVG")
    common.add_argument("--max-limit", type=_int, default=SIEVE_CEILING,
                        help="sieve size ceiling (default: %(default)s)")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    add("pi", "prime counting function").add_argument("--x", type=_int, nargs="+", required=True)
    add("recip-sum", "sum of 1/p against log log x").add_argument(
        "--x", type=_int, nargs="+", required=True)

    g = add("gamma", "harmonic sum minus log x")
    g.add_argument("--x-max", type=_int, default=1000)
    g.add_argument("--points", type=_int, default=1000,
                   help="grid size when x-max exceeds it (log-spaced)")

    e = add("euler-product", "truncated Euler product against zeta partial sums")
    e.add_argument("--s", type=float, default=2.0)
    e.add_argument("--prime-cutoff", type=_int, nargs="+", default=[10, 100, 1000, 10000])
    e.add_argument("--terms", type=_int, default=10**6, help="zeta partial-sum length")

    t = add("tail", "prime-power tail of the log Euler product")
    t.add_argument("--prime-cutoff", type=_int, nargs="+", default=[10**3, 10**4, 10**5, 10**6])
    t.add_argument("--term-cutoff", type=_int, default=64)

    for name, help_ in (("li", "logarithmic integral"), ("compare", "pi(x) against estimates")):
        c = add(name, help_)
        c.add_argument("--x", type=_int, nargs="+", required=True)
        c.add_argument("--tolerance", type=float, default=1e-10)

    add("abel", "partial summation reconstruction of pi(x)").add_argument(
        "--x", type=_int, nargs="+", required=True)

    cr = add("cramer", "Cramér random model")
    cr.add_argument("--x-max", type=_int, required=True)
    cr.add_argument("--trials", type=_int, default=200)
    cr.add_argument("--seed", type=_uint64, default=0)
    cr.add_argument("--workers", type=_int, default=1)
    cr.add_argument("--max-x", type=_int, default=CRAMER_CEILING, help="x-max ceiling")

    ek = add("erdos-kac", "distribution of the number of prime factors")
    ek.add_argument("--n-max", type=_int, nargs="+", default=[10**5, 10**6])
    ek.add_argument("--n-min", type=_int, default=3)
    ek.add_argument("--multiplicity", action="store_true", help="count repeated factors (Omega)")
    ek.add_argument("--sample-size", type=_int, default=None)
    ek.add_argument("--seed", type=_uint64, default=0)
    ek.add_argument("--max-n", type=_int, default=OMEGA_CEILING, help="n-max ceiling")
    return parser


_NON_PARAMS = {"command", "output", "format", "log_x"}


def config_from_args(args: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(args).items() if k not in _NON_PARAMS}
    return RunConfig(args.command, params, args.output, args.format, args.log_x)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
