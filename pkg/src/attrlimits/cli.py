"""Command-line interface.

::

    attrlimits limits binom --n 50 --x 4 --alpha 0.05
    attrlimits limits poisson --n 4 --y 7
    attrlimits limits geom --n 5 --y 12 --format text
    attrlimits chart --kind p --input data.csv --param 0.1 --figure chart.png
    attrlimits chart --kind c --input data.csv --format svg > chart.svg
    attrlimits simulate binom --param 0.1 --n 50 --reps 100000 --seed 7

JSON goes to stdout with sorted keys and numbers cut to 12 significant
digits. Errors go to stderr with exit status 2.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import asdict

from .charts import DEFAULT_ALPHA, ChartKind, ChartResult, build_chart
from .dataio import DataError, read_dataset
from .fiducial import (
    BinomialObservation,
    GeometricObservation,
    Interval,
    PoissonObservation,
    binom_fiducial,
    geometric_fiducial,
    poisson_fiducial,
)
from .simulation import CoverageReport, run_coverage
from .special import DomainError

__all__ = ["main", "to_json"]

SIG_DIGITS = 12
EXIT_USAGE = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _round(value):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return float(f"{value:.{SIG_DIGITS}g}")
    if isinstance(value, dict):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    return value


def to_json(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True, indent=2) + "\n"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _tsv(rows) -> str:
    return "".join("\t".join(_fmt(c) for c in row) + "\n" for row in rows)


# -- payloads ---------------------------------------------------------------


def interval_payload(
    distribution: str, n: int, count_name: str, count: int, alpha: float, iv: Interval
) -> dict:
    return {
        "distribution": distribution,
        "n": n,
        count_name: count,
        "alpha": alpha,
        "confidence": iv.confidence,
        "lower": iv.lower,
        "upper": iv.upper,
    }


def chart_payload(result: ChartResult) -> dict:
    src = result.parameter_source
    return {
        "kind": result.kind.value,
        "alpha": result.alpha,
        "center": result.center,
        "parameter_source": {
            "kind": src.kind,
            "value": src.value,
            "interval": None
            if src.interval is None
            else {
                "lower": src.interval.lower,
                "upper": src.interval.upper,
                "confidence": src.interval.confidence,
            },
        },
        "points": [asdict(p) for p in result.points],
        "signals": sum(p.signal for p in result.points),
    }


def report_payload(report: CoverageReport) -> dict:
    return report.to_dict()


# -- commands ---------------------------------------------------------------


def _check_alpha(alpha: float, flag: str = "--alpha") -> None:
    if not 0.0 < alpha < 1.0:
        raise UsageError(f"{flag} must lie strictly between 0 and 1, got {alpha}")


def _no_svg(args) -> None:
    if args.format == "svg":
        raise UsageError("--format svg is only valid for the chart command")


def cmd_limits(args, out) -> None:
    _no_svg(args)
    _check_alpha(args.alpha)
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.distribution == "binom":
        count_name, count = "x", args.x
        if count < 0:
            raise UsageError(f"--x must be >= 0, got {count}")
        if count > args.n:
            raise UsageError(f"--x must not exceed --n (x={count}, n={args.n})")
        iv = binom_fiducial(BinomialObservation(args.n, count), args.alpha)
    else:
        count_name, count = "y", args.y
        if count < 0:
            raise UsageError(f"--y must be >= 0, got {count}")
        if args.distribution == "poisson":
            iv = poisson_fiducial(PoissonObservation(args.n, count), args.alpha)
        else:
            iv = geometric_fiducial(GeometricObservation(args.n, count), args.alpha)
    payload = interval_payload(args.distribution, args.n, count_name, count, args.alpha, iv)
    if args.format == "json":
        out.write(to_json(payload))
    else:
        keys = ["distribution", "n", count_name, "alpha", "lower", "upper"]
        out.write(_tsv([keys, [payload[k] for k in keys]]))


def cmd_chart(args, out) -> None:
    from .plotting import chart_figure, save_figure

    _check_alpha(args.alpha)
    try:
        data = read_dataset(args.input)
    except OSError as exc:
        raise UsageError(f"--input: cannot read {args.input}: {exc.strerror}") from None
    except DataError as exc:
        raise UsageError(f"--input {args.input}: {exc}") from None
    try:
        result = build_chart(data, args.kind, args.alpha, args.param)
    except DomainError as exc:
        flag = "--param" if args.param is not None and "parameter" in str(exc) else "--input"
        raise UsageError(f"{flag}: {exc}") from None

    if args.figure:
        save_figure(chart_figure(result), args.figure)
    if args.format == "json":
        out.write(to_json(chart_payload(result)))
    elif args.format == "text":
        rows = [["subgroup", "statistic", "center", "lcl", "ucl", "signal"]]
        rows += [[p.subgroup, p.statistic, p.center, p.lcl, p.ucl, p.signal] for p in result.points]
        out.write(_tsv(rows))
    else:
        buf = io.BytesIO()
        save_figure(chart_figure(result), buf, "svg")
        out.write(buf.getvalue().decode("utf-8"))


def cmd_simulate(args, out) -> None:
    _no_svg(args)
    _check_alpha(args.alpha)
    if args.reps < 1:
        raise UsageError(f"--reps must be >= 1, got {args.reps}")
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if args.workers < 1:
        raise UsageError(f"--workers must be >= 1, got {args.workers}")
    try:
        report = run_coverage(
            args.distribution, args.param, args.n, args.alpha, args.reps, args.seed, args.workers
        )
    except DomainError as exc:
        raise UsageError(f"--param: {exc}") from None
    if args.figure:
        from .plotting import coverage_figure, save_figure

        save_figure(coverage_figure(report), args.figure)
    payload = report_payload(report)
    if args.format == "json":
        out.write(to_json(payload))
    else:
        out.write(_tsv(sorted(payload.items())))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="attrlimits", description="Exact and fiducial limits for attribute data.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    limits = sub.add_parser("limits", help="fiducial limits for one observation")
    dist = limits.add_subparsers(dest="distribution", required=True, parser_class=_Parser)
    for name, count_flag, helptext in (
        ("binom", "--x", "number of nonconforming items among --n trials"),
        ("poisson", "--y", "total count over --n observations"),
        ("geom", "--y", "total failures over --n geometric observations"),
    ):
        p = dist.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument(count_flag, type=int, required=True, help=helptext)
        p.add_argument("--alpha", type=float, default=0.05)
        p.add_argument("--format", choices=["json", "text", "svg"], default="json")
        p.set_defaults(func=cmd_limits)

    chart = sub.add_parser("chart", help="control chart from subgroup,count,size CSV")
    chart.add_argument(
        "--kind", type=str.lower, choices=[k.value for k in ChartKind], required=True
    )
    chart.add_argument("--input", required=True)
    chart.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    chart.add_argument(
        "--param", type=float, default=None, help="known parameter; omit to estimate"
    )
    chart.add_argument("--format", choices=["json", "text", "svg"], default="json")
    chart.add_argument("--figure", default=None, help="also save the chart to this image path")
    chart.set_defaults(func=cmd_chart)

    sim = sub.add_parser("simulate", help="Monte Carlo coverage of fiducial vs normal limits")
    sim.add_argument("distribution", choices=["binom", "poisson", "geom"])
    sim.add_argument("--param", type=float, required=True)
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--alpha", type=float, default=0.05)
    sim.add_argument("--reps", type=int, default=10_000)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--format", choices=["json", "text", "svg"], default="json")
    sim.add_argument("--figure", default=None, help="also save a coverage bar chart here")
    sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except UsageError as exc:
        err.write(f"attrlimits: error: {exc}\n")
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
