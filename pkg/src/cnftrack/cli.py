"""Command-line front end.

Exit codes: 0 success, 1 verification ran but failed, 2 invalid arguments,
3 domain error (no such track, particle stops, open-loop metrics, ...).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass

from .analytic import AnomalyRange, Trace, default_range, trace
from .core import (
    Case,
    CaseClass,
    DomainError,
    ParameterError,
    PhysicalScale,
    TrackError,
    TrackParams,
    classify,
)
from .metrics import STANDARD_GRAVITY, loop_metrics
from .oracle import VerifyConfig, verify
from .plot import Curve, render_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

COMMAND_FORMATS = {
    "trace": ("csv", "json"),
    "metrics": ("json",),
    "verify": ("json",),
    "classify": ("json",),
    "plot": ("svg",),
}

CSV_HEADER = "param,t,s,x,y,theta,r,vx,vy"

_PI_RE = re.compile(
    r"^\s*(?P<sign>[+-])?\s*(?P<mul>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*"
    r"(?:/\s*(?P<div>\d+(?:\.\d*)?|\.\d+))?\s*$",
    re.IGNORECASE,
)


def parse_angle(text: str) -> float:
    """Parse a float or a multiple of pi such as ``pi``, ``-pi/2``, ``2*pi``, ``3pi/4``."""
    m = _PI_RE.match(text)
    if m:
        value = math.pi
        if m.group("mul"):
            value = float(m.group("mul")) * math.pi
        if m.group("div"):
            value = value / float(m.group("div"))
        return -value if m.group("sign") == "-" else value
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or multiple of pi: {text!r}") from None


def parse_lambdas(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad lambda list: {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty lambda list")
    return values


def _samples(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("need at least 2 samples")
    return n


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be positive")
    return v


@dataclass
class RunConfig:
    command: str
    lambda_list: list[float]
    case: Case | None = None
    theta0: float | None = None
    samples: int = 1000
    param_lo: float | None = None
    param_hi: float | None = None
    v0: float = 20.0
    g: float = STANDARD_GRAVITY
    format: str | None = None
    out: str = "-"
    physical: bool = False

    @property
    def scale(self) -> PhysicalScale:
        return PhysicalScale(self.v0, self.g)

    def output_format(self) -> str:
        allowed = COMMAND_FORMATS[self.command]
        fmt = self.format or allowed[0]
        if fmt not in allowed:
            raise ParameterError(f"format {fmt!r} is not available for {self.command}")
        return fmt


def _canonical_theta0(case: Case | None, lam: float, theta0: float | None) -> float:
    if theta0 is not None:
        return theta0
    if case in (Case.CASE2, Case.CASE3, Case.CASE5):
        return math.pi
    if case is Case.LINE:
        if lam > 1.0:
            raise ParameterError("a straight line needs lambda <= 1")
        return math.acos(lam)
    return 0.0


def resolve(case: Case | None, lam: float, theta0: float | None) -> tuple[CaseClass, TrackParams]:
    params = TrackParams(lam, _canonical_theta0(case, lam, theta0))
    actual = classify(params)
    if case is not None and actual.kind is not case:
        raise ParameterError(
            f"case/lambda mismatch: lambda={lam} with theta0={params.theta0} is "
            f"{actual.label}, not {case.label}"
        )
    return actual, params


def _range(config: RunConfig, case: CaseClass, params: TrackParams) -> AnomalyRange:
    base = default_range(case, params, config.samples)
    lo = base.lo if config.param_lo is None else config.param_lo
    hi = base.hi if config.param_hi is None else config.param_hi
    return AnomalyRange(lo, hi, config.samples)


def _single_lambda(config: RunConfig) -> float:
    if len(config.lambda_list) != 1:
        raise ParameterError(f"{config.command} takes exactly one lambda")
    return config.lambda_list[0]


def _num(v) -> str:
    # shortest repr that round-trips
    return repr(float(v))


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def format_csv(tr: Trace) -> str:
    lines = [CSV_HEADER]
    data = tr.as_array()
    for row in data:
        lines.append(",".join(_num(v) for v in row))
    return "\n".join(lines) + "\n"


def run_trace(config: RunConfig) -> tuple[int, str]:
    fmt = config.output_format()
    lam = _single_lambda(config)
    case, params = resolve(config.case, lam, config.theta0)
    rng = _range(config, case, params)
    tr = trace(case, params, rng)
    if config.physical:
        tr = tr.to_physical(config.scale)
    if fmt == "csv":
        return EXIT_OK, format_csv(tr)
    doc = {
        "params": {
            "case": case.label,
            "lambda": params.lam,
            "theta0": params.theta0,
            "lo": rng.lo,
            "hi": rng.hi,
            "samples": rng.n,
            "units": "SI" if config.physical else "dimensionless",
            **({"v0": config.v0, "g": config.g} if config.physical else {}),
        },
        "samples": [dict(zip(Trace.COLUMNS, map(float, row))) for row in tr.as_array()],
    }
    return EXIT_OK, _json(doc)


def run_metrics(config: RunConfig) -> tuple[int, str]:
    config.output_format()
    scale = config.scale
    docs = [loop_metrics(lam, scale).to_dict(scale) for lam in config.lambda_list]
    return EXIT_OK, _json(docs[0] if len(docs) == 1 else docs)


def run_verify(config: RunConfig) -> tuple[int, str]:
    config.output_format()
    lam = _single_lambda(config)
    case, params = resolve(config.case, lam, config.theta0)
    vc = VerifyConfig(samples=config.samples, lo=config.param_lo, hi=config.param_hi)
    report = verify(case, params, vc)
    return (EXIT_OK if report.passed else EXIT_FAILED), _json(report.to_dict())


def run_classify(config: RunConfig) -> tuple[int, str]:
    config.output_format()
    lam = _single_lambda(config)
    params = TrackParams(lam, 0.0 if config.theta0 is None else config.theta0)
    cc = classify(params)
    if config.case is not None and cc.kind is not config.case:
        raise ParameterError(f"case/lambda mismatch: {cc.label}, not {config.case.label}")
    doc = {
        "lambda": params.lam,
        "theta0": params.theta0,
        "case": cc.label,
        "theta_range": [cc.theta_min, cc.theta_max],
    }
    return EXIT_OK, _json(doc)


def _label(lam: float) -> str:
    return f"λ = {lam:g}"


def run_plot(config: RunConfig) -> tuple[int, str]:
    config.output_format()
    curves = []
    kinds = set()
    for lam in config.lambda_list:
        case, params = resolve(config.case, lam, config.theta0)
        kinds.add(case.label)
        tr = trace(case, params, _range(config, case, params))
        if config.physical:
            tr = tr.to_physical(config.scale)
        curves.append(Curve(_label(lam), tr.x, tr.y))
    title = f"Constant normal force tracks: {', '.join(sorted(kinds))}"
    unit = "m" if config.physical else "v0²/g"
    return EXIT_OK, render_svg(curves, title=title, unit=unit)


RUNNERS = {
    "trace": run_trace,
    "metrics": run_metrics,
    "verify": run_verify,
    "classify": run_classify,
    "plot": run_plot,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lambdas", type=parse_lambdas, required=True,
                        help="load factor N/(m g); comma-separated list for plot and metrics")
    common.add_argument("--case", type=_case_arg, default=None,
                        help="1-5 or 'line'; inferred from lambda and theta0 when omitted")
    common.add_argument("--theta0", type=parse_angle, default=None,
                        help="initial velocity angle in radians (accepts pi, pi/3, ...)")
    common.add_argument("--lo", type=parse_angle, default=None, help="first anomaly value")
    common.add_argument("--hi", type=parse_angle, default=None, help="last anomaly value")
    common.add_argument("--samples", type=_samples, default=1000)
    common.add_argument("--v0", type=_positive, default=20.0, help="reference speed [m/s]")
    common.add_argument("--g", type=_positive, default=STANDARD_GRAVITY, help="gravity [m/s^2]")
    common.add_argument("--format", default=None, choices=("csv", "json", "svg"))
    common.add_argument("--out", "-o", default="-", help="output file, '-' for stdout")

    parser = _Parser(prog="cnftrack", description="Tracks with a normal force of constant magnitude.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("trace", parents=[common], help="sample a track (CSV or JSON)")
    p.add_argument("--physical", action="store_true", help="scale to SI units with --v0/--g")
    sub.add_parser("metrics", parents=[common], help="loop period, length, width, height, top speed")
    sub.add_parser("verify", parents=[common], help="check a track against invariants and the ODE")
    sub.add_parser("classify", parents=[common], help="regime of (lambda, theta0)")
    p = sub.add_parser("plot", parents=[common], help="SVG figure of one or more tracks")
    p.add_argument("--dimensionless", dest="physical", action="store_false",
                   help="plot in units of v0^2/g instead of metres")
    p.set_defaults(physical=True)
    return parser


def _case_arg(text: str) -> Case:
    try:
        return Case.parse(text)
    except ParameterError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=ns.command,
        lambda_list=ns.lambdas,
        case=ns.case,
        theta0=ns.theta0,
        samples=ns.samples,
        param_lo=ns.lo,
        param_hi=ns.hi,
        v0=ns.v0,
        g=ns.g,
        format=ns.format,
        out=ns.out,
        physical=getattr(ns, "physical", False),
    )


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        config = config_from_args(ns)
        code, text = RUNNERS[config.command](config)
    except ParameterError as exc:
        print(f"cnftrack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"cnftrack: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except TrackError as exc:  # pragma: no cover - all subclasses handled above
        print(f"cnftrack: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(text, config.out)
    except OSError as exc:
        print(f"cnftrack: cannot write {config.out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
