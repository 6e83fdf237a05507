"""Closed-form trajectories in anomaly variables.

Each regime has a parameter in which time, arc length and position become
elementary functions:

========  ===========  ==========================================
case      parameter    relation to the velocity angle theta
========  ===========  ==========================================
Case 1    psi          tan(psi/2) = sqrt((lam+1)/(lam-1)) tan(theta/2)
Case 2    theta        (no anomaly; closed forms in theta)
Case 3    omega        omega = -cot(theta/2)
Case 4    chi          tanh(chi/2) = sqrt((1+lam)/(1-lam)) tan(theta/2)
Case 5    eta          tanh(-eta/2) = sqrt((1-lam)/(1+lam)) cot(theta/2)
line      t            theta = theta0
========  ===========  ==========================================

The prefactors are written in reduced form, e.g. ``(lam-1)/(lam**2-1)**1.5``
as ``1/((lam+1) sqrt(lam**2-1))``, which removes the cancellation of the
printed form. The remaining ``1/sqrt(|lam**2-1|)`` growth next to lam = 1 is
genuine: differences such as ``x - s`` are computed from O(|lam-1|**-1/2)
terms and lose about ``log10(1/sqrt|lam-1|)`` digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from .core import (
    LINE_TOLERANCE,
    TWO_PI,
    Case,
    CaseClass,
    DomainError,
    ParameterError,
    PhysicalScale,
    TrackParams,
    TrackSample,
    _radius,
    classify,
)

__all__ = [
    "Coords",
    "AnomalyRange",
    "Trace",
    "anomaly_of_theta",
    "theta_of_anomaly",
    "eval_case1",
    "eval_case3",
    "eval_case4",
    "eval_case5",
    "eval_line",
    "default_range",
    "trace",
]


class Coords(NamedTuple):
    t: np.ndarray | float
    s: np.ndarray | float
    x: np.ndarray | float
    y: np.ndarray | float


def _out(arg, *values):
    if np.ndim(arg) == 0:
        return tuple(float(v) for v in values)
    return values


def _case1_beta(lam: float) -> float:
    # tan(theta/2) = c tan(psi/2) with c = (1 - beta)/(1 + beta)
    return 1.0 / (lam + math.sqrt((lam - 1.0) * (lam + 1.0)))


def anomaly_of_theta(theta, params: TrackParams):
    """Anomaly parameter of the regime of ``params`` at velocity angle ``theta``.

    Every transform increases with theta. For Case 1 any real theta is
    accepted and psi follows theta across loops (psi - theta is 2*pi periodic).
    Case 2 has no anomaly and returns theta unchanged.
    """
    case = classify(params)
    lam = params.lam
    th = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(th)):
        raise DomainError("theta must be finite")
    kind = case.kind
    if kind is Case.CASE1:
        b = _case1_beta(lam)
        out = th + 2.0 * np.arctan(b * np.sin(th) / (1.0 - b * np.cos(th)))
    elif kind is Case.CASE2:
        if np.any((th < 0.0) | (th > TWO_PI)):
            raise DomainError("theta outside [0, 2*pi] for Case 2")
        out = th
    elif kind is Case.CASE3:
        if np.any((th <= 0.0) | (th >= TWO_PI)):
            raise DomainError("theta outside (0, 2*pi) for Case 3")
        h = 0.5 * th
        out = -np.cos(h) / np.sin(h)
    elif kind is Case.CASE4:
        if np.any((th <= case.theta_min) | (th >= case.theta_max)):
            raise DomainError("theta outside (-arccos(lam), arccos(lam)) for Case 4")
        out = 2.0 * np.arctanh(math.sqrt((1.0 + lam) / (1.0 - lam)) * np.tan(0.5 * th))
    elif kind is Case.CASE5:
        if np.any((th <= case.theta_min) | (th >= case.theta_max)):
            raise DomainError("theta outside (arccos(lam), 2*pi - arccos(lam)) for Case 5")
        h = 0.5 * th
        out = -2.0 * np.arctanh(math.sqrt((1.0 - lam) / (1.0 + lam)) * np.cos(h) / np.sin(h))
    else:
        raise ParameterError("the straight line is parametrized by time, not by an anomaly")
    return float(out) if np.ndim(theta) == 0 else out


def theta_of_anomaly(param, case: CaseClass, lam: float):
    """Inverse of :func:`anomaly_of_theta` (vectorised, no range checks)."""
    a = np.asarray(param, dtype=float)
    kind = case.kind
    if kind is Case.CASE1:
        # branch-free: theta - psi is a smooth 2*pi-periodic function of psi
        b = _case1_beta(lam)
        return a - 2.0 * np.arctan(b * np.sin(a) / (1.0 + b * np.cos(a)))
    if kind is Case.CASE2:
        return a.copy()
    if kind is Case.CASE3:
        return math.pi + 2.0 * np.arctan(a)
    if kind is Case.CASE4:
        return 2.0 * np.arctan(math.sqrt((1.0 - lam) / (1.0 + lam)) * np.tanh(0.5 * a))
    if kind is Case.CASE5:
        return math.pi + 2.0 * np.arctan(math.sqrt((1.0 + lam) / (1.0 - lam)) * np.tanh(0.5 * a))
    raise ParameterError("the straight line has no anomaly")


def eval_case1(psi, lam: float):
    """Time, arc length and position on the bottom-anchored elliptic track."""
    lam = float(lam)
    if not lam > 1.0:
        raise ParameterError(f"Case 1 needs lambda > 1, got {lam}")
    p = np.asarray(psi, dtype=float)
    q = math.sqrt((lam - 1.0) * (lam + 1.0))
    a1 = 1.0 / ((lam + 1.0) * q)
    a2 = 0.5 / ((lam + 1.0) ** 2 * q)
    sp, cp = np.sin(p), np.cos(p)
    t = a1 * (lam * p + sp)
    s = a2 * ((2.0 * lam * lam + 1.0) * p + (4.0 * lam + cp) * sp)
    x = a2 * (3.0 * lam * p + (2.0 * (lam * lam + 1.0) + lam * cp) * sp)
    y = -0.5 * ((lam + cp) / (lam + 1.0)) ** 2
    return Coords(*_out(psi, t, s, x, y))


def eval_case3(omega):
    w = np.asarray(omega, dtype=float)
    w2 = w * w
    t = (w2 + 3.0) * w / 3.0
    s = ((3.0 * w2 + 10.0) * w2 + 15.0) * w / 15.0
    x = (w2 * w2 - 5.0) * w / 5.0
    y = -0.5 * (w2 + 1.0) ** 2
    return Coords(*_out(omega, t, s, x, y))


def eval_case4(chi, lam: float):
    """Bottom-anchored hyperbolic track; time runs against chi."""
    lam = float(lam)
    if not 0.0 <= lam < 1.0:
        raise ParameterError(f"Case 4 needs 0 <= lambda < 1, got {lam}")
    c = np.asarray(chi, dtype=float)
    q = math.sqrt((1.0 - lam) * (1.0 + lam))
    a1 = -1.0 / ((1.0 + lam) * q)
    a2 = -0.5 / ((1.0 + lam) ** 2 * q)
    sc, cc = np.sinh(c), np.cosh(c)
    t = a1 * (lam * c + sc)
    s = a2 * ((2.0 * lam * lam + 1.0) * c + (4.0 * lam + cc) * sc)
    x = a2 * (3.0 * lam * c + (2.0 * (lam * lam + 1.0) + lam * cc) * sc)
    y = -0.5 * ((lam + cc) / (1.0 + lam)) ** 2
    return Coords(*_out(chi, t, s, x, y))


def eval_case5(eta, lam: float):
    """Top-anchored hyperbolic track.

    The x bracket is ``3 lam eta - (2 (lam**2 + 1) - lam cosh eta) sinh eta``;
    this grouping satisfies dx/dt = r cos(theta) and matches direct integration
    of the equations of motion.
    """
    lam = float(lam)
    if not 0.0 <= lam < 1.0:
        raise ParameterError(f"Case 5 needs 0 <= lambda < 1, got {lam}")
    e = np.asarray(eta, dtype=float)
    q = math.sqrt((1.0 - lam) * (1.0 + lam))
    a1 = 1.0 / ((1.0 - lam) * q)
    a2 = 0.5 / ((1.0 - lam) ** 2 * q)
    se, ce = np.sinh(e), np.cosh(e)
    t = a1 * (se - lam * e)
    s = a2 * ((2.0 * lam * lam + 1.0) * e - (4.0 * lam - ce) * se)
    x = a2 * (3.0 * lam * e - (2.0 * (lam * lam + 1.0) - lam * ce) * se)
    y = -0.5 * ((lam - ce) / (1.0 - lam)) ** 2
    return Coords(*_out(eta, t, s, x, y))


def _check_line(params: TrackParams) -> None:
    if abs(params.L_ang) >= LINE_TOLERANCE:
        raise ParameterError("lambda - cos(theta0) != 0: not a straight line")


def eval_line(t, params: TrackParams):
    """Arc length and position at time ``t`` on the straight line, as ``(s, x, y)``."""
    _check_line(params)
    tt = np.asarray(t, dtype=float)
    sin0, cos0 = math.sin(params.theta0), math.cos(params.theta0)
    r = 1.0 - sin0 * tt
    if np.any(r <= 0.0):
        raise DomainError("speed 1 - sin(theta0) t reaches zero; the particle stops")
    s = tt - 0.5 * sin0 * tt * tt
    x = cos0 * s
    y = -0.5 + sin0 * s
    return _out(t, s, x, y)


_EVALUATORS = {
    Case.CASE1: lambda a, lam: eval_case1(a, lam),
    Case.CASE3: lambda a, lam: eval_case3(a),
    Case.CASE4: lambda a, lam: eval_case4(a, lam),
    Case.CASE5: lambda a, lam: eval_case5(a, lam),
}


@dataclass(frozen=True)
class AnomalyRange:
    """Uniform grid of ``n`` anomaly values on [lo, hi]."""

    lo: float
    hi: float
    n: int = 1000

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ParameterError("range bounds must be finite")
        if not self.lo < self.hi:
            raise ParameterError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError(f"need at least 2 samples, got {self.n}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, int(self.n))


@dataclass(frozen=True, eq=False)
class Trace:
    """A sampled trajectory stored column-wise.

    Indexing returns a :class:`TrackSample`; iteration yields samples in
    increasing time.
    """

    case: CaseClass
    params: TrackParams
    param: np.ndarray
    t: np.ndarray
    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    r: np.ndarray
    vx: np.ndarray
    vy: np.ndarray

    COLUMNS = TrackSample.FIELDS

    def __len__(self):
        return len(self.param)

    def __getitem__(self, i) -> TrackSample:
        return TrackSample(*(float(getattr(self, c)[i]) for c in self.COLUMNS))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def samples(self) -> list[TrackSample]:
        return list(self)

    def as_array(self) -> np.ndarray:
        """``(n, 9)`` array in the column order of :attr:`COLUMNS`."""
        return np.column_stack([getattr(self, c) for c in self.COLUMNS])

    def replace(self, **changes) -> Trace:
        kw = {f.name: getattr(self, f.name) for f in fields(self)}
        kw.update(changes)
        return Trace(**kw)

    def time_ordered(self) -> Trace:
        if len(self) > 1 and self.t[-1] < self.t[0]:
            return self.replace(**{c: getattr(self, c)[::-1].copy() for c in self.COLUMNS})
        return self

    def to_physical(self, scale: PhysicalScale) -> Trace:
        L, T, V = scale.length, scale.time, scale.speed
        return self.replace(
            t=self.t * T, s=self.s * L, x=self.x * L, y=self.y * L,
            r=self.r * V, vx=self.vx * V, vy=self.vy * V,
        )


def default_range(case: CaseClass, params: TrackParams, n: int = 1000) -> AnomalyRange:
    """Anomaly range used when none is given: one period for Case 1, the
    full angular range for Case 2, and [-2, 2] for the unbounded cases."""
    kind = case.kind
    if kind is Case.CASE1:
        return AnomalyRange(0.0, TWO_PI, n)
    if kind is Case.CASE2:
        return AnomalyRange(0.0, TWO_PI, n)
    if kind is Case.LINE:
        sin0 = math.sin(params.theta0)
        hi = 2.0 if sin0 <= 0.45 else 0.9 / sin0
        return AnomalyRange(0.0, hi, n)
    return AnomalyRange(-2.0, 2.0, n)


def trace(case: CaseClass, params: TrackParams, rng: AnomalyRange | None = None) -> Trace:
    """Sample the trajectory of ``params`` uniformly in its anomaly.

    ``case`` must be the regime :func:`~cnftrack.core.classify` assigns to
    ``params``. Samples come back ordered by increasing time. That is
    decreasing anomaly for Case 4, where the velocity angle turns clockwise.
    """
    actual = classify(params)
    if actual.kind is not case.kind:
        raise ParameterError(
            f"case/lambda mismatch: lambda={params.lam}, theta0={params.theta0} is "
            f"{actual.label}, not {case.label}"
        )
    if rng is None:
        rng = default_range(case, params)
    grid = rng.grid()
    lam = params.lam
    kind = case.kind

    if kind is Case.CASE2:
        from .theta_integrals import assemble_theta_trace

        return assemble_theta_trace(case, params, grid)

    if kind is Case.LINE:
        s, x, y = eval_line(grid, params)
        r = 1.0 - math.sin(params.theta0) * grid
        theta = np.full_like(grid, params.theta0)
        return Trace(
            case=case, params=params, param=grid, t=grid.copy(),
            s=s, x=x, y=y, theta=theta, r=r,
            vx=r * math.cos(params.theta0), vy=r * math.sin(params.theta0),
        )

    with np.errstate(over="ignore", invalid="ignore"):
        t, s, x, y = _EVALUATORS[kind](grid, lam)
    if not all(np.all(np.isfinite(v)) for v in (t, s, x, y)):
        raise DomainError("anomaly range too wide: coordinates overflow")
    theta = theta_of_anomaly(grid, case, lam)
    r = _radius(theta, lam, params.L_ang)
    if np.any(~np.isfinite(r)) or np.any(r <= 0.0):
        raise DomainError("anomaly range reaches the speed asymptote")
    tr = Trace(
        case=case, params=params, param=grid, t=t, s=s, x=x, y=y,
        theta=theta, r=r, vx=r * np.cos(theta), vy=r * np.sin(theta),
    )
    return tr.time_ordered()
