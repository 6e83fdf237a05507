"""Closed-form antiderivatives in the velocity angle theta.

For case ``i`` with anchor angle ``theta0`` the raw integrals are

    t_i = int_{theta0}^{theta} (lam - cos u)**-2 du
    s_i = int_{theta0}^{theta} (lam - cos u)**-3 du
    x_i = int_{theta0}^{theta} cos(u) (lam - cos u)**-3 du

The printed forms contain ``sin(theta)/(1 +- cos(theta))``, which is 0/0 at the
removable endpoints. They are evaluated here through half-angle sines and
cosines (``atan2`` for the elliptic arctangents) so that Case 1 is finite at
theta = +-pi and Case 2 at theta = 0, 2*pi.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    Case,
    CaseClass,
    DomainError,
    ParameterError,
    TrackParams,
    _radius,
    classify,
)

__all__ = [
    "CASE_THETA0",
    "ThetaPoint",
    "t_raw",
    "s_raw",
    "x_raw",
    "y_of_theta",
    "theta_point",
    "assemble_theta_trace",
]

CASE_THETA0 = {1: 0.0, 2: math.pi, 3: math.pi, 4: 0.0, 5: math.pi}


def _check_case(i: int, lam: float) -> None:
    if i not in CASE_THETA0:
        raise ParameterError(f"case index must be 1..5, got {i!r}")
    ok = {1: lam > 1.0, 2: lam > 1.0, 3: lam == 1.0, 4: 0.0 <= lam < 1.0, 5: 0.0 <= lam < 1.0}[i]
    if not ok:
        raise ParameterError(f"lambda={lam!r} is inconsistent with case {i}")


def _check_theta(i: int, theta: np.ndarray, lam: float) -> None:
    # Cases 1 and 2 have finite integrands on the closed interval.
    if i == 1:
        bad = (theta < -math.pi) | (theta > math.pi)
    elif i == 2:
        bad = (theta < 0.0) | (theta > 2.0 * math.pi)
    elif i == 3:
        bad = (theta <= 0.0) | (theta >= 2.0 * math.pi)
    elif i == 4:
        a = math.acos(lam)
        bad = (theta <= -a) | (theta >= a)
    else:
        a = math.acos(lam)
        bad = (theta <= a) | (theta >= 2.0 * math.pi - a)
    if np.any(bad | ~np.isfinite(theta)):
        raise DomainError(f"theta outside the open range of case {i}")


def _prepare(i, theta, lam):
    lam = float(lam)
    _check_case(i, lam)
    th = np.asarray(theta, dtype=float)
    _check_theta(i, th, lam)
    return th, lam


def _angular_term(i: int, th: np.ndarray, lam: float) -> np.ndarray:
    """The arctan/arctanh part divided by the square root of |lam**2 - 1|."""
    h = 0.5 * th
    sh, ch = np.sin(h), np.cos(h)
    if i == 1:
        q = math.sqrt((lam - 1.0) * (lam + 1.0))
        return np.arctan2(math.sqrt((lam + 1.0) / (lam - 1.0)) * sh, ch) / q
    if i == 2:
        q = math.sqrt((lam - 1.0) * (lam + 1.0))
        return -np.arctan2(math.sqrt((lam - 1.0) / (lam + 1.0)) * ch, sh) / q
    q = math.sqrt((1.0 - lam) * (1.0 + lam))
    if i == 4:
        return -np.arctanh(math.sqrt((1.0 + lam) / (1.0 - lam)) * sh / ch) / q
    return -np.arctanh(math.sqrt((1.0 - lam) / (1.0 + lam)) * ch / sh) / q


def _scalar_out(theta, value):
    return float(value) if np.ndim(theta) == 0 else value


def t_raw(i: int, theta, lam: float):
    th, lam = _prepare(i, theta, lam)
    if i == 3:
        h = 0.5 * th
        sh, ch = np.sin(h), np.cos(h)
        out = -(2.0 - np.cos(th)) * ch / (6.0 * sh**3)
    else:
        A = _angular_term(i, th, lam)
        out = (2.0 * lam * A + np.sin(th) / (lam - np.cos(th))) / (lam * lam - 1.0)
    return _scalar_out(theta, out)


def s_raw(i: int, theta, lam: float):
    th, lam = _prepare(i, theta, lam)
    c = np.cos(th)
    if i == 3:
        h = 0.5 * th
        sh, ch = np.sin(h), np.cos(h)
        out = -(2.0 * c * c - 6.0 * c + 7.0) * ch / (60.0 * sh**5)
    else:
        A = _angular_term(i, th, lam)
        d = lam - c
        rest = (4.0 * lam * lam - 3.0 * lam * c - 1.0) * np.sin(th) / (2.0 * d * d)
        out = ((2.0 * lam * lam + 1.0) * A + rest) / (lam * lam - 1.0) ** 2
    return _scalar_out(theta, out)


def x_raw(i: int, theta, lam: float):
    th, lam = _prepare(i, theta, lam)
    c = np.cos(th)
    if i == 3:
        h = 0.5 * th
        sh, ch = np.sin(h), np.cos(h)
        out = (c * c - 3.0 * c + 1.0) * ch / (20.0 * sh**5)
    else:
        A = _angular_term(i, th, lam)
        d = lam - c
        rest = ((2.0 * lam * lam + 1.0) * lam - (lam * lam + 2.0) * c) * np.sin(th) / (2.0 * d * d)
        out = (3.0 * lam * A + rest) / (lam * lam - 1.0) ** 2
    return _scalar_out(theta, out)


def y_of_theta(theta, params: TrackParams):
    """Height at velocity angle theta, ``-(L_ang / (lam - cos theta))**2 / 2``."""
    th = np.asarray(theta, dtype=float)
    d = params.lam - np.cos(th)
    if np.any(d == 0.0):
        raise DomainError("lambda - cos(theta) = 0: height is unbounded on the asymptote")
    L = params.L_ang
    y = -0.5 * (L / d) ** 2
    y = np.where(th == params.theta0, -0.5, y)
    return _scalar_out(theta, y)


class ThetaPoint:
    """Raw integrals (no ``L_ang**k`` prefactors) and the height at one angle."""

    __slots__ = ("theta", "ti", "si", "xi", "y")

    def __init__(self, theta, ti, si, xi, y):
        self.theta, self.ti, self.si, self.xi, self.y = theta, ti, si, xi, y

    def __repr__(self):
        return (
            f"ThetaPoint(theta={self.theta!r}, ti={self.ti!r}, si={self.si!r}, "
            f"xi={self.xi!r}, y={self.y!r})"
        )


def _case_index(case: CaseClass) -> int:
    if case.kind is Case.LINE:
        raise ParameterError("the straight line has no theta integrals")
    return case.kind.number


def theta_point(case: CaseClass, params: TrackParams, theta: float) -> ThetaPoint:
    i = _case_index(case)
    return ThetaPoint(
        theta,
        t_raw(i, theta, params.lam),
        s_raw(i, theta, params.lam),
        x_raw(i, theta, params.lam),
        y_of_theta(theta, params),
    )


def assemble_theta_trace(case: CaseClass, params: TrackParams, thetas):
    """Build a :class:`~cnftrack.analytic.Trace` directly from the theta forms.

    ``thetas`` is used as the sample parameter and must be strictly monotone.
    Samples are returned in order of increasing time.
    """
    from .analytic import Trace

    if classify(params).kind is not case.kind:
        raise ParameterError(f"{case.label} does not match lambda={params.lam}, theta0={params.theta0}")
    i = _case_index(case)
    th = np.asarray(thetas, dtype=float)
    if th.ndim != 1 or th.size < 2:
        raise ParameterError("need at least two angles")
    dth = np.diff(th)
    if not (np.all(dth > 0) or np.all(dth < 0)):
        raise ParameterError("angles must be strictly monotone")
    lam, L = params.lam, params.L_ang
    t = L * t_raw(i, th, lam)
    s = L * L * s_raw(i, th, lam)
    x = L * L * x_raw(i, th, lam)
    y = np.asarray(y_of_theta(th, params))
    r = _radius(th, lam, L)
    r = np.where(th == params.theta0, 1.0, r)
    tr = Trace(
        case=case,
        params=params,
        param=th,
        t=t,
        s=s,
        x=x,
        y=y,
        theta=th.copy(),
        r=r,
        vx=r * np.cos(th),
        vy=r * np.sin(th),
    )
    return tr.time_ordered()
