"""Domain types, regime classification, conserved quantities and unit scaling.

Everything here works in dimensionless units: lengths in v0**2/g, times in
v0/g and speeds in v0, so the reference point (speed 1) sits at height -1/2
when the total energy is zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "LINE_TOLERANCE",
    "TrackError",
    "ParameterError",
    "DomainError",
    "Case",
    "TrackParams",
    "CaseClass",
    "TrackSample",
    "PhysicalScale",
    "ConservedPair",
    "classify",
    "conserved",
    "hodograph_radius",
    "to_physical",
    "to_dimensionless",
]

LINE_TOLERANCE = 1e-12
# tolerance for recognising theta0 as exactly 0 or pi
_ANCHOR_TOLERANCE = 1e-12

TWO_PI = 2.0 * math.pi


class TrackError(ValueError):
    """Base class for all errors raised by this package."""


class ParameterError(TrackError):
    """Inputs that are invalid or inconsistent with each other."""


class DomainError(TrackError):
    """Valid inputs for which the requested quantity does not exist."""


class Case(enum.Enum):
    CASE1 = "1"
    CASE2 = "2"
    CASE3 = "3"
    CASE4 = "4"
    CASE5 = "5"
    LINE = "line"

    @property
    def number(self) -> int | None:
        return None if self is Case.LINE else int(self.value)

    @property
    def label(self) -> str:
        return "StraightLine" if self is Case.LINE else f"Case{self.value}"

    @classmethod
    def parse(cls, text: str | int) -> Case:
        key = str(text).strip().lower()
        aliases = {"straightline": "line", "straight": "line"}
        key = aliases.get(key, key)
        if key.startswith("case"):
            key = key[4:]
        for member in cls:
            if member.value == key:
                return member
        raise ParameterError(f"unknown case {text!r}")


def _normalize_angle(theta: float) -> float:
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    # fmod of a value a hair below 2*pi should read as 0
    if TWO_PI - theta < _ANCHOR_TOLERANCE:
        theta = 0.0
    return theta


@dataclass(frozen=True)
class TrackParams:
    """Load factor ``lam = N/(m g)`` and initial velocity direction ``theta0``."""

    lam: float
    theta0: float = 0.0

    def __post_init__(self):
        lam = float(self.lam)
        theta0 = float(self.theta0)
        if not math.isfinite(lam) or not math.isfinite(theta0):
            raise ParameterError("lambda and theta0 must be finite")
        if lam < 0.0:
            raise ParameterError(f"lambda must be >= 0, got {lam}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "theta0", _normalize_angle(theta0))

    @property
    def L_ang(self) -> float:
        """Sectorial constant r*(lam - cos(theta)) evaluated at r0 = 1."""
        return self.lam - _cos_exact(self.theta0)


def _cos_exact(theta: float) -> float:
    # cos(pi) is exactly -1 in IEEE doubles, but keep anchors exact regardless
    if theta == 0.0:
        return 1.0
    if abs(theta - math.pi) < _ANCHOR_TOLERANCE:
        return -1.0
    return math.cos(theta)


@dataclass(frozen=True)
class CaseClass:
    """A regime together with the open interval of admissible velocity angles."""

    kind: Case
    theta_min: float
    theta_max: float

    @property
    def label(self) -> str:
        return self.kind.label

    @property
    def theta0(self) -> float | None:
        if self.kind in (Case.CASE1, Case.CASE4):
            return 0.0
        if self.kind in (Case.CASE2, Case.CASE3, Case.CASE5):
            return math.pi
        return None

    @classmethod
    def of(cls, kind: Case, lam: float, theta0: float | None = None) -> CaseClass:
        if kind is Case.CASE1:
            return cls(kind, -math.pi, math.pi)
        if kind in (Case.CASE2, Case.CASE3):
            return cls(kind, 0.0, TWO_PI)
        if kind is Case.CASE4:
            a = math.acos(lam)
            return cls(kind, -a, a)
        if kind is Case.CASE5:
            a = math.acos(lam)
            return cls(kind, a, TWO_PI - a)
        if theta0 is None:
            theta0 = math.acos(min(lam, 1.0))
        return cls(kind, theta0, theta0)


def classify(params: TrackParams) -> CaseClass:
    """Return the regime selected by ``params``.

    A vanishing sectorial constant (within ``LINE_TOLERANCE``) is a straight
    line for any direction. Otherwise ``theta0`` must be 0 (loop bottom) or pi
    (loop top).
    """
    lam, theta0 = params.lam, params.theta0
    if abs(lam - _cos_exact(theta0)) < LINE_TOLERANCE:
        return CaseClass.of(Case.LINE, lam, theta0)
    if theta0 == 0.0:
        if lam > 1.0:
            kind = Case.CASE1
        else:
            # lam == 1 at theta0 = 0 is the line, handled above
            kind = Case.CASE4
    elif abs(theta0 - math.pi) < _ANCHOR_TOLERANCE:
        if lam > 1.0:
            kind = Case.CASE2
        elif lam == 1.0:
            kind = Case.CASE3
        else:
            kind = Case.CASE5
    else:
        raise ParameterError(
            f"theta0={theta0!r} is neither 0 nor pi and lambda - cos(theta0) != 0; "
            "only the straight line admits other initial directions"
        )
    return CaseClass.of(kind, lam)


@dataclass(frozen=True)
class ConservedPair:
    L_ang: float
    E: float


def conserved(params: TrackParams) -> ConservedPair:
    return ConservedPair(L_ang=params.L_ang, E=0.0)


def _radius(theta, lam: float, L_ang: float):
    """Unchecked vectorised speed on the hodograph."""
    return L_ang / (lam - np.cos(theta))


def hodograph_radius(theta, params: TrackParams):
    """Dimensionless speed at velocity angle ``theta`` on the hodograph conic.

    Accepts scalars or arrays. Raises ``DomainError`` where the speed is
    infinite (asymptote directions) or where ``theta`` lies on the other
    branch of the conic (negative radius).
    """
    L = params.L_ang
    if abs(L) < LINE_TOLERANCE:
        raise DomainError("the straight line has no hodograph conic (L_ang = 0)")
    theta_arr = np.asarray(theta, dtype=float)
    denom = params.lam - np.cos(theta_arr)
    if np.any(denom == 0.0):
        raise DomainError("lambda - cos(theta) = 0: speed diverges on the asymptote")
    r = L / denom
    # exact at the anchor regardless of rounding in cos()
    r = np.where(theta_arr == params.theta0, 1.0, r)
    if np.any(~np.isfinite(r)) or np.any(r <= 0.0):
        raise DomainError("theta lies outside the branch of the hodograph reached from theta0")
    if np.ndim(theta) == 0:
        return float(r)
    return r


@dataclass(frozen=True)
class TrackSample:
    """One point of a trajectory.

    ``param`` is the anomaly of the case (psi, theta, omega, chi or eta) or the
    time for the straight line.
    """

    param: float
    t: float
    s: float
    x: float
    y: float
    theta: float
    r: float
    vx: float
    vy: float

    FIELDS = ("param", "t", "s", "x", "y", "theta", "r", "vx", "vy")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f) for f in self.FIELDS)


@dataclass(frozen=True)
class PhysicalScale:
    """Reference speed ``v0`` [m/s] and gravitational acceleration ``g`` [m/s^2]."""

    v0: float = 20.0
    g: float = 9.81

    def __post_init__(self):
        if not (self.v0 > 0.0 and math.isfinite(self.v0)):
            raise ParameterError(f"v0 must be positive, got {self.v0}")
        if not (self.g > 0.0 and math.isfinite(self.g)):
            raise ParameterError(f"g must be positive, got {self.g}")

    @property
    def length(self) -> float:
        return self.v0 * self.v0 / self.g

    @property
    def time(self) -> float:
        return self.v0 / self.g

    @property
    def speed(self) -> float:
        return self.v0


def _rescale(sample, length: float, time: float, speed: float):
    return replace(
        sample,
        t=sample.t * time,
        s=sample.s * length,
        x=sample.x * length,
        y=sample.y * length,
        r=sample.r * speed,
        vx=sample.vx * speed,
        vy=sample.vy * speed,
    )


def to_physical(sample: TrackSample, scale: PhysicalScale) -> TrackSample:
    """Convert a dimensionless sample to SI units. ``param`` and ``theta`` are unchanged."""
    return _rescale(sample, scale.length, scale.time, scale.speed)


def to_dimensionless(sample: TrackSample, scale: PhysicalScale) -> TrackSample:
    return _rescale(sample, 1.0 / scale.length, 1.0 / scale.time, 1.0 / scale.speed)
