"""Numerical cross-checks that do not use the closed forms.

* direct fixed-step RK4 integration of the dimensionless equations of motion,
* recovery of the load factor from track geometry alone, and
* :func:`verify`, which runs every check on one configuration and reports.

The normal force acts along ``e_theta = (-sin theta, cos theta)``, i.e. to the
left of the direction of travel; a positive load factor turns the velocity
counter-clockwise. :func:`acceleration_residual` measures exactly this.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .analytic import AnomalyRange, Trace, default_range, trace
from .core import (
    Case,
    CaseClass,
    DomainError,
    ParameterError,
    TrackParams,
    TrackSample,
    classify,
)

__all__ = [
    "IntegrationError",
    "OdeState",
    "OdePath",
    "ode_rhs",
    "integrate",
    "integrate_span",
    "initial_state",
    "recover_lambda",
    "acceleration_residual",
    "VerifyConfig",
    "VerificationReport",
    "verify",
    "conditioning_factor",
]


class IntegrationError(DomainError):
    """The integration hit zero speed or produced non-finite values."""

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


@dataclass(frozen=True)
class OdeState:
    vx: float
    vy: float
    x: float
    y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.vx, self.vy, self.x, self.y])

    @property
    def speed(self) -> float:
        return math.hypot(self.vx, self.vy)


def ode_rhs(state: OdeState, lam: float) -> OdeState:
    """Time derivative of ``state``; the fields hold (dvx, dvy, dx, dy)."""
    sp = state.speed
    if sp == 0.0:
        raise DomainError("zero speed: the normal direction is undefined")
    return OdeState(
        vx=-lam * state.vy / sp,
        vy=-1.0 + lam * state.vx / sp,
        x=state.vx,
        y=state.vy,
    )


def _rhs_rows(states: np.ndarray, lam: float) -> np.ndarray:
    vx, vy = states[:, 0], states[:, 1]
    sp = np.hypot(vx, vy)
    return np.column_stack([-lam * vy / sp, -1.0 + lam * vx / sp, vx, vy])


@dataclass(frozen=True, eq=False)
class OdePath:
    """Integrator output on a uniform time grid.

    ``states`` has columns (vx, vy, x, y).
    """

    t: np.ndarray
    states: np.ndarray
    lam: float

    def __len__(self):
        return len(self.t)

    def __iter__(self):
        for ti, row in zip(self.t, self.states):
            yield float(ti), OdeState(*map(float, row))

    @property
    def final(self) -> OdeState:
        return OdeState(*map(float, self.states[-1]))

    def at(self, times) -> np.ndarray:
        """Cubic Hermite interpolation of the states at ``times``.

        Uses the exact right-hand side as node derivatives, so the
        interpolation error is O(step**4), below the integration error.
        """
        times = np.asarray(times, dtype=float)
        t = self.t
        lo, hi = t[0], t[-1]
        if np.any(times < lo - 1e-12 * max(1.0, abs(lo))) or np.any(
            times > hi + 1e-12 * max(1.0, abs(hi))
        ):
            raise ParameterError("interpolation time outside the integrated span")
        d = _rhs_rows(self.states, self.lam)
        k = np.clip(np.searchsorted(t, times, side="right") - 1, 0, len(t) - 2)
        h = t[k + 1] - t[k]
        u = ((times - t[k]) / h)[:, None]
        h = h[:, None]
        h00 = (1 + 2 * u) * (1 - u) ** 2
        h10 = u * (1 - u) ** 2
        h01 = u * u * (3 - 2 * u)
        h11 = u * u * (u - 1)
        return (
            h00 * self.states[k] + h10 * h * d[k] + h01 * self.states[k + 1] + h11 * h * d[k + 1]
        )


def integrate(start: OdeState, lam: float, t_end: float, step: float) -> OdePath:
    """Classical RK4 from t = 0 to ``t_end`` with steps of at most ``step``.

    The step is shrunk to ``|t_end| / ceil(|t_end| / step)`` so the grid ends
    exactly on ``t_end``. A negative ``t_end`` integrates backwards in time.
    """
    if not step > 0.0:
        raise ParameterError(f"step must be positive, got {step}")
    if not math.isfinite(t_end):
        raise ParameterError("t_end must be finite")
    if start.speed < _kernels.MIN_SPEED:
        raise IntegrationError("start speed is zero")
    n = max(1, math.ceil(abs(t_end) / step - 1e-9))
    h = t_end / n
    states, status = _kernels.rk4(start.as_array(), float(lam), h, n)
    t = h * np.arange(n + 1)
    if status != _kernels.STATUS_OK:
        partial = OdePath(t[:status], states[:status], float(lam))
        raise IntegrationError(
            f"integration aborted at t={t[status]:.6g}: speed below "
            f"{_kernels.MIN_SPEED} or non-finite state",
            partial,
        )
    return OdePath(t, states, float(lam))


def integrate_span(start: OdeState, lam: float, t_lo: float, t_hi: float, step: float) -> OdePath:
    """Integrate from t = 0 both backwards to ``t_lo`` and forwards to ``t_hi``."""
    parts_t, parts_s = [], []
    if t_lo < 0.0:
        back = integrate(start, lam, t_lo, step)
        parts_t.append(back.t[:0:-1])
        parts_s.append(back.states[:0:-1])
    if t_hi > 0.0:
        fwd = integrate(start, lam, t_hi, step)
        parts_t.append(fwd.t)
        parts_s.append(fwd.states)
    else:
        parts_t.append(np.zeros(1))
        parts_s.append(start.as_array()[None, :])
    return OdePath(np.concatenate(parts_t), np.concatenate(parts_s), float(lam))


def initial_state(params: TrackParams) -> OdeState:
    """State at t = 0: unit speed along theta0 at (0, -1/2)."""
    th = params.theta0
    if th == 0.0:
        c, s = 1.0, 0.0
    elif th == math.pi:
        c, s = -1.0, 0.0
    else:
        c, s = math.cos(th), math.sin(th)
    return OdeState(c, s, 0.0, -0.5)


def _xy(samples):
    if isinstance(samples, Trace):
        return samples.x, samples.y
    if isinstance(samples, tuple) and len(samples) == 2:
        return np.asarray(samples[0], dtype=float), np.asarray(samples[1], dtype=float)
    pts = list(samples)
    if pts and isinstance(pts[0], TrackSample):
        return np.array([p.x for p in pts]), np.array([p.y for p in pts])
    raise ParameterError("expected a Trace, a sequence of TrackSample, or an (x, y) pair")


def recover_lambda(samples) -> np.ndarray:
    """Load factor of every three-point window of a dimensionless, time-ordered track.

    Uses lam = v**2 kappa + cos(theta) with v**2 = -2 y (zero energy), the
    signed circumcircle curvature kappa, and theta the direction of the outer
    chord. Collinear windows give kappa = 0.
    """
    x, y = _xy(samples)
    if len(x) < 3:
        raise ParameterError("need at least three points")
    kappa, angle = _kernels.three_point(x, y)
    v2 = -2.0 * np.asarray(y)[1:-1]
    return v2 * kappa + np.cos(angle)


def acceleration_residual(tr: Trace) -> np.ndarray:
    """``|a + e_y - lam e_theta|`` at interior samples, ``a`` from second differences in time."""
    t, x, y = tr.t, tr.x, tr.y
    h1 = t[1:-1] - t[:-2]
    h2 = t[2:] - t[1:-1]

    def second(f):
        return 2.0 * ((f[2:] - f[1:-1]) / h2 - (f[1:-1] - f[:-2]) / h1) / (h1 + h2)

    th = tr.theta[1:-1]
    lam = tr.params.lam
    return np.hypot(second(x) + lam * np.sin(th), second(y) + 1.0 - lam * np.cos(th))


def conditioning_factor(lam: float) -> float:
    """Tolerance multiplier for lambda within 1e-6 of (but not at) 1."""
    d = abs(lam - 1.0)
    if d == 0.0 or d >= 1e-6:
        return 1.0
    return max(1.0, d ** -2.5 * np.finfo(float).eps)


@dataclass(frozen=True)
class VerifyConfig:
    samples: int = 1000
    lo: float | None = None
    hi: float | None = None
    ode_step: float = 1e-4
    fd_spacing: float = 1e-3
    energy_tol: float = 1e-10
    momentum_tol: float = 1e-10
    position_tol: float = 1e-6
    lambda_tol: float = 1e-4
    normal_tol: float = 1e-4
    parabola_tol: float = 1e-9


@dataclass
class VerificationReport:
    case: str
    lam: float
    theta0: float
    max_energy_residual: float
    max_momentum_residual: float
    max_position_error_vs_oracle: float
    max_lambda_recovery_error: float
    max_normal_residual: float
    max_parabola_residual: float | None
    samples_checked: int
    passed: bool
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        lam = d.pop("lam")
        return {"case": d.pop("case"), "lambda": lam, **d}


def _fd_trace(case: CaseClass, params: TrackParams, rng: AnomalyRange, spacing: float) -> Trace:
    n = max(3, int(math.ceil((rng.hi - rng.lo) / spacing)) + 1)
    return trace(case, params, AnomalyRange(rng.lo, rng.hi, n))


def verify(
    case: CaseClass,
    params: TrackParams,
    config: VerifyConfig | None = None,
    *,
    trace_override: Trace | None = None,
) -> VerificationReport:
    """Check one track against its invariants and against the ODE.

    ``trace_override`` replaces the sampled analytic trace in the energy,
    momentum, parabola and ODE-position checks (used for fault injection).
    Failures are reported, never raised.
    """
    config = config or VerifyConfig()
    actual = classify(params)
    if actual.kind is not case.kind:
        raise ParameterError(f"case/lambda mismatch: {params} is {actual.label}, not {case.label}")
    lam, L = params.lam, params.L_ang

    if config.lo is None and config.hi is None:
        rng = default_range(case, params, config.samples)
    else:
        base = default_range(case, params, config.samples)
        rng = AnomalyRange(
            base.lo if config.lo is None else config.lo,
            base.hi if config.hi is None else config.hi,
            config.samples,
        )
    tr = trace_override if trace_override is not None else trace(case, params, rng)

    widen = conditioning_factor(lam)
    energy = float(np.max(np.abs(tr.r**2 / 2 + tr.y)))
    momentum = float(np.max(np.abs(tr.r * (lam - np.cos(tr.theta)) - L)))

    ode = integrate_span(initial_state(params), lam, min(0.0, tr.t.min()), max(0.0, tr.t.max()), config.ode_step)
    pred = ode.at(tr.t)
    position = float(np.max(np.hypot(pred[:, 2] - tr.x, pred[:, 3] - tr.y)))

    fine = _fd_trace(case, params, rng, config.fd_spacing)
    lam_err = float(np.max(np.abs(recover_lambda(fine) - lam)))
    normal = float(np.max(acceleration_residual(fine)))

    parabola = None
    if lam == 0.0 and case.kind in (Case.CASE4, Case.CASE5):
        parabola = float(np.max(np.abs(tr.y + 0.5 * (1.0 + tr.x**2))))

    failures = []
    if not energy < config.energy_tol * widen:
        failures.append("energy")
    if not momentum < config.momentum_tol * widen:
        failures.append("momentum")
    if not position < config.position_tol * widen:
        failures.append("position")
    if not lam_err < config.lambda_tol:
        failures.append("lambda_recovery")
    if not normal < config.normal_tol:
        failures.append("normal_direction")
    if parabola is not None and not parabola < config.parabola_tol:
        failures.append("parabola")

    return VerificationReport(
        case=case.label,
        lam=lam,
        theta0=params.theta0,
        max_energy_residual=energy,
        max_momentum_residual=momentum,
        max_position_error_vs_oracle=position,
        max_lambda_recovery_error=lam_err,
        max_normal_residual=normal,
        max_parabola_residual=parabola,
        samples_checked=len(tr),
        passed=not failures,
        failures=failures,
    )
