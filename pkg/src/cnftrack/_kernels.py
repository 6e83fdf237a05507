"""Inner loops of the numerical oracle.

Two implementations of every kernel live here: a plain Python/numpy one and a
numba ``@njit`` one compiled from the same loop source. The numba path is
used when numba imports and the environment variable ``CNFTRACK_NUMBA`` is not
set to ``0``/``false``/``no``/``off``. Both paths are always importable so
tests and ``benchmarks/bench_kernels.py`` can compare them.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "NUMBA_AVAILABLE",
    "USE_NUMBA",
    "STATUS_OK",
    "rk4_numpy",
    "rk4_numba",
    "three_point_numpy",
    "three_point_numba",
    "rk4",
    "three_point",
]

STATUS_OK = -1
MIN_SPEED = 1e-9
COLLINEAR_TOLERANCE = 1e-14


def _env_enabled() -> bool:
    flag = os.environ.get("CNFTRACK_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "no", "off")


try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and _env_enabled()


def _rk4_loop(y0, lam, h, n):
    """Fixed-step classical RK4 for the state (vx, vy, x, y).

    Returns the ``(n + 1, 4)`` path and a status: ``STATUS_OK`` or the index
    of the first step whose state has non-finite entries or speed below
    ``MIN_SPEED`` (rows from that index on are left as NaN).
    """
    out = np.empty((n + 1, 4))
    out[:, :] = np.nan
    vx, vy, x, y = y0[0], y0[1], y0[2], y0[3]
    out[0, 0] = vx
    out[0, 1] = vy
    out[0, 2] = x
    out[0, 3] = y
    ca = 0.0
    cb = 0.0
    cc = 0.0
    cd = 0.0
    for i in range(n):
        # stage 1; the caller guarantees the start speed, later steps are checked below
        sp = math.sqrt(vx * vx + vy * vy)
        k1a = -lam * vy / sp
        k1b = -1.0 + lam * vx / sp
        k1c = vx
        k1d = vy
        # stage 2
        ux = vx + 0.5 * h * k1a
        uy = vy + 0.5 * h * k1b
        sp = math.sqrt(ux * ux + uy * uy)
        if not sp >= MIN_SPEED:
            return out, i + 1
        k2a = -lam * uy / sp
        k2b = -1.0 + lam * ux / sp
        k2c = ux
        k2d = uy
        # stage 3
        ux = vx + 0.5 * h * k2a
        uy = vy + 0.5 * h * k2b
        sp = math.sqrt(ux * ux + uy * uy)
        if not sp >= MIN_SPEED:
            return out, i + 1
        k3a = -lam * uy / sp
        k3b = -1.0 + lam * ux / sp
        k3c = ux
        k3d = uy
        # stage 4
        ux = vx + h * k3a
        uy = vy + h * k3b
        sp = math.sqrt(ux * ux + uy * uy)
        if not sp >= MIN_SPEED:
            return out, i + 1
        k4a = -lam * uy / sp
        k4b = -1.0 + lam * ux / sp
        k4c = ux
        k4d = uy

        # compensated (Kahan) accumulation keeps round-off at O(eps) over long runs
        d = h * (k1a + 2.0 * k2a + 2.0 * k3a + k4a) / 6.0 - ca
        nv = vx + d
        ca = (nv - vx) - d
        vx = nv
        d = h * (k1b + 2.0 * k2b + 2.0 * k3b + k4b) / 6.0 - cb
        nv = vy + d
        cb = (nv - vy) - d
        vy = nv
        d = h * (k1c + 2.0 * k2c + 2.0 * k3c + k4c) / 6.0 - cc
        nv = x + d
        cc = (nv - x) - d
        x = nv
        d = h * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0 - cd
        nv = y + d
        cd = (nv - y) - d
        y = nv

        speed = math.sqrt(vx * vx + vy * vy)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(speed)):
            return out, i + 1
        if speed < MIN_SPEED:
            return out, i + 1
        out[i + 1, 0] = vx
        out[i + 1, 1] = vy
        out[i + 1, 2] = x
        out[i + 1, 3] = y
    return out, STATUS_OK


def _three_point_loop(x, y):
    """Signed circumcircle curvature and chord direction for each interior point."""
    n = x.shape[0] - 2
    kappa = np.empty(n)
    angle = np.empty(n)
    for i in range(n):
        ax = x[i + 1] - x[i]
        ay = y[i + 1] - y[i]
        bx = x[i + 2] - x[i + 1]
        by = y[i + 2] - y[i + 1]
        cx = x[i + 2] - x[i]
        cy = y[i + 2] - y[i]
        la = math.sqrt(ax * ax + ay * ay)
        lb = math.sqrt(bx * bx + by * by)
        lc = math.sqrt(cx * cx + cy * cy)
        cross = ax * by - ay * bx
        if abs(cross) <= COLLINEAR_TOLERANCE * la * lb:
            kappa[i] = 0.0
        else:
            kappa[i] = 2.0 * cross / (la * lb * lc)
        angle[i] = math.atan2(cy, cx)
    return kappa, angle


def three_point_numpy(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ax, ay = x[1:-1] - x[:-2], y[1:-1] - y[:-2]
    bx, by = x[2:] - x[1:-1], y[2:] - y[1:-1]
    cx, cy = x[2:] - x[:-2], y[2:] - y[:-2]
    la, lb, lc = np.hypot(ax, ay), np.hypot(bx, by), np.hypot(cx, cy)
    cross = ax * by - ay * bx
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = np.where(
            np.abs(cross) <= COLLINEAR_TOLERANCE * la * lb, 0.0, 2.0 * cross / (la * lb * lc)
        )
    return kappa, np.arctan2(cy, cx)


def rk4_numpy(y0, lam, h, n):
    return _rk4_loop(np.asarray(y0, dtype=float), float(lam), float(h), int(n))


if NUMBA_AVAILABLE:
    _rk4_jit = numba.njit(cache=True, error_model="numpy")(_rk4_loop)
    _three_point_jit = numba.njit(cache=True, error_model="numpy")(_three_point_loop)

    def rk4_numba(y0, lam, h, n):
        return _rk4_jit(np.ascontiguousarray(y0, dtype=np.float64), float(lam), float(h), int(n))

    def three_point_numba(x, y):
        return _three_point_jit(
            np.ascontiguousarray(x, dtype=np.float64), np.ascontiguousarray(y, dtype=np.float64)
        )
else:  # pragma: no cover
    rk4_numba = None
    three_point_numba = None


if USE_NUMBA:
    rk4 = rk4_numba
    three_point = three_point_numba
else:
    rk4 = rk4_numpy
    three_point = three_point_numpy
