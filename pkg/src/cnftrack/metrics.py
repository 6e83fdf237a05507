"""Ride metrics of the closed elliptic loop (lam > 1, anchored at the bottom)."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .core import DomainError, PhysicalScale

__all__ = ["STANDARD_GRAVITY", "LoopMetrics", "loop_metrics"]

STANDARD_GRAVITY = 9.81


@dataclass(frozen=True)
class LoopMetrics:
    """Per-period figures in SI units.

    ``track_length`` is the arc length of one period; it is written ``L`` in
    JSON output and has nothing to do with the sectorial constant.
    """

    lam: float
    T: float
    track_length: float
    W: float
    H: float
    v_top: float

    def to_dict(self, scale: PhysicalScale) -> dict:
        d = asdict(self)
        return {
            "lambda": d["lam"],
            "v0": scale.v0,
            "g": scale.g,
            "T": d["T"],
            "L": d["track_length"],
            "W": d["W"],
            "H": d["H"],
            "v_top": d["v_top"],
        }


def loop_metrics(lam: float, scale: PhysicalScale | None = None) -> LoopMetrics:
    """Period, track length, width, height and top speed of the loop.

    >>> m = loop_metrics(2.0, PhysicalScale(20.0, 9.81))
    >>> round(m.T, 2), round(m.H, 2), round(m.v_top, 2)
    (4.93, 18.12, 6.67)
    """
    scale = scale or PhysicalScale(20.0, STANDARD_GRAVITY)
    lam = float(lam)
    if not lam > 1.0:
        raise DomainError(f"closed loops need lambda > 1, got {lam}")
    q = math.sqrt((lam - 1.0) * (lam + 1.0))
    length, time = scale.length, scale.time
    return LoopMetrics(
        lam=lam,
        T=time * 2.0 * lam * math.pi / (q * (lam + 1.0)),
        track_length=length * (2.0 * lam * lam + 1.0) * math.pi / (q * (lam + 1.0) ** 2),
        W=length * 3.0 * lam * math.pi / (q * (lam + 1.0) ** 2),
        H=length * 2.0 * lam / (lam + 1.0) ** 2,
        v_top=scale.v0 * (lam - 1.0) / (lam + 1.0),
    )
