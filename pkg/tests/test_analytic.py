import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cnftrack.analytic import (
    AnomalyRange,
    anomaly_of_theta,
    default_range,
    eval_case1,
    eval_case3,
    eval_case4,
    eval_case5,
    eval_line,
    theta_of_anomaly,
    trace,
)
from cnftrack.core import Case, DomainError, ParameterError, TrackParams, classify

SQ3 = math.sqrt(3.0)


def test_case1_half_period_values():
    # lam = 2, psi = pi: hand-derived from the reduced prefactors
    t, s, x, y = eval_case1(math.pi, 2.0)
    assert t == pytest.approx(2 * math.pi / (3 * SQ3), abs=1e-15)
    assert s == pytest.approx(math.pi / (2 * SQ3), abs=1e-15)
    assert x == pytest.approx(math.pi / (3 * SQ3), abs=1e-15)
    assert y == pytest.approx(-1 / 18, abs=1e-16)


def test_case1_origin():
    assert eval_case1(0.0, 3.0) == pytest.approx((0.0, 0.0, 0.0, -0.5))


@pytest.mark.parametrize("fn, arg", [(eval_case3, None), (eval_case4, 0.4), (eval_case5, 0.4)])
def test_anchor_values(fn, arg):
    out = fn(0.0) if arg is None else fn(0.0, arg)
    assert out == pytest.approx((0.0, 0.0, 0.0, -0.5))


def test_case3_polynomials():
    t, s, x, y = eval_case3(1.0)
    assert (t, s, x, y) == pytest.approx((4 / 3, 28 / 15, -4 / 5, -2.0))


def test_vectorised_shapes():
    g = np.linspace(-1, 1, 5)
    for c in (eval_case1(g, 2.0), eval_case3(g), eval_case4(g, 0.2), eval_case5(g, 0.2)):
        assert all(np.shape(v) == (5,) for v in c)


@pytest.mark.parametrize(
    "fn, lam", [(eval_case1, 1.0), (eval_case1, 0.5), (eval_case4, 1.0), (eval_case5, -0.1)]
)
def test_evaluators_reject_wrong_lambda(fn, lam):
    with pytest.raises(ParameterError):
        fn(0.0, lam)


PARAMS = [
    TrackParams(1.5),
    TrackParams(4.0),
    TrackParams(1.0, math.pi),
    TrackParams(0.0),
    TrackParams(0.6),
    TrackParams(0.0, math.pi),
    TrackParams(0.6, math.pi),
]


@pytest.mark.parametrize("p", PARAMS, ids=lambda p: f"{p.lam}-{p.theta0:.2f}")
def test_anomaly_round_trip(p):
    c = classify(p)
    g = np.linspace(-1.5, 1.5, 41)
    th = theta_of_anomaly(g, c, p.lam)
    np.testing.assert_allclose(anomaly_of_theta(th, p), g, atol=1e-11)


@pytest.mark.parametrize("p", PARAMS, ids=lambda p: f"{p.lam}-{p.theta0:.2f}")
def test_kinematics_consistent(p):
    # ds/dt = r, dx/dt = r cos(theta), dy/dt = r sin(theta) by central differences
    c = classify(p)
    tr = trace(c, p, AnomalyRange(-1.0, 1.0, 4001))
    dt = np.gradient(tr.t, tr.param)
    for col, target in ((tr.s, tr.r), (tr.x, tr.vx), (tr.y, tr.vy)):
        d = np.gradient(col, tr.param)[1:-1] / dt[1:-1]
        np.testing.assert_allclose(d, target[1:-1], rtol=1e-5, atol=1e-5)


def test_case1_unwrapping_is_periodic():
    lam = 2.0
    g = np.array([0.3, 0.3 + 2 * math.pi])
    th = theta_of_anomaly(g, classify(TrackParams(lam)), lam)
    assert th[1] - th[0] == pytest.approx(2 * math.pi)
    a = eval_case1(g, lam)
    assert a.y[0] == pytest.approx(a.y[1])


def test_case4_time_runs_against_chi():
    p = TrackParams(0.5)
    tr = trace(classify(p), p, AnomalyRange(-1, 1, 11))
    assert np.all(np.diff(tr.t) > 0)
    assert np.all(np.diff(tr.param) < 0)


def test_trace_time_ordered_everywhere():
    for p in PARAMS + [TrackParams(2.0, math.pi), TrackParams(0.5, math.acos(0.5))]:
        tr = trace(classify(p), p)
        assert np.all(np.diff(tr.t) > 0), p


def test_trace_mismatch():
    p = TrackParams(2.0)
    with pytest.raises(ParameterError, match="mismatch"):
        trace(classify(TrackParams(0.5)), p)


def test_trace_rows_and_samples():
    p = TrackParams(2.0)
    tr = trace(classify(p), p, AnomalyRange(0, 1, 3))
    assert len(tr) == 3
    assert tr[0].y == pytest.approx(-0.5)
    assert tr.as_array().shape == (3, 9)
    assert [s.param for s in tr] == list(tr.param)


def test_anomaly_range_validation():
    with pytest.raises(ParameterError):
        AnomalyRange(0, 1, 1)
    with pytest.raises(ParameterError):
        AnomalyRange(0, math.inf)


def test_default_ranges():
    assert default_range(classify(TrackParams(2.0)), TrackParams(2.0)).hi == pytest.approx(2 * math.pi)
    p = TrackParams(0.0, math.pi / 2)
    assert default_range(classify(p), p).hi == pytest.approx(0.9)


def test_line_falls_and_stops():
    p = TrackParams(0.0, math.pi / 2)  # thrown straight up, no normal force
    s, x, y = eval_line(0.5, p)
    assert (s, x, y) == pytest.approx((0.375, 0.0, -0.125))
    with pytest.raises(DomainError):
        eval_line(1.0, p)


def test_line_rejects_curved_params():
    with pytest.raises(ParameterError):
        eval_line(0.1, TrackParams(2.0))


def test_anomaly_outside_range():
    with pytest.raises(DomainError):
        anomaly_of_theta(1.2, TrackParams(0.5))
    with pytest.raises(DomainError):
        anomaly_of_theta(0.0, TrackParams(1.0, math.pi))


def _admissible(lam, theta0):
    try:
        c = classify(TrackParams(lam, theta0))
    except ParameterError:
        return None
    return None if c.kind is Case.LINE else c


@given(
    st.floats(0.0, 20.0),
    st.sampled_from([0.0, math.pi]),
    st.floats(-2.5, 2.5),
)
def test_invariants_hold(lam, theta0, a):
    c = _admissible(lam, theta0)
    assume(c is not None and abs(lam - 1.0) > 1e-6)
    p = TrackParams(lam, theta0)
    if c.kind is Case.CASE2:
        a = math.pi + a  # parameter is theta itself
    tr = trace(c, p, AnomalyRange(a, a + 0.5, 5))
    np.testing.assert_allclose(tr.r**2 / 2 + tr.y, 0.0, atol=1e-10 * max(1.0, tr.r.max() ** 2))
    np.testing.assert_allclose(tr.r * (lam - np.cos(tr.theta)), p.L_ang, atol=1e-10 * max(1.0, tr.r.max()))
    assert np.all(tr.r > 0)


@given(st.floats(1.001, 50.0), st.floats(-10.0, 10.0))
def test_case1_theta_monotone_and_bounded_offset(lam, psi):
    c = classify(TrackParams(lam))
    th = theta_of_anomaly(np.array([psi, psi + 1e-3]), c, lam)
    assert th[1] > th[0]
    assert abs(th[0] - psi) < math.pi
