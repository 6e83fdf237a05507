import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cnftrack.core import (
    LINE_TOLERANCE,
    Case,
    CaseClass,
    DomainError,
    ParameterError,
    PhysicalScale,
    TrackError,
    TrackParams,
    TrackSample,
    classify,
    conserved,
    hodograph_radius,
    to_dimensionless,
    to_physical,
)


@pytest.mark.parametrize(
    "lam, theta0, kind",
    [
        (2.0, 0.0, Case.CASE1),
        (1.0000001, 0.0, Case.CASE1),
        (2.0, math.pi, Case.CASE2),
        (1.0, math.pi, Case.CASE3),
        (0.5, 0.0, Case.CASE4),
        (0.0, 0.0, Case.CASE4),
        (0.5, math.pi, Case.CASE5),
        (0.0, math.pi, Case.CASE5),
        (1.0, 0.0, Case.LINE),
        (0.5, math.acos(0.5), Case.LINE),
        (0.0, math.pi / 2, Case.LINE),
    ],
)
def test_classify_regimes(lam, theta0, kind):
    assert classify(TrackParams(lam, theta0)).kind is kind


def test_line_takes_precedence_over_anchor():
    # lam = 1 at the bottom is a line, not the parabolic case
    assert classify(TrackParams(1.0, 0.0)).label == "StraightLine"
    assert classify(TrackParams(1.0, 2 * math.pi)).label == "StraightLine"


def test_line_tolerance_boundary():
    th = math.acos(0.3)
    assert classify(TrackParams(0.3 + 0.5 * LINE_TOLERANCE, th)).kind is Case.LINE
    with pytest.raises(ParameterError):
        classify(TrackParams(0.3 + 10 * LINE_TOLERANCE, th))


def test_off_anchor_direction_rejected():
    with pytest.raises(ParameterError, match="neither 0 nor pi"):
        classify(TrackParams(2.0, 1.0))


@pytest.mark.parametrize("lam", [-1e-9, -1.0, math.nan, math.inf])
def test_bad_lambda(lam):
    with pytest.raises(ParameterError):
        TrackParams(lam)


def test_errors_are_value_errors():
    assert issubclass(ParameterError, TrackError)
    assert issubclass(DomainError, ValueError)


def test_theta0_normalized():
    assert TrackParams(2.0, -math.pi).theta0 == pytest.approx(math.pi)
    assert TrackParams(2.0, 4 * math.pi).theta0 == 0.0


def test_case_ranges():
    assert classify(TrackParams(0.5)).theta_max == pytest.approx(math.acos(0.5))
    c5 = classify(TrackParams(0.5, math.pi))
    assert (c5.theta_min, c5.theta_max) == pytest.approx((math.pi / 3, 5 * math.pi / 3))
    assert classify(TrackParams(3.0)).theta0 == 0.0
    assert CaseClass.of(Case.CASE2, 3.0).theta0 == math.pi


@pytest.mark.parametrize("text, kind", [("1", Case.CASE1), (5, Case.CASE5), ("line", Case.LINE)])
def test_case_parse(text, kind):
    assert Case.parse(text) is kind


def test_case_parse_rejects():
    with pytest.raises(ParameterError):
        Case.parse("7")


def test_conserved_values():
    c = conserved(TrackParams(0.5, math.pi))
    assert c.L_ang == 1.5 and c.E == 0.0


def test_radius_is_one_at_anchor():
    for p in (TrackParams(2.0), TrackParams(0.3, math.pi), TrackParams(1.0, math.pi)):
        assert hodograph_radius(p.theta0, p) == 1.0


def test_radius_domain_errors():
    p = TrackParams(0.5)
    with pytest.raises(DomainError):
        hodograph_radius(math.pi, p)  # other branch
    with pytest.raises(DomainError):
        hodograph_radius(0.0, TrackParams(1.0))  # line


def test_radius_vectorised():
    p = TrackParams(2.0)
    th = np.linspace(-math.pi, math.pi, 7)
    np.testing.assert_allclose(hodograph_radius(th, p), 1.0 / (2.0 - np.cos(th)))


@given(st.floats(1e-3, 1e3), st.floats(1e-2, 1e2))
def test_scale_units(v0, g):
    s = PhysicalScale(v0, g)
    assert s.length == pytest.approx(v0 * v0 / g)
    assert s.time == pytest.approx(v0 / g)
    assert s.speed == v0


@pytest.mark.parametrize("v0, g", [(0.0, 9.81), (20.0, -1.0), (math.inf, 9.81)])
def test_scale_rejects(v0, g):
    with pytest.raises(ParameterError):
        PhysicalScale(v0, g)


finite = st.floats(-1e3, 1e3, allow_nan=False)


@given(st.tuples(*[finite] * 9), st.floats(0.1, 100), st.floats(0.5, 50))
def test_physical_round_trip(vals, v0, g):
    sample = TrackSample(*vals)
    scale = PhysicalScale(v0, g)
    back = to_dimensionless(to_physical(sample, scale), scale)
    np.testing.assert_allclose(back.as_tuple(), sample.as_tuple(), rtol=1e-12, atol=1e-9)


def test_physical_keeps_param_and_theta():
    s = TrackSample(0.7, 1, 1, 1, -0.5, 0.3, 1, 1, 0)
    p = to_physical(s, PhysicalScale(20.0, 9.81))
    assert (p.param, p.theta) == (0.7, 0.3)
    assert p.y == pytest.approx(-0.5 * 400 / 9.81)
    assert p.t == pytest.approx(20 / 9.81)
