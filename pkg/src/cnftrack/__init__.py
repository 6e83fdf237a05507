"""Tracks along which a sliding particle feels a normal force of constant magnitude.

Quick start::

    >>> from cnftrack import TrackParams, classify, trace, loop_metrics
    >>> p = TrackParams(lam=2.0, theta0=0.0)
    >>> classify(p).label
    'Case1'
    >>> tr = trace(classify(p), p)
    >>> round(loop_metrics(2.0).H, 2)
    18.12
"""

from .analytic import (
    AnomalyRange,
    Coords,
    Trace,
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
from .core import (
    Case,
    CaseClass,
    ConservedPair,
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
from .metrics import LoopMetrics, loop_metrics
from .oracle import (
    OdePath,
    OdeState,
    VerificationReport,
    VerifyConfig,
    integrate,
    ode_rhs,
    recover_lambda,
    verify,
)
from .theta_integrals import assemble_theta_trace, s_raw, t_raw, x_raw, y_of_theta

__version__ = "0.1.0"
