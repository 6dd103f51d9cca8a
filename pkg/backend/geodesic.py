"""
Closed geodesics of the reduced metric for the Otsuki tori.

The orbit space carries the metric V^2 (dphi^2 + cos^2 phi dtheta^2) with
V = 2*pi*sin(phi), i.e.

    E = 4*pi^2 sin^2 phi,    G = 4*pi^2 sin^2 phi cos^2 phi.

A unit-speed geodesic with minimal latitude a satisfies

    theta' = sin a cos a / (2*pi cos^2 phi sin^2 phi)
    phi'^2 = (sin^2 phi cos^2 phi - sin^2 a cos^2 a) / (4*pi^2 sin^4 phi cos^2 phi)

and oscillates between a and b = pi/2 - a. Each monotone arc is integrated
in the variable u in [0, pi] with phi = pi/4 - (pi/4 - a) cos u, which
removes both inverse-square-root turning points: dtheta/du and ds/du are
smooth even functions of u, integrated through their cosine series.

This module is an oracle for the elliptic closed forms and shares no code
with them.
"""

import math
from typing import NamedTuple, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.fft import dct, dst

from config import (
    GEODESIC_STEP_TOL, GEODESIC_CLOSURE_TOL, GEODESIC_MIN_ARC_SAMPLES,
    GEODESIC_MAX_ARC_SAMPLES, GEODESIC_MAX_EXPORT_ROWS, TRACE_COLUMNS
)
from models.data_models import OtsukiAngle, OtsukiParameter
from models.geodesic_models import GeodesicTrace
from utils.logging_config import get_logger

logger = get_logger(__name__)

Real = Union[float, np.ndarray]

QUARTER_PI = math.pi / 4
TWO_PI = 2.0 * math.pi


class GeodesicTraceError(ValueError):
    """Exception raised when a geodesic cannot be traced for the given angle."""
    pass


class _ArcProfile(NamedTuple):
    """One ascending arc sampled at u_j = j*pi/n."""
    phi: np.ndarray
    theta: np.ndarray
    s: np.ndarray

    @property
    def theta_advance(self) -> float:
        return float(self.theta[-1])

    @property
    def length(self) -> float:
        return float(self.s[-1])


def reduced_metric(phi: Real) -> Tuple[Real, Real, Real]:
    """
    Coefficients of the reduced metric at latitude phi.

    Args:
        phi: Latitude(s) in radians.

    Returns:
        Tuple of (E, G, V): E = 4*pi^2 sin^2 phi, G = 4*pi^2 sin^2 phi cos^2 phi,
            V = 2*pi sin phi.
    """
    sin_phi, cos_phi = np.sin(phi), np.cos(phi)
    v = TWO_PI * sin_phi
    return v * v, (v * cos_phi) ** 2, v


def geodesic_velocity(a: float, phi: Real, direction: int = 1) -> Tuple[Real, Real]:
    """
    (phi', theta') of the unit-speed geodesic with minimal latitude a.

    Args:
        a: Minimal latitude.
        phi: Latitude(s) in [a, pi/2 - a].
        direction: +1 on ascending arcs, -1 on descending arcs.

    Returns:
        Tuple of (phi_dot, theta_dot).
    """
    sin_phi, cos_phi = np.sin(phi), np.cos(phi)
    clairaut = math.sin(a) * math.cos(a)
    sc = sin_phi * cos_phi
    radicand = np.maximum(sc * sc - clairaut * clairaut, 0.0)
    phi_dot = direction * np.sqrt(radicand) / (TWO_PI * sin_phi * sc)
    theta_dot = clairaut / (TWO_PI * sc * sc)
    return phi_dot, theta_dot


def _arc_integrands(a: float, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Latitude and the smooth integrands dtheta/du, ds/du along one ascending arc.

    sin^2 phi cos^2 phi - sin^2 a cos^2 a = sin(phi - a) sin(b - phi) (sin 2phi + sin 2a) / 2,
    and dphi/du = h sin u with h = pi/4 - a cancels the zeros of the first
    two factors.
    """
    h = QUARTER_PI - a
    cos_u = np.cos(u)
    phi = QUARTER_PI - h * cos_u
    clairaut = math.sin(a) * math.cos(a)

    # sin(h(1 -+ cos u)) / (h(1 -+ cos u)) as np.sinc
    regular = (np.sinc(h * (1.0 - cos_u) / math.pi) * np.sinc(h * (1.0 + cos_u) / math.pi)
               * (np.sin(2.0 * phi) + math.sin(2.0 * a)) / 2.0)
    root = np.sqrt(regular)
    cos_phi = np.cos(phi)
    dtheta_du = clairaut / (cos_phi * root)
    ds_du = TWO_PI * np.sin(phi) ** 2 * cos_phi / root
    return phi, dtheta_du, ds_du


def _cumulative_cosine_integral(values: np.ndarray, u: np.ndarray) -> np.ndarray:
    """
    F(u_j) = int_0^{u_j} f for an even, smooth f sampled at u_j = j*pi/n.

    With f = a_0 + sum a_k cos(ku), F = a_0 u + sum a_k sin(ku) / k. The
    coefficients come from a type-I DCT and the sine sum from a type-I DST;
    the final term vanishes at every node.
    """
    n = len(values) - 1
    coefficients = dct(values, type=1) / n
    cumulative = coefficients[0] / 2.0 * u
    k = np.arange(1, n)
    interior = dst(coefficients[1:n] / k, type=1) / 2.0
    cumulative[1:n] += interior
    return cumulative


def _arc_profile(a: float, intervals: int) -> _ArcProfile:
    u = np.linspace(0.0, math.pi, intervals + 1)
    phi, dtheta_du, ds_du = _arc_integrands(a, u)
    return _ArcProfile(
        phi=phi,
        theta=_cumulative_cosine_integral(dtheta_du, u),
        s=_cumulative_cosine_integral(ds_du, u)
    )


def _converged_arc(a: float, step_tol: float) -> _ArcProfile:
    """Double the samples per arc until every node moves by less than step_tol."""
    intervals = GEODESIC_MIN_ARC_SAMPLES
    profile = _arc_profile(a, intervals)

    while intervals < GEODESIC_MAX_ARC_SAMPLES:
        intervals *= 2
        refined = _arc_profile(a, intervals)
        change = max(
            np.max(np.abs(refined.theta[::2] - profile.theta)),
            np.max(np.abs(refined.s[::2] - profile.s))
        )
        profile = refined
        if change < step_tol:
            logger.debug(f"Arc for a = {a!r} converged with {intervals} intervals")
            return profile

    logger.warning(
        f"Arc for a = {a!r} reached {GEODESIC_MAX_ARC_SAMPLES} intervals without "
        f"meeting step tolerance {step_tol}"
    )
    return profile


def _check_trace_inputs(a: OtsukiAngle, step_tol: float) -> None:
    if a.a >= QUARTER_PI:
        raise GeodesicTraceError(
            "a = pi/4 gives the constant-latitude circle, which is not an Otsuki geodesic"
        )
    if not step_tol > 0:
        raise ValueError(f"step_tol must be positive, got: {step_tol}")


def trace_arc(a: OtsukiAngle, step_tol: float = GEODESIC_STEP_TOL) -> GeodesicTrace:
    """
    Trace one ascending arc from phi = a to phi = pi/2 - a.

    Args:
        a: Minimal latitude, a < pi/4.
        step_tol: Convergence tolerance on the sampled theta and s.

    Returns:
        GeodesicTrace: Open trace with arcs = 1; its length is 2*pi*Phi(a).

    Raises:
        GeodesicTraceError: If a = pi/4.
    """
    _check_trace_inputs(a, step_tol)
    profile = _converged_arc(a.a, step_tol)
    return GeodesicTrace(
        a=a.a, s=profile.s, phi=profile.phi, theta=profile.theta,
        arcs=1, closed=False, mismatch=math.nan, arc_lengths=[profile.length]
    )


def _wrap_angle(theta: float) -> float:
    """Representative of theta mod 2*pi in [-pi, pi)."""
    return (theta + math.pi) % TWO_PI - math.pi


def trace_geodesic(
    a: OtsukiAngle,
    param: OtsukiParameter,
    step_tol: float = GEODESIC_STEP_TOL
) -> GeodesicTrace:
    """
    Trace the reduced geodesic of O_{p/q} through 2q monotone arcs.

    Arcs alternate between ascending (a -> pi/2 - a) and descending; theta
    increases throughout. The trace is closed when it returns to phi = a
    with total theta advance = 0 mod 2*pi.

    Args:
        a: Minimal latitude, normally solve_parameter(param).
        param: Otsuki parameter giving the number of arcs.
        step_tol: Convergence tolerance on sampled theta and s per arc.

    Returns:
        GeodesicTrace: Concatenated trace. If a does not close up for this
            parameter, closed is False and mismatch reports by how much.

    Raises:
        GeodesicTraceError: If a = pi/4.
    """
    _check_trace_inputs(a, step_tol)
    arc = _converged_arc(a.a, step_tol)
    advance, length = arc.theta_advance, arc.length

    descending_theta = advance - arc.theta[::-1]
    descending_s = length - arc.s[::-1]

    phi_parts, theta_parts, s_parts = [], [], []
    arcs = 2 * param.q
    for i in range(arcs):
        ascending = i % 2 == 0
        start = 0 if i == 0 else 1
        phi_parts.append((arc.phi if ascending else arc.phi[::-1])[start:])
        theta_parts.append((arc.theta if ascending else descending_theta)[start:] + i * advance)
        s_parts.append((arc.s if ascending else descending_s)[start:] + i * length)

    phi_samples = np.concatenate(phi_parts)
    theta_samples = np.concatenate(theta_parts)
    s_samples = np.concatenate(s_parts)

    mismatch = float(max(
        abs(phi_samples[-1] - phi_samples[0]),
        abs(_wrap_angle(theta_samples[-1] - theta_samples[0]))
    ))
    closed = bool(mismatch < GEODESIC_CLOSURE_TOL)
    if not closed:
        logger.warning(
            f"Geodesic for {param.p}/{param.q} with a = {a.a!r} does not close: "
            f"mismatch {mismatch:.3e}"
        )

    trace = GeodesicTrace(
        a=a.a, s=s_samples, phi=phi_samples, theta=theta_samples,
        arcs=arcs, closed=closed, mismatch=mismatch, arc_lengths=[length] * arcs
    )
    logger.info(f"Traced {trace}")
    return trace


def geodesic_length(trace: GeodesicTrace) -> float:
    """
    Reduced-metric length of a trace.

    Returns:
        float: Length; 0 for an empty trace. Traces of more than one arc
            that are not closed are flagged with a warning.
    """
    if len(trace) == 0:
        return 0.0
    if trace.arcs > 1 and not trace.closed:
        logger.warning(f"Length requested for unclosed trace (mismatch {trace.mismatch:.3e})")
    return trace.length


def _arc_directions(trace: GeodesicTrace) -> np.ndarray:
    """+1 on ascending and -1 on descending samples, from the sign of dphi."""
    steps = np.sign(np.diff(trace.phi))
    return np.append(steps, steps[-1]) if len(steps) else steps


def speed_residual(trace: GeodesicTrace) -> float:
    """max |E phi'^2 + G theta'^2 - 1| over the samples of a trace."""
    phi_dot, theta_dot = geodesic_velocity(trace.a, trace.phi, _arc_directions(trace))
    e, g, _ = reduced_metric(trace.phi)
    return float(np.max(np.abs(e * phi_dot ** 2 + g * theta_dot ** 2 - 1.0)))


def clairaut_residual(trace: GeodesicTrace) -> float:
    """max |G theta' - 2*pi sin a cos a| over the samples of a trace."""
    _, theta_dot = geodesic_velocity(trace.a, trace.phi)
    _, g, _ = reduced_metric(trace.phi)
    expected = TWO_PI * math.sin(trace.a) * math.cos(trace.a)
    return float(np.max(np.abs(g * theta_dot - expected)))


def trace_to_frame(
    trace: GeodesicTrace,
    max_rows: Optional[int] = GEODESIC_MAX_EXPORT_ROWS
) -> pd.DataFrame:
    """
    Trace samples as a DataFrame with columns s, phi, theta.

    Args:
        trace: Trace to export.
        max_rows: Decimate evenly to at most this many rows, keeping both
            endpoints. None keeps every sample.

    Returns:
        pd.DataFrame: Samples in trace order.
    """
    indices = np.arange(len(trace))
    if max_rows is not None and len(trace) > max_rows:
        if max_rows < 2:
            raise ValueError(f"max_rows must be >= 2, got: {max_rows}")
        indices = np.unique(np.round(np.linspace(0, len(trace) - 1, max_rows)).astype(int))

    return pd.DataFrame({
        TRACE_COLUMNS[0]: trace.s[indices],
        TRACE_COLUMNS[1]: trace.phi[indices],
        TRACE_COLUMNS[2]: trace.theta[indices],
    }, columns=TRACE_COLUMNS)
