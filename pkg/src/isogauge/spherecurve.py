"""Strictly convex closed curves on the unit sphere.

Curves are raw unit-vector samples at uniform parameter nodes; arbitrary
smooth parametrizations are accepted and every reported quantity is
reparametrization-independent.  The frame ``(gamma, t, eta = gamma x t)``
and the geodesic curvature come from spectral derivatives of the trace.

The remainder functional is a double quadrature over the parameter torus
with arclength weights; its cost is O(n^2), which is fine at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import CertificationError, ValidationError
from .fourier import (FourierCoefficients, PeriodicSamples, TWO_PI,
                      spectral_derivative)
from .plane import PlanarFront
from .reports import InequalityReport, make_report

UNIT_TOL = 1e-12
# variance(k_g)/mean(1+k_g^2) below this declares a geodesic circle
GEODESIC_CLASSIFIER = 1e-10
# non-adjacent samples must stay this many local spacings apart
SIMPLICITY_FACTOR = 3.0
# samples closer than this many spacings along the curve count as adjacent
ADJACENCY_SPACINGS = 5.0
DEFAULT_NODES = 512
# largest planar radius, relative to height, that stays well inside the
# open hemisphere under central projection
GNOMONIC_LIMIT = np.tan(0.45 * np.pi)


def _curve_derivative(points: np.ndarray, order: int = 1) -> np.ndarray:
    return np.stack([spectral_derivative(points[:, k], order)
                     for k in range(points.shape[1])], axis=-1)


@dataclass(frozen=True)
class SphericalCurve:
    """Closed curve sampled at uniform parameter nodes on the unit sphere."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValidationError(f"curve samples must have shape (n, 3), got {pts.shape}")
        n = pts.shape[0]
        if n < 8 or n % 2:
            raise ValidationError("curve needs an even number of samples >= 8")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("curve contains non-finite samples")
        norms = np.linalg.norm(pts, axis=1)
        if np.max(np.abs(norms - 1.0)) > UNIT_TOL:
            raise ValidationError(
                f"samples are not unit vectors (worst |.|-1 = {np.max(np.abs(norms-1)):.2e})")
        self._check_simplicity(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @staticmethod
    def _check_simplicity(pts: np.ndarray):
        n = pts.shape[0]
        spacing = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
        gram = np.clip(pts @ pts.T, -1.0, 1.0)
        dist = np.sqrt(np.maximum(2.0 - 2.0 * gram, 0.0))
        # adjacency measured along the curve, so nonuniform parameter
        # speed does not turn same-arc neighbours into false positives
        cum = np.concatenate([[0.0], np.cumsum(spacing)])[:n]
        arc = np.abs(cum[:, None] - cum[None, :])
        arc = np.minimum(arc, cum[-1] + spacing[-1] - arc)
        local = np.minimum(spacing[:, None], spacing[None, :])
        adjacent = arc <= ADJACENCY_SPACINGS * np.maximum(spacing[:, None],
                                                          spacing[None, :])
        mask = ~adjacent
        if np.any(dist[mask] < SIMPLICITY_FACTOR * local[mask]):
            worst = np.min((dist - SIMPLICITY_FACTOR * local)[mask])
            raise ValidationError(
                "curve fails the approximate simplicity check: non-adjacent "
                f"arcs are too close (worst margin {worst:.3e})")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @classmethod
    def geodesic_circle(cls, colatitude: float, n: int = DEFAULT_NODES,
                        axis=None) -> "SphericalCurve":
        """Circle at fixed angular radius about an axis (default north pole)."""
        u = TWO_PI * np.arange(n) / n
        s, c = np.sin(colatitude), np.cos(colatitude)
        pts = np.stack([s * np.cos(u), s * np.sin(u), np.full(n, c)], axis=-1)
        if axis is not None:
            rot = _rotation_to(np.asarray(axis, dtype=float))
            pts = pts @ rot.T
        return cls(pts)


def _rotation_to(axis: np.ndarray) -> np.ndarray:
    """Rotation taking the north pole to the given unit axis."""
    axis = axis / np.linalg.norm(axis)
    z = np.array([0.0, 0.0, 1.0])
    v = np.cross(z, axis)
    c = float(z @ axis)
    if np.linalg.norm(v) < 1e-14:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + vx + vx @ vx / (1.0 + c)


@dataclass(frozen=True)
class CurveFrame:
    """Orthonormal frame, geodesic curvature and arclength weights."""

    points: np.ndarray
    tangent: np.ndarray
    conormal: np.ndarray     # eta = gamma x t, pointing into the disc
    k_g: np.ndarray
    speed: np.ndarray
    ds: np.ndarray           # quadrature weights, sum = length
    frame_residual: float    # worst frame-equation defect (diagnostic)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def length(self) -> float:
        return float(np.sum(self.ds))


def frame_and_curvature(curve: SphericalCurve) -> CurveFrame:
    """Frame fields and geodesic curvature from spectral derivatives.

    Rejects curves that are not immersed or not strictly convex
    (``k_g <= 0`` somewhere).  The stored residual measures how well the
    sampled frame satisfies its structure equations; it sits at roundoff
    for resolved curves and grows with aliasing.
    """
    pts = curve.points
    gu = _curve_derivative(pts)
    speed = np.linalg.norm(gu, axis=1)
    if np.min(speed) <= 1e-12 * max(np.max(speed), 1.0):
        raise ValidationError("curve is not an immersion (vanishing speed)")
    t = gu / speed[:, None]
    eta = np.cross(pts, t)
    tu = _curve_derivative(t)
    ts = tu / speed[:, None]
    k_g = np.einsum("ij,ij->i", ts, eta)
    # floor relative to the ambient curvature scale sqrt(1+k_g^2) >= 1, so
    # geodesics (k_g = roundoff noise) are rejected as the boundary case
    if np.min(k_g) <= 1e-10 * (1.0 + float(np.max(np.abs(k_g)))):
        raise ValidationError(
            f"curve is not strictly convex: min geodesic curvature {np.min(k_g):.3e}")
    ds = speed * TWO_PI / curve.n

    eta_s = _curve_derivative(eta) / speed[:, None]
    res = max(
        float(np.max(np.abs(np.einsum("ij,ij->i", pts, t)))),
        float(np.max(np.linalg.norm(ts + pts - k_g[:, None] * eta, axis=1))),
        float(np.max(np.linalg.norm(eta_s + k_g[:, None] * t, axis=1))),
    )
    return CurveFrame(pts, t, eta, k_g, speed, ds, res)


def length_area(frame: CurveFrame):
    """Length, enclosed disc area and total geodesic curvature.

    The area comes from the total-turning identity ``A = 2 pi - K``; it
    must land in (0, 2 pi) for a positively oriented convex disc, and the
    space-form isoperimetric inequality ``L^2 >= A(4 pi - A)`` is
    asserted on the way out.
    """
    L = frame.length
    K = float(np.sum(frame.k_g * frame.ds))
    A = 2.0 * np.pi - K
    if not 0.0 < A < 2.0 * np.pi:
        raise ValidationError(
            f"enclosed area {A:.6f} outside (0, 2 pi): orientation or convexity failure")
    if L**2 < A * (4.0 * np.pi - A) - 1e-9 * max(L**2, 1.0):
        raise CertificationError(
            f"spherical isoperimetric inequality violated: L^2 = {L**2:.15e}, "
            f"A(4 pi - A) = {A * (4 * np.pi - A):.15e}")
    return L, A, K


def remainder_functional(frame: CurveFrame) -> float:
    """Nonnegative double-quadrature remainder of the length identity.

    Integrand ``(k(s)-k(o))^2 / (sqrt((1+k(s)^2)(1+k(o)^2)) + 1 + k(s)k(o))``
    over the product of the curve with itself, arclength weights on both
    factors.  The denominator is positive for convex curves, so a
    negative value signals a bug.
    """
    k = frame.k_g
    w = frame.ds
    root = np.sqrt(1.0 + k**2)
    denom = np.outer(root, root) + 1.0 + np.outer(k, k)
    num = (k[:, None] - k[None, :]) ** 2
    value = float(w @ (num / denom) @ w)
    if value < -1e-12 * max(frame.length**2, 1.0):
        raise CertificationError(f"remainder came out negative: {value:.3e}")
    return value


@dataclass(frozen=True, kw_only=True)
class SphereCurveReport(InequalityReport):
    """Spherical reverse-isoperimetric record."""

    L: float
    A: float
    K_gamma: float
    J: float
    remainder: float
    oscillation_bound: float


def reverse_iso_identity_report(curve: SphericalCurve,
                                tol: float = 1e-8) -> SphereCurveReport:
    """Certify the exact spherical reverse-isoperimetric identity.

    ``L^2 - A(4 pi - A) = J^2 - 4 pi^2 - R`` with
    ``J = int sqrt(1+k_g^2) ds`` and R the double-quadrature remainder;
    the inequality drops R, and the curvature-oscillation lower bound
    ``R >= L/(1+max k_g^2) * int (k_g - kbar)^2 ds`` is asserted too.
    The equality flag is the constant-curvature classifier.
    """
    frame = frame_and_curvature(curve)
    L, A, K = length_area(frame)
    J = float(np.sum(np.sqrt(1.0 + frame.k_g**2) * frame.ds))
    R = remainder_functional(frame)
    kbar = K / L
    osc = L / (1.0 + float(np.max(frame.k_g)) ** 2) \
        * float(np.sum((frame.k_g - kbar) ** 2 * frame.ds))

    lhs = L**2 - A * (4.0 * np.pi - A)
    rhs = J**2 - 4.0 * np.pi**2
    scale = max(L**2, 4.0 * np.pi**2)
    residual = abs(lhs - (rhs - R))
    variance = float(np.sum((frame.k_g - kbar) ** 2 * frame.ds)) / L
    is_circle = variance / float(np.mean(1.0 + frame.k_g**2)) < GEODESIC_CLASSIFIER

    passed = (residual <= tol * scale
              and rhs - lhs >= -tol * scale
              and R - osc >= -1e-9 * scale
              and R >= -1e-12 * scale)
    if not passed:
        raise CertificationError(
            "spherical identity failed: "
            f"L={L!r} A={A!r} K={K!r} J={J!r} R={R!r} residual={residual!r}")
    return SphereCurveReport(
        name="sphere_reverse_isoperimetric",
        lhs=lhs, rhs=rhs,
        functionals={"L": L, "A": A, "K_gamma": K, "J": J, "remainder": R,
                     "identity_residual": residual, "oscillation_bound": osc,
                     "k_g_variance": variance},
        tolerance=tol, resolution={"n": curve.n},
        equality=is_circle, passed=passed,
        L=L, A=A, K_gamma=K, J=J, remainder=R, oscillation_bound=osc,
    )


def spherical_evolute(frame: CurveFrame):
    """Evolute ``(k_g gamma + eta)/sqrt(1+k_g^2)`` and its cusp parameters.

    The evolute is a front whose speed is ``|k_g'|/(1+k_g^2)``; cusps sit
    at interior zeros of ``k_g'``, located by sign change and refined on
    the trigonometric interpolant.  A constant-curvature curve collapses
    to the single focal point and has no cusps.
    """
    k = frame.k_g
    root = np.sqrt(1.0 + k**2)
    evolute = (k[:, None] * frame.points + frame.conormal) / root[:, None]

    kbar = float(np.sum(k * frame.ds)) / frame.length
    variance = float(np.sum((k - kbar) ** 2 * frame.ds)) / frame.length
    if variance / float(np.mean(1.0 + k**2)) < GEODESIC_CLASSIFIER:
        return evolute, np.array([])

    ku = spectral_derivative(k, 1)
    floor = 1e-9 * float(np.max(np.abs(ku)))
    interp = FourierCoefficients.from_samples(PeriodicSamples(ku))
    nodes = TWO_PI * np.arange(frame.n) / frame.n
    cusps = []
    for j in range(frame.n):
        a, b = nodes[j], nodes[(j + 1) % frame.n] + (TWO_PI if j + 1 == frame.n else 0.0)
        fa, fb = ku[j], ku[(j + 1) % frame.n]
        if fa * fb < 0.0 and max(abs(fa), abs(fb)) > floor:
            cusps.append(brentq(interp, a, b, xtol=1e-12))
    return evolute, np.asarray(cusps) % TWO_PI


def gnomonic_lift(planar, height: float = 1.0) -> SphericalCurve:
    """Central-projection lift of a convex planar curve onto the sphere.

    The planar curve (positively oriented, as a ``PlanarFront`` or an
    (n, 2) sample array) is placed in the plane z = height and projected
    radially onto the unit sphere.  It must stay well inside the open
    upper hemisphere; convexity of the lift is re-validated downstream.
    """
    pts = planar.points if isinstance(planar, PlanarFront) else np.asarray(planar, float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValidationError("planar curve must be an (n, 2) sample array")
    if height <= 0.0:
        raise ValidationError("projection height must be positive")
    extent = np.max(np.linalg.norm(pts - pts.mean(axis=0), axis=1))
    if extent < 1e-10 * (1.0 + np.max(np.abs(pts))):
        raise ValidationError("degenerate planar input: not a curve")
    radius = np.max(np.linalg.norm(pts, axis=1))
    if radius >= height * GNOMONIC_LIMIT:
        raise ValidationError(
            f"planar curve of radius {radius:.3f} leaves the open hemisphere "
            f"at height {height:.3f}")
    lifted = np.concatenate([pts, np.full((pts.shape[0], 1), height)], axis=1)
    lifted /= np.linalg.norm(lifted, axis=1)[:, None]
    return SphericalCurve(lifted)
