"""Convex-curve geometry in a normed (Minkowski) plane.

Curves are represented by their Euclidean support function p sampled
against the outward-normal angle; the norm enters through the support
function h of the dual unit body, sampled on the same grid.  At the node
with parameter value t the curve's unit tangent is ``(-sin t, cos t)``
and its inward unit normal is ``(-cos t, -sin t)``; all anisotropic
quantities below pair h with the curve through that frame.  Convexity is
then the pointwise inequality ``p'' + p > 0``, the anisotropic arclength
element is ``h (p'' + p) dt``, and every functional is a single
quadrature in t.

Evolutes and other center maps are fronts: closed parametrized maps that
may fail to be immersed.  Their signed area is always the parametric
``(1/2) integral of c ^ c_u`` and is meaningful regardless of cusps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, ValidationError
from .fourier import (FourierCoefficients, PeriodicSamples, TWO_PI,
                      spectral_derivative)
from .reports import InequalityReport, equality_flag, make_report

# Floor for the strict positivity constraints, relative to each field's scale.
PROFILE_FLOOR = 1e-8
SYMMETRY_TOL = 1e-10
IDENTITY_TOL = 1e-8
DEFAULT_NODES = 512
# |signed evolute area| below this is treated as the equality family.
EVOLUTE_AREA_FLOOR = 1e-10


def _node_frames(n: int):
    """Outward-normal and tangent directions at the parameter nodes."""
    t = TWO_PI * np.arange(n) / n
    u = np.stack([np.cos(t), np.sin(t)], axis=-1)
    tang = np.stack([-np.sin(t), np.cos(t)], axis=-1)
    return u, tang


@dataclass(frozen=True)
class SupportProfile:
    """Euclidean support function of a strictly convex curve."""

    p: PeriodicSamples

    def __post_init__(self):
        radius = spectral_derivative(self.p.values, 2) + self.p.values
        scale = np.max(np.abs(radius))
        if np.min(radius) <= PROFILE_FLOOR * scale:
            raise ValidationError(
                "support profile is not strictly convex: min(p''+p) = "
                f"{np.min(radius):.3e}")
        radius.setflags(write=False)
        object.__setattr__(self, "radius", radius)  # p'' + p = 1/curvature
        dp = spectral_derivative(self.p.values, 1)
        dp.setflags(write=False)
        object.__setattr__(self, "dp", dp)

    @property
    def n(self) -> int:
        return self.p.n

    @classmethod
    def from_coefficients(cls, coeffs: FourierCoefficients,
                          n: int = DEFAULT_NODES) -> "SupportProfile":
        return cls(coeffs.to_samples(n))


@dataclass(frozen=True)
class NormProfile:
    """Support function of the dual unit body defining the norm.

    Must be positive, centrally symmetric (period pi) and satisfy
    ``h'' + h > 0``.
    """

    h: PeriodicSamples

    def __post_init__(self):
        vals = self.h.values
        scale = np.max(np.abs(vals))
        if np.min(vals) <= PROFILE_FLOOR * scale:
            raise ValidationError(f"norm profile must be positive, min = {np.min(vals):.3e}")
        if np.max(np.abs(vals - self.h.shifted_half_period())) > SYMMETRY_TOL * scale:
            raise ValidationError("norm profile is not centrally symmetric")
        radius = spectral_derivative(vals, 2) + vals
        if np.min(radius) <= PROFILE_FLOOR * np.max(np.abs(radius)):
            raise ValidationError(
                f"norm profile is not strictly convex: min(h''+h) = {np.min(radius):.3e}")
        radius.setflags(write=False)
        object.__setattr__(self, "radius", radius)
        dh = spectral_derivative(vals, 1)
        dh.setflags(write=False)
        object.__setattr__(self, "dh", dh)

    @property
    def n(self) -> int:
        return self.h.n

    @classmethod
    def euclidean(cls, n: int = DEFAULT_NODES) -> "NormProfile":
        return cls(PeriodicSamples(np.ones(n)))

    @classmethod
    def from_coefficients(cls, coeffs: FourierCoefficients,
                          n: int = DEFAULT_NODES) -> "NormProfile":
        return cls(coeffs.to_samples(n))


@dataclass(frozen=True)
class PlanarFront:
    """Closed sampled map into the plane, not necessarily immersed."""

    points: np.ndarray
    immersed: bool = True

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValidationError(f"front samples must have shape (n, 2), got {pts.shape}")
        if pts.shape[0] < 8 or pts.shape[0] % 2:
            raise ValidationError("front needs an even number of samples >= 8")
        if not np.all(np.isfinite(pts)):
            raise ValidationError("front contains non-finite samples")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True, kw_only=True)
class PlaneReport(InequalityReport):
    """Planar certification record with the named curve functionals."""

    L: float
    A_gamma: float
    A_iso: float
    A_evolute: float
    ratio: float


def _pair(p: SupportProfile, h: NormProfile):
    if p.n != h.n:
        raise ValidationError(f"profile grids differ: {p.n} vs {h.n}")
    return p.n


def curve_from_support(p: SupportProfile) -> PlanarFront:
    """Strictly convex curve traced from its support function."""
    u, tang = _node_frames(p.n)
    return PlanarFront(p.p.values[:, None] * u + p.dp[:, None] * tang, immersed=True)


def signed_area(front: PlanarFront) -> float:
    """Parametric signed area ``(1/2) int c ^ c_u du`` of a closed map."""
    x, y = front.points[:, 0], front.points[:, 1]
    xu = spectral_derivative(x, 1)
    yu = spectral_derivative(y, 1)
    return 0.5 * TWO_PI * float(np.mean(x * yu - y * xu))


def minkowski_length(p: SupportProfile, h: NormProfile) -> float:
    """Anisotropic length: the integral of ``h (p''+p)``."""
    n = _pair(p, h)
    return TWO_PI * float(np.mean(h.h.values * p.radius))


def minkowski_curvature(p: SupportProfile, h: NormProfile) -> PeriodicSamples:
    """Anisotropic curvature ``(h''+h)/(p''+p)``, positive on valid input."""
    _pair(p, h)
    return PeriodicSamples(h.radius / p.radius)


def isoperimetrix(h: NormProfile) -> PlanarFront:
    """Closed convex curve solving the fixed-area anisotropic length problem."""
    u, tang = _node_frames(h.n)
    return PlanarFront(-h.dh[:, None] * tang - h.h.values[:, None] * u,
                       immersed=True)


def minkowski_evolute(p: SupportProfile, h: NormProfile) -> PlanarFront:
    """Front of anisotropic centers of curvature ``gamma + kappa^{-1} N``."""
    n = _pair(p, h)
    u, tang = _node_frames(n)
    gamma = p.p.values[:, None] * u + p.dp[:, None] * tang
    normal = -h.dh[:, None] * tang - h.h.values[:, None] * u
    inv_kappa = (p.radius / h.radius)[:, None]
    return PlanarFront(gamma + inv_kappa * normal, immersed=False)


def _dsigma(p: SupportProfile, h: NormProfile) -> np.ndarray:
    """Anisotropic arclength weights at the nodes."""
    return h.h.values * p.radius * (TWO_PI / p.n)


def total_curvature_identity(p: SupportProfile, h: NormProfile,
                             tol: float = 1e-9) -> InequalityReport:
    """Certify that total anisotropic curvature is twice the area of the
    isoperimetrix, computing the two sides along independent routes."""
    kappa = minkowski_curvature(p, h).values
    lhs = float(np.sum(kappa * _dsigma(p, h)))
    rhs = 2.0 * signed_area(isoperimetrix(h))
    scale = max(abs(lhs), abs(rhs), 1.0)
    return make_report(
        "total_curvature_identity", lhs, rhs,
        {"total_curvature": lhs, "twice_A_iso": rhs},
        tol, {"n": p.n},
        passed=abs(rhs - lhs) <= tol * scale,
    )


def normal_graph_area(p: SupportProfile, h: NormProfile,
                      phi: PeriodicSamples, tol: float = 1e-9) -> InequalityReport:
    """Signed area of the anisotropic normal graph ``gamma + phi N``.

    Computes the area directly from the sampled front and through the
    completed-square quadrature identity, reports both, and checks the
    lower bound attained by the evolute.
    """
    n = _pair(p, h)
    if phi.n != n:
        raise ValidationError("graph function must live on the profile grid")
    u, tang = _node_frames(n)
    gamma = p.p.values[:, None] * u + p.dp[:, None] * tang
    normal = -h.dh[:, None] * tang - h.h.values[:, None] * u
    direct = signed_area(PlanarFront(gamma + phi.values[:, None] * normal,
                                     immersed=False))

    dsig = _dsigma(p, h)
    kappa = h.radius / p.radius
    area_gamma = signed_area(PlanarFront(gamma))
    int_inv_kappa = float(np.sum(dsig / kappa))
    square_term = 0.5 * float(np.sum(kappa * (phi.values - 1.0 / kappa) ** 2 * dsig))
    formula = area_gamma + square_term - 0.5 * int_inv_kappa
    lower = area_gamma - 0.5 * int_inv_kappa

    scale = max(abs(direct), abs(formula), 1.0)
    passed = (abs(direct - formula) <= tol * scale
              and direct >= lower - tol * scale)
    return make_report(
        "normal_graph_area", direct, formula,
        {"A_direct": direct, "A_formula": formula, "A_gamma": area_gamma,
         "lower_bound": lower, "square_term": square_term},
        tol, {"n": n},
        passed=passed,
        equality=abs(direct - lower) <= tol * scale,
    )


def reverse_iso_report(p: SupportProfile, h: NormProfile,
                       tol: float = IDENTITY_TOL) -> PlaneReport:
    """Certify the anisotropic reverse isoperimetric chain.

    Checks ``0 <= L^2 - 4 A(gamma) A(iso) <= 4 A(iso) |A(evolute)|`` and
    reports the anisotropic isoperimetric ratio.  A negative left side
    beyond tolerance means the anisotropic isoperimetric inequality
    failed numerically, which is an operator bug.
    """
    n = _pair(p, h)
    length = minkowski_length(p, h)
    area_gamma = signed_area(curve_from_support(p))
    area_iso = signed_area(isoperimetrix(h))
    area_evolute = signed_area(minkowski_evolute(p, h))

    lhs = length**2 - 4.0 * area_gamma * area_iso
    rhs = 4.0 * area_iso * abs(area_evolute)
    scale = max(abs(lhs), abs(rhs), length**2)
    if lhs < -tol * scale:
        raise CertificationError(
            f"anisotropic isoperimetric inequality violated: lhs = {lhs:.3e}")
    ratio = length**2 / (4.0 * area_gamma * area_iso)
    return PlaneReport(
        name="reverse_isoperimetric",
        lhs=lhs, rhs=rhs,
        functionals={"L": length, "A_gamma": area_gamma, "A_iso": area_iso,
                     "A_evolute": area_evolute, "ratio": ratio},
        tolerance=tol, resolution={"n": n},
        equality=equality_flag(lhs, rhs, tol),
        passed=rhs - lhs >= -tol * scale,
        L=length, A_gamma=area_gamma, A_iso=area_iso,
        A_evolute=area_evolute, ratio=ratio,
    )


def hurwitz_report(p: SupportProfile, tol: float = IDENTITY_TOL) -> PlaneReport:
    """Euclidean reverse isoperimetric bound via the evolute area.

    ``0 <= L^2 - 4 pi A <= pi |A(e)|`` with
    ``A(e) = -(1/2) int p''(p''+p)``; equality exactly on support
    functions with no Fourier mode above 2.  The report carries the
    energy in modes >= 3 as the equality diagnostic.
    """
    n = p.n
    dt = TWO_PI / n
    ddp = p.radius - p.p.values
    length = float(np.sum(p.p.values)) * dt
    area = 0.5 * float(np.sum(p.p.values * p.radius)) * dt
    area_evolute = -0.5 * float(np.sum(ddp * p.radius)) * dt

    lhs = length**2 - 4.0 * np.pi * area
    rhs = np.pi * abs(area_evolute)
    scale = max(abs(lhs), abs(rhs), length**2)
    if lhs < -tol * scale:
        raise CertificationError(f"isoperimetric inequality violated: lhs = {lhs:.3e}")

    energy = FourierCoefficients.from_samples(p.p).mode_energy()
    high_energy = float(np.sum(energy[2:]))
    return PlaneReport(
        name="hurwitz",
        lhs=lhs, rhs=rhs,
        functionals={"L": length, "A_gamma": area, "A_iso": np.pi,
                     "A_evolute": area_evolute,
                     "ratio": length**2 / (4.0 * np.pi * area),
                     "energy_modes_ge3": high_energy,
                     "energy_mode_2": float(energy[1]) if energy.size > 1 else 0.0},
        tolerance=tol, resolution={"n": n},
        equality=equality_flag(lhs, rhs, tol),
        passed=rhs - lhs >= -tol * scale,
        L=length, A_gamma=area, A_iso=float(np.pi),
        A_evolute=area_evolute,
        ratio=length**2 / (4.0 * np.pi * area),
    )


def support_function_of_front(front: PlanarFront, angles: np.ndarray,
                              refine_steps: int = 6) -> np.ndarray:
    """Support function of a strictly convex front, sampled at ``angles``.

    Maximizes ``<c(t), (cos a, sin a)>`` over the trigonometric
    interpolant of the front: a dense scan brackets the maximizer, then a
    few Newton steps on the stationarity condition polish it to roughly
    machine precision (well inside the 1e-8 contract).
    """
    cx = FourierCoefficients.from_samples(PeriodicSamples(front.points[:, 0]))
    cy = FourierCoefficients.from_samples(PeriodicSamples(front.points[:, 1]))
    dx, dy = cx.derivative(), cy.derivative()
    ddx, ddy = dx.derivative(), dy.derivative()

    dense = max(4 * front.n, 512)
    td = TWO_PI * np.arange(dense) / dense
    xd, yd = cx(td), cy(td)
    ca, sa = np.cos(angles), np.sin(angles)
    t = td[np.argmax(np.outer(ca, xd) + np.outer(sa, yd), axis=1)]
    max_step = TWO_PI / dense
    for _ in range(refine_steps):
        g = dx(t) * ca + dy(t) * sa
        gp = ddx(t) * ca + ddy(t) * sa
        step = np.where(gp < 0, -g / np.where(gp < 0, gp, -1.0), 0.0)
        t = t + np.clip(step, -2 * max_step, 2 * max_step)
    return cx(t) * ca + cy(t) * sa
