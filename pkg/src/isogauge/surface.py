"""Strictly convex surfaces in R^3 through support functions on the sphere.

All geometry lives on the Gauss-sphere parametrization: the surface point
with outward normal z is ``f(z) = h(z) z + grad h(z)``, the radius tensor
``r = Hess h + h sigma`` is the inverse Weingarten map, and surface
integrals are pulled back with ``dsigma = K dmu``.  No mesh of the
surface is ever built.

The ordered principal radii are pointwise eigenvalues of r; their
derivatives are never taken except inside oriented volumes of the focal
maps, which is why the focal identity is only certified on families with
smooth umbilics (zonal perturbations, spheroids).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CertificationError, ValidationError
from .reports import InequalityReport, equality_flag, make_report
from .sphere import (FOUR_PI, SphereDerivatives, SphereGrid, SphereScalarField,
                     sphere_operators)

# Minimum eigenvalue of the radius tensor, relative to the mean support value.
CONVEXITY_FLOOR = 1e-6
HESSIAN_SYMMETRY_TOL = 1e-9


@dataclass(frozen=True)
class SupportField:
    """Support function of a strictly convex surface, on a sphere grid."""

    field: SphereScalarField

    def __post_init__(self):
        ops = sphere_operators(self.field)
        h = self.field.values
        r_tt = ops.hess_tt + h
        r_tp = ops.hess_tp
        r_pp = ops.hess_pp + h
        mid = 0.5 * (r_tt + r_pp)
        half = np.sqrt((0.5 * (r_tt - r_pp)) ** 2 + r_tp**2)
        rho1, rho2 = mid + half, mid - half
        mean_h = self.field.mean()
        bad = rho2 < CONVEXITY_FLOOR * mean_h
        if np.any(bad):
            idx = np.argwhere(bad)
            raise ValidationError(
                "support field is not strictly convex at "
                f"{idx.shape[0]} nodes (first few: {idx[:5].tolist()}), "
                f"min radius {rho2.min():.3e}")
        for name, val in [("ops", ops), ("r_tt", r_tt), ("r_tp", r_tp),
                          ("r_pp", r_pp), ("rho1", rho1), ("rho2", rho2),
                          ("det_r", r_tt * r_pp - r_tp**2)]:
            if isinstance(val, np.ndarray):
                val.setflags(write=False)
            object.__setattr__(self, name, val)

    @property
    def grid(self) -> SphereGrid:
        return self.field.grid

    @property
    def values(self) -> np.ndarray:
        return self.field.values

    def position_map(self) -> np.ndarray:
        """Surface points ``h z + grad h``, indexed by the normal grid."""
        g = self.grid
        return (self.values[..., None] * g.normal
                + self.ops.grad_theta[..., None] * g.e_theta
                + self.ops.grad_phi[..., None] * g.e_phi)


@dataclass(frozen=True)
class SurfaceGeometry:
    """Position map, principal radii and the scalar integrals of a surface."""

    support: SupportField
    position: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray
    total_mean_curvature: float   # integral of H over the surface
    area: float
    tracefree: float              # integral of |A^o|^2 / K
    gauss: float                  # integral of K (Gauss-Bonnet check)

    @property
    def grid(self) -> SphereGrid:
        return self.support.grid


def surface_from_support(h: SupportField) -> SurfaceGeometry:
    """Populate the surface integrals from the support function.

    Total mean curvature and area use the first-variation formulas
    ``int H dmu = 2 int h dsigma`` and
    ``|M| = int h^2 dsigma - (1/2) int |grad h|^2 dsigma``; the trace-free
    integral is the pure quadrature ``(1/2) int (rho1-rho2)^2 dsigma``.
    """
    g = h.grid
    ih = 2.0 * g.quadrature(h.values)
    area = g.quadrature(h.values**2) - 0.5 * g.quadrature(h.ops.grad_sq)
    tracefree = 0.5 * g.quadrature((h.rho1 - h.rho2) ** 2)
    gauss = g.quadrature(h.det_r / (h.rho1 * h.rho2))
    return SurfaceGeometry(h, h.position_map(), h.rho1, h.rho2,
                           ih, area, tracefree, gauss)


def principal_radii(h: SupportField):
    """Ordered principal radius fields ``rho1 >= rho2 > 0``.

    A radius tensor whose two mixed-derivative evaluations disagree
    beyond tolerance indicates a broken Hessian.
    """
    scale = max(float(np.max(np.abs(h.rho1))), 1.0)
    if h.ops.hessian_asymmetry > HESSIAN_SYMMETRY_TOL * scale:
        raise CertificationError(
            f"radius tensor asymmetry {h.ops.hessian_asymmetry:.3e} "
            "exceeds tolerance: Hessian bug")
    g = h.grid
    return SphereScalarField(g, h.rho1), SphereScalarField(g, h.rho2)


def map_derivatives(grid: SphereGrid, psi: np.ndarray):
    """Componentwise theta/phi derivatives of an R^3-valued map."""
    psi_t = np.stack([grid.dtheta(psi[..., k]) for k in range(3)], axis=-1)
    psi_p = np.stack([grid.dphi(psi[..., k]) for k in range(3)], axis=-1)
    return psi_t, psi_p


def oriented_volume(grid: SphereGrid, psi: np.ndarray) -> float:
    """Signed volume of a closed map from the sphere into R^3.

    Evaluates ``(1/3) int det[psi, psi_u, psi_v]`` over the parameter
    sphere; for an embedded star-shaped surface this is the enclosed
    volume, and it stays well-defined for fronts.
    """
    psi = np.asarray(psi, dtype=float)
    if psi.shape != grid.shape + (3,):
        raise ValidationError(f"map shape {psi.shape} does not match grid")
    if not np.all(np.isfinite(psi)):
        raise ValidationError("map contains non-finite samples")
    psi_t, psi_p = map_derivatives(grid, psi)
    det = np.einsum("ijk,ijk->ij", psi, np.cross(psi_t, psi_p))
    return grid.quadrature(det / grid.sin_theta[:, None]) / 3.0


def normal_graph_volume_series(h: SupportField, u: SphereScalarField,
                               tol: float = 1e-8) -> float:
    """Volume of the normal graph ``f + u z`` from the curvature series.

    ``V[f + u nu] = V[f] + int (u + H u^2/2 + K u^3/3) dmu``, evaluated in
    the normal chart as ``int (u det r + u^2 tr r / 2 + u^3/3) dsigma``.
    Cross-checked against the oriented volume of the displaced map; a
    disagreement beyond tolerance is an operator bug.
    """
    g = h.grid
    if u.grid.shape != g.shape:
        raise ValidationError("graph function must live on the support grid")
    base = oriented_volume(g, h.position_map())
    uu = u.values
    series = base + g.quadrature(uu * h.det_r + 0.5 * uu**2 * (h.r_tt + h.r_pp)
                                 + uu**3 / 3.0)
    direct = oriented_volume(g, h.position_map() + uu[..., None] * g.normal)
    scale = max(abs(series), abs(direct), 1.0)
    if abs(series - direct) > tol * scale:
        raise CertificationError(
            f"normal-graph volume series {series:.15e} disagrees with "
            f"pullback volume {direct:.15e}")
    return series


@dataclass(frozen=True)
class FocalData:
    """Centers-of-curvature maps and their oriented volumes."""

    b1: np.ndarray
    b2: np.ndarray
    volume1: float
    volume2: float


def focal_maps(h: SupportField) -> FocalData:
    """Focal maps ``b_i = f - rho_i z`` with their oriented volumes."""
    g = h.grid
    f = h.position_map()
    b1 = f - h.rho1[..., None] * g.normal
    b2 = f - h.rho2[..., None] * g.normal
    return FocalData(b1, b2, oriented_volume(g, b1), oriented_volume(g, b2))


def focal_volume_identity(h: SupportField, tol: float = 1e-7) -> InequalityReport:
    """Certify the focal-volume identity.

    ``V[b1] - V[b2]`` from two oriented-volume evaluations must match
    ``(1/6) int (rho1-rho2)^3 dsigma`` (equivalently the trace-free
    curvature form).  Meaningful when the ordered radii are C^2, i.e. on
    families whose umbilics are smooth; the report records the umbilic
    proximity diagnostics either way.
    """
    g = h.grid
    focal = focal_maps(h)
    lhs = focal.volume1 - focal.volume2
    gap = h.rho1 - h.rho2
    rhs = g.quadrature(gap**3) / 6.0
    # same quantity through the curvature form (sqrt(2)/3) |A^o|^3/K^2 dmu
    lam1, lam2 = 1.0 / h.rho2, 1.0 / h.rho1
    ao3 = (0.5 * (lam1 - lam2) ** 2) ** 1.5
    kg = lam1 * lam2
    rhs_curv = np.sqrt(2.0) / 3.0 * g.quadrature(ao3 / kg**2 * h.det_r)

    scale = max(abs(lhs), abs(rhs), 1e-4)
    mean_gap = g.quadrature(gap) / FOUR_PI
    return make_report(
        "focal_volume_identity", lhs, rhs,
        {"volume_b1": focal.volume1, "volume_b2": focal.volume2,
         "volume_difference": lhs, "gap_cubed_integral": rhs,
         "curvature_form": rhs_curv, "min_radius_gap": float(gap.min()),
         "mean_radius_gap": mean_gap},
        tol, {"n_theta": g.n_theta, "n_phi": g.n_phi},
        passed=abs(lhs - rhs) <= tol * scale,
        equality=abs(lhs - rhs) <= tol * scale,
    )


def deficit_identity_check(h: SupportField, tol: float = 1e-8) -> InequalityReport:
    """Certify the support-function form of the Minkowski deficit.

    ``(int H dmu)^2/(16 pi) - |M|`` with the area taken from the metric
    pullback ``int det r dsigma`` must equal
    ``(1/2) int |grad h|^2 - int (h - hbar)^2``; the two sides share no
    discrete path, so agreement certifies the sphere operators."""
    g = h.grid
    ih = 2.0 * g.quadrature(h.values)
    area_pullback = g.quadrature(h.det_r)
    lhs = ih**2 / (16.0 * np.pi) - area_pullback
    hbar = h.field.mean()
    rhs = 0.5 * g.quadrature(h.ops.grad_sq) - g.quadrature((h.values - hbar) ** 2)
    scale = max(abs(lhs), abs(rhs), area_pullback)
    return make_report(
        "deficit_identity", lhs, rhs,
        {"total_mean_curvature": ih, "area_pullback": area_pullback,
         "mean_support": hbar},
        tol, {"n_theta": g.n_theta, "n_phi": g.n_phi},
        passed=abs(lhs - rhs) <= tol * scale,
    )


@dataclass(frozen=True, kw_only=True)
class SurfaceReport(InequalityReport):
    """Reverse Minkowski chain record."""

    deficit: float
    bound_tracefree: float
    bound_focal: float
    holder_intermediate: float


def reverse_minkowski_report(h: SupportField, tol: float = 1e-8) -> SurfaceReport:
    """Certify the reverse Minkowski chain.

    ``0 <= (int H dmu)^2 - 16 pi |M| <= (8 pi/3) int |A^o|^2/K dmu
    <= (8 pi/3)(4 pi)^{1/3} ((3/sqrt 2)(V[b1]-V[b2]))^{2/3}``, with the
    focal-volume difference evaluated by the umbilic-safe quadrature
    ``(1/6) int (rho1-rho2)^3 dsigma``.  A broken chain raises with a
    dump of every integral.
    """
    geom = surface_from_support(h)
    g = h.grid
    deficit = geom.total_mean_curvature**2 - 16.0 * np.pi * geom.area
    bound1 = 8.0 * np.pi / 3.0 * geom.tracefree
    gap = h.rho1 - h.rho2
    vol_diff = g.quadrature(gap**3) / 6.0
    ao3_integral = g.quadrature(gap**3) / (2.0 * np.sqrt(2.0))
    holder = (FOUR_PI) ** (1.0 / 3.0) * ao3_integral ** (2.0 / 3.0)
    bound2 = (8.0 * np.pi / 3.0) * (FOUR_PI) ** (1.0 / 3.0) \
        * (3.0 / np.sqrt(2.0) * vol_diff) ** (2.0 / 3.0)

    scale = max(abs(deficit), abs(bound1), geom.total_mean_curvature**2)
    functionals = {
        "total_mean_curvature": geom.total_mean_curvature, "area": geom.area,
        "tracefree": geom.tracefree, "gauss": geom.gauss,
        "deficit": deficit, "bound_tracefree": bound1, "bound_focal": bound2,
        "holder_intermediate": holder, "focal_volume_difference": vol_diff,
    }
    if deficit < -tol * scale or bound1 - deficit < -tol * scale \
            or bound2 - bound1 < -tol * max(bound1, bound2, 1.0):
        raise CertificationError(
            "reverse Minkowski chain violated: " +
            ", ".join(f"{k}={v:.15e}" for k, v in functionals.items()))
    return SurfaceReport(
        name="reverse_minkowski",
        lhs=deficit, rhs=bound1,
        functionals=functionals,
        tolerance=tol, resolution={"n_theta": g.n_theta, "n_phi": g.n_phi},
        equality=equality_flag(deficit, bound1, tol),
        passed=True,
        deficit=deficit, bound_tracefree=bound1, bound_focal=bound2,
        holder_intermediate=holder,
    )
