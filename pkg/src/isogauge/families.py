"""Seeded generators of valid random geometric inputs.

Every sweep in the package draws from these generators with an explicit
64-bit seed through ``numpy.random.default_rng``, so a given seed
reproduces the same family on any machine.  Generation is rejection
sampling: coefficients are drawn from fixed boxes and a draw is retried
until the profile passes its validity checks.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .fourier import PeriodicSamples, TWO_PI
from .plane import DEFAULT_NODES, NormProfile, PlanarFront, SupportProfile
from .sphere import SphereGrid, SphereScalarField, real_sph_harm
from .spherecurve import SphericalCurve, gnomonic_lift
from .surface import SupportField

MAX_TRIES = 200


def _reject_loop(make, validate, what: str):
    for _ in range(MAX_TRIES):
        candidate = make()
        try:
            return validate(candidate)
        except ValidationError:
            continue
    raise ValidationError(f"could not generate a valid {what} in {MAX_TRIES} tries")


def random_support_profile(rng, n: int = DEFAULT_NODES, max_degree: int = 4,
                           amplitude: float = 0.25) -> SupportProfile:
    """Random strictly convex support function ``1 + sum of modes 2..D``.

    Mode-k amplitudes are uniform in ``[-amplitude, amplitude]/k^2``; the
    decay keeps most draws convex and the rest are rejected.
    """
    theta = TWO_PI * np.arange(n) / n

    def make():
        vals = np.ones(n)
        for k in range(2, max_degree + 1):
            a, b = rng.uniform(-amplitude, amplitude, 2) / k**2
            vals = vals + a * np.cos(k * theta) + b * np.sin(k * theta)
        return vals

    return _reject_loop(make, lambda v: SupportProfile(PeriodicSamples(v)),
                        "support profile")


def random_norm_profile(rng, n: int = DEFAULT_NODES, max_degree: int = 4,
                        amplitude: float = 0.2) -> NormProfile:
    """Random smooth norm: positive, centrally symmetric (even modes only)."""
    theta = TWO_PI * np.arange(n) / n

    def make():
        vals = np.ones(n)
        for k in range(2, max_degree + 1, 2):
            a, b = rng.uniform(-amplitude, amplitude, 2) / k**2
            vals = vals + a * np.cos(k * theta) + b * np.sin(k * theta)
        return vals

    return _reject_loop(make, lambda v: NormProfile(PeriodicSamples(v)),
                        "norm profile")


def random_plane_pair(rng, n: int = DEFAULT_NODES):
    """Random valid (curve, norm) profile pair on a common grid."""
    return random_support_profile(rng, n), random_norm_profile(rng, n)


def random_periodic(rng, n: int = DEFAULT_NODES, max_degree: int = 6,
                    amplitude: float = 0.1) -> PeriodicSamples:
    """Random smooth band-limited periodic function (graph perturbations)."""
    theta = TWO_PI * np.arange(n) / n
    vals = np.full(n, rng.uniform(-amplitude, amplitude))
    for k in range(1, max_degree + 1):
        a, b = rng.uniform(-amplitude, amplitude, 2) / k
        vals += a * np.cos(k * theta) + b * np.sin(k * theta)
    return PeriodicSamples(vals)


def random_support_field(rng, grid: SphereGrid, max_degree: int = 4,
                         total_amplitude: float = 0.05) -> SupportField:
    """Random convex support field ``1 + sum eps_lm Y_lm``, degrees 1..D.

    Coefficients are uniform draws rescaled so their absolute sum is at
    most ``total_amplitude``, which keeps the radius tensor positive
    definite with margin for the default degree range; failures are
    rejected and redrawn.
    """
    modes = [(l, m) for l in range(1, max_degree + 1) for m in range(-l, l + 1)]

    def make():
        eps = rng.uniform(-1.0, 1.0, len(modes))
        total = np.sum(np.abs(eps))
        if total > 0:
            eps *= total_amplitude * rng.uniform(0.2, 1.0) / total
        vals = np.ones(grid.shape)
        for (l, m), e in zip(modes, eps):
            vals = vals + e * real_sph_harm(grid, l, m).values
        return vals

    return _reject_loop(make, lambda v: SupportField(SphereScalarField(grid, v)),
                        "support field")


def spheroid_field(grid: SphereGrid, a: float = 1.0, c: float = 1.2) -> SupportField:
    """Support field of the spheroid with equatorial semiaxis a, polar c."""
    if a <= 0 or c <= 0:
        raise ValidationError("spheroid semiaxes must be positive")
    vals = np.sqrt(a**2 + (c**2 - a**2) * grid.x**2)
    return SupportField(SphereScalarField(grid, np.broadcast_to(
        vals[:, None], grid.shape).copy()))


def zonal_field(grid: SphereGrid, degree: int, eps: float,
                base: float = 1.0) -> SupportField:
    """Support field ``base + eps * Y_{degree,0}``."""
    vals = base + eps * real_sph_harm(grid, degree, 0).values
    return SupportField(SphereScalarField(grid, vals))


def smooth_umbilic_zoo(grid: SphereGrid, count: int = 20):
    """Fixed list of surfaces whose ordered principal radii stay smooth.

    Spheroids (prolate and oblate) and single-signed zonal perturbations;
    exactly the families on which the focal maps are C^2 so the focal
    volume identity is certifiable.
    """
    surfaces = [spheroid_field(grid, 1.0, 1.2)]
    for c in [1.05, 1.1, 1.3, 1.5, 0.9, 0.8, 0.7]:
        surfaces.append(spheroid_field(grid, 1.0, c))
    for eps in [0.05, -0.05, 0.03, -0.03, 0.02, -0.02, 0.04, -0.04, 0.06, -0.06]:
        surfaces.append(zonal_field(grid, 2, eps))
    # degree 2 + a subordinate degree 4 piece keeps d^2h/dx^2 single-signed
    for e2, e4 in [(0.05, 0.004), (-0.05, -0.004)]:
        vals = (1.0 + e2 * real_sph_harm(grid, 2, 0).values
                + e4 * real_sph_harm(grid, 4, 0).values)
        surfaces.append(SupportField(SphereScalarField(grid, vals)))
    return surfaces[:count]


def random_sphere_scalar(rng, grid: SphereGrid, max_degree: int = 4,
                         amplitude: float = 0.1) -> SphereScalarField:
    """Random band-limited scalar field on the sphere."""
    vals = np.zeros(grid.shape)
    for l in range(0, max_degree + 1):
        for m in range(-l, l + 1):
            vals += rng.uniform(-amplitude, amplitude) * real_sph_harm(grid, l, m).values
    return SphereScalarField(grid, vals)


def random_gnomonic_oval(rng, n: int = DEFAULT_NODES, height: float = 1.0,
                         max_degree: int = 4, amplitude: float = 0.3) -> SphericalCurve:
    """Random convex spherical curve: lift of a random convex planar oval."""
    from .plane import curve_from_support
    from .spherecurve import frame_and_curvature

    def make():
        p = random_support_profile(rng, n, max_degree, amplitude)
        return curve_from_support(p)

    def validate(front: PlanarFront):
        curve = gnomonic_lift(front, height)
        frame_and_curvature(curve)  # k_g > 0 re-validated downstream
        return curve

    return _reject_loop(make, validate, "gnomonic oval")


def random_rotation(rng) -> np.ndarray:
    """Haar-ish random rotation matrix of R^3."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q *= np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
