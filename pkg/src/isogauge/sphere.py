"""Scalar calculus on the unit sphere over a Gauss-Legendre x Fourier grid.

Colatitude nodes are Gauss-Legendre points in ``x = cos(theta)`` (never at
the poles), longitudes are uniform.  Longitude derivatives are spectral.
Colatitude derivatives use the Legendre differentiation matrix, applied
per longitude mode with the mode's parity factored out: the theta-profile
of an even-m mode of a smooth field is a polynomial in x, that of an
odd-m mode is ``sin(theta)`` times a polynomial, and a theta-derivative
swaps the two classes.  Splitting this way keeps every derivative exact
(up to roundoff) on band-limited fields.

Covariant components are expressed in the orthonormal frame
``(d/dtheta, (1/sin theta) d/dphi)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import lpmv

from .errors import CertificationError, ValidationError
from .fourier import PeriodicSamples, periodic_integral, spectral_derivative
from .reports import InequalityReport, make_report

FOUR_PI = 4.0 * np.pi


def _diff_matrix(x: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Barycentric differentiation matrix at Gauss-Legendre nodes.

    Uses the closed-form barycentric weights ``(-1)^j sqrt((1-x^2) w)``
    and the negative-sum trick for the diagonal, both of which keep the
    roundoff growth well below the worst-case n^2 bound.
    """
    n = x.size
    b = (-1.0) ** np.arange(n) * np.sqrt((1.0 - x**2) * w)
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    D = (b[None, :] / b[:, None]) / dx
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


@dataclass(frozen=True)
class SphereGrid:
    """Gauss-Legendre (colatitude) x uniform (longitude) tensor grid."""

    n_theta: int
    n_phi: int

    def __post_init__(self):
        if self.n_theta < 4:
            raise ValidationError("need at least 4 colatitude nodes")
        if self.n_phi < 8 or self.n_phi % 2 != 0:
            raise ValidationError("need an even number of longitude nodes >= 8")
        x, w = leggauss(self.n_theta)
        order = np.argsort(-x)  # north to south
        x, w = x[order], w[order]
        if np.any(np.abs(x) >= 1.0):
            raise ValidationError("grid placed a node at a pole")
        theta = np.arccos(x)
        s = np.sqrt(1.0 - x**2)
        phi = 2.0 * np.pi * np.arange(self.n_phi) / self.n_phi
        for name, val in [
            ("x", x), ("w", w), ("theta", theta), ("sin_theta", s), ("phi", phi),
            ("D", _diff_matrix(x, w)),
            ("weights", np.outer(w, np.full(self.n_phi, 2.0 * np.pi / self.n_phi))),
        ]:
            val.setflags(write=False)
            object.__setattr__(self, name, val)
        ct, st = x[:, None], s[:, None]
        cp, sp = np.cos(phi)[None, :], np.sin(phi)[None, :]
        z = np.stack([st * cp, st * sp, ct * np.ones_like(cp)], axis=-1)
        e_th = np.stack([ct * cp, ct * sp, -st * np.ones_like(cp)], axis=-1)
        e_ph = np.stack([-sp * np.ones_like(ct), cp * np.ones_like(ct),
                         np.zeros((self.n_theta, self.n_phi))], axis=-1)
        for name, val in [("normal", z), ("e_theta", e_th), ("e_phi", e_ph)]:
            val.setflags(write=False)
            object.__setattr__(self, name, val)

    @property
    def shape(self):
        return (self.n_theta, self.n_phi)

    def quadrature(self, values: np.ndarray) -> float:
        """Solid-angle integral of node values."""
        return float(np.sum(self.weights * values))

    def dphi(self, F: np.ndarray, order: int = 1) -> np.ndarray:
        return _dphi(F, order)

    def dtheta(self, F: np.ndarray, flipped: bool = False) -> np.ndarray:
        return _dtheta(self, F, flipped)


def _dphi(F: np.ndarray, order: int = 1) -> np.ndarray:
    n_phi = F.shape[1]
    fh = np.fft.rfft(F, axis=1)
    m = np.arange(n_phi // 2 + 1, dtype=float)
    if order % 2 == 0:
        fh *= ((-1.0) ** (order // 2) * m**order)[None, :]
    else:
        fh *= ((1j) ** order * m**order)[None, :]
        fh[:, -1] = 0.0
    return np.fft.irfft(fh, n=n_phi, axis=1)


def _dtheta(grid: SphereGrid, F: np.ndarray, flipped: bool) -> np.ndarray:
    """d/dtheta of a field, tracking longitude-mode parity.

    ``flipped=False`` treats even-m modes as polynomials in x and odd-m
    modes as ``sin(theta) *`` polynomial (a smooth scalar); ``flipped=True``
    is the opposite convention, which is what one theta-derivative
    produces.  The result has the opposite convention from the input.
    """
    n_phi = F.shape[1]
    x, s, D = grid.x, grid.sin_theta, grid.D
    fh = np.fft.rfft(F, axis=1)
    m = np.arange(n_phi // 2 + 1)
    poly_mask = (m % 2 == 0) ^ flipped
    out = np.empty_like(fh)
    # polynomial-in-x modes: d/dtheta = -sin(theta) d/dx
    if np.any(poly_mask):
        v = fh[:, poly_mask]
        out[:, poly_mask] = -s[:, None] * (D @ v)
    # sin(theta)*polynomial modes: write v = s*g, d/dtheta(s g) = x g - (1-x^2) g'
    if np.any(~poly_mask):
        g = fh[:, ~poly_mask] / s[:, None]
        out[:, ~poly_mask] = x[:, None] * g - (s**2)[:, None] * (D @ g)
    return np.fft.irfft(out, n=n_phi, axis=1)


@dataclass(frozen=True)
class SphereScalarField:
    """Real scalar samples on a ``SphereGrid``."""

    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.shape != self.grid.shape:
            raise ValidationError(
                f"field shape {arr.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("field contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_function(cls, grid: SphereGrid, fn) -> "SphereScalarField":
        return cls(grid, fn(grid.theta[:, None], grid.phi[None, :]))

    @classmethod
    def zonal(cls, grid: SphereGrid, fn_of_x) -> "SphereScalarField":
        return cls(grid, np.broadcast_to(
            np.asarray(fn_of_x(grid.x))[:, None], grid.shape).copy())

    def mean(self) -> float:
        return self.grid.quadrature(self.values) / FOUR_PI


@dataclass(frozen=True)
class SphereDerivatives:
    """First and second covariant derivatives in the orthonormal frame."""

    grad_theta: np.ndarray
    grad_phi: np.ndarray
    hess_tt: np.ndarray
    hess_tp: np.ndarray
    hess_pp: np.ndarray
    laplacian: np.ndarray
    hessian_asymmetry: float

    @property
    def grad_sq(self) -> np.ndarray:
        return self.grad_theta**2 + self.grad_phi**2

    @property
    def hessian_trace(self) -> np.ndarray:
        return self.hess_tt + self.hess_pp


def sphere_operators(f: SphereScalarField) -> SphereDerivatives:
    """Gradient, covariant Hessian and Laplace-Beltrami of a field.

    The Laplacian is evaluated through the self-adjoint Legendre form
    ``d/dx((1-x^2) d/dx)`` per longitude mode, a different discrete route
    from the Hessian trace; the two agree pointwise to roundoff on
    resolved fields.  The off-diagonal Hessian entry is formed from both
    mixed-derivative orders and their maximum deviation is recorded.
    """
    grid, F = f.grid, f.values
    x, s = grid.x[:, None], grid.sin_theta[:, None]
    f_t = _dtheta(grid, F, flipped=False)
    f_tt = _dtheta(grid, f_t, flipped=True)
    f_p = _dphi(F, 1)
    f_pp = _dphi(F, 2)
    f_tp = _dphi(f_t, 1)
    f_pt = _dtheta(grid, f_p, flipped=False)

    grad_theta = f_t
    grad_phi = f_p / s
    hess_tp_a = (f_tp - (x / s) * f_p) / s
    hess_tp_b = (f_pt - (x / s) * f_p) / s
    asym = float(np.max(np.abs(hess_tp_a - hess_tp_b)))
    hess_tt = f_tt
    hess_tp = 0.5 * (hess_tp_a + hess_tp_b)
    hess_pp = f_pp / s**2 + (x / s) * f_t

    # Laplacian via the expanded Legendre operator, mode by mode.  Writing
    # it so every differentiation-matrix product is damped by a power of
    # sin(theta) keeps the near-pole roundoff far below the matrix norm.
    n_phi = grid.n_phi
    fh = np.fft.rfft(F, axis=1)
    m = np.arange(n_phi // 2 + 1)
    poly = m % 2 == 0
    D = grid.D
    lap_h = np.empty_like(fh)
    if np.any(poly):
        # (1-x^2) v'' - 2x v' - m^2 v/(1-x^2)
        v = fh[:, poly]
        dv = D @ v
        lap_h[:, poly] = (s**2) * (D @ dv) - 2.0 * x * dv \
            - (m[poly] ** 2)[None, :] * v / (s**2)
    if np.any(~poly):
        # v = s*g: s[(1-x^2) g'' - 4x g'] + (2x^2 - 1 - m^2) g / s
        g = fh[:, ~poly] / s
        dg = D @ g
        lap_h[:, ~poly] = s * ((s**2) * (D @ dg) - 4.0 * x * dg) \
            + (2.0 * x**2 - 1.0 - (m[~poly] ** 2)[None, :]) * g / s
    laplacian = np.fft.irfft(lap_h, n=n_phi, axis=1)

    return SphereDerivatives(grad_theta, grad_phi, hess_tt, hess_tp, hess_pp,
                             laplacian, asym)


def sphere_integral(f: SphereScalarField) -> float:
    """Solid-angle integral of the field."""
    return f.grid.quadrature(f.values)


def real_sph_harm(grid: SphereGrid, ell: int, m: int) -> SphereScalarField:
    """Orthonormal real spherical harmonic Y_{ell m} on the grid.

    ``m > 0`` carries ``cos(m phi)``, ``m < 0`` carries ``sin(|m| phi)``.
    Normalized so the solid-angle integral of Y^2 is 1.
    """
    if ell < 0 or abs(m) > ell:
        raise ValidationError(f"invalid harmonic indices ({ell}, {m})")
    am = abs(m)
    norm = np.sqrt((2 * ell + 1) / FOUR_PI * factorial(ell - am) / factorial(ell + am))
    leg = lpmv(am, ell, grid.x)[:, None]
    if m == 0:
        vals = norm * np.broadcast_to(leg, grid.shape).copy()
    elif m > 0:
        vals = np.sqrt(2.0) * norm * leg * np.cos(m * grid.phi)[None, :]
    else:
        vals = np.sqrt(2.0) * norm * leg * np.sin(am * grid.phi)[None, :]
    return SphereScalarField(grid, vals)


def harmonic_coefficient(f: SphereScalarField, ell: int, m: int) -> float:
    """Projection of the field onto Y_{ell m} by quadrature."""
    return f.grid.quadrature(f.values * real_sph_harm(f.grid, ell, m).values)


def poincare_gap_check(f, n: int, tol: float = 1e-8) -> InequalityReport:
    """Certify the two-sided spectral gap estimate for a mean-zero field.

    For dimension ``n`` (1 = circle, 2 = sphere) the middle quantity
    ``(1/n) int |grad f|^2 - int f^2`` is nonnegative and bounded above by
    ``1/(2(n+1)) * ((1/n) int (lap f)^2 - int |grad f|^2)``.  The mean is
    removed internally.  A numerically negative middle beyond tolerance
    means the differential operators themselves are broken.
    """
    if n == 2:
        if not isinstance(f, SphereScalarField):
            raise ValidationError("dimension 2 requires a SphereScalarField")
        u = SphereScalarField(f.grid, f.values - f.mean())
        ops = sphere_operators(u)
        int_u2 = sphere_integral(SphereScalarField(f.grid, u.values**2))
        int_grad2 = f.grid.quadrature(ops.grad_sq)
        int_lap2 = f.grid.quadrature(ops.laplacian**2)
        resolution = {"n_theta": f.grid.n_theta, "n_phi": f.grid.n_phi}
    elif n == 1:
        if not isinstance(f, PeriodicSamples):
            raise ValidationError("dimension 1 requires PeriodicSamples")
        vals = f.values - np.mean(f.values)
        u = PeriodicSamples(vals)
        du = spectral_derivative(vals, 1)
        ddu = spectral_derivative(vals, 2)
        int_u2 = periodic_integral(PeriodicSamples(vals**2))
        int_grad2 = periodic_integral(PeriodicSamples(du**2))
        int_lap2 = periodic_integral(PeriodicSamples(ddu**2))
        resolution = {"n": f.n}
    else:
        raise ValidationError(f"dimension must be 1 or 2, got {n}")

    middle = int_grad2 / n - int_u2
    upper = (int_lap2 / n - int_grad2) / (2.0 * (n + 1))
    scale = max(int_u2, int_grad2, 1.0)
    if middle < -tol * scale:
        raise CertificationError(
            f"spectral gap lower bound violated: middle = {middle:.3e}")
    return make_report(
        "poincare_gap", lhs=middle, rhs=upper,
        functionals={"int_f2": int_u2, "int_grad2": int_grad2,
                     "int_lap2": int_lap2, "middle": middle, "upper": upper},
        tol=tol, resolution=resolution,
        passed=(middle >= -tol * scale) and (upper - middle >= -tol * scale),
    )
