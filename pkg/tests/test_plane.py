import numpy as np
import pytest

from isogauge.errors import ValidationError
from isogauge.families import random_norm_profile, random_periodic, random_plane_pair
from isogauge.fourier import FourierCoefficients, PeriodicSamples
from isogauge.plane import (NormProfile, PlanarFront, SupportProfile,
                            curve_from_support, hurwitz_report, isoperimetrix,
                            minkowski_curvature, minkowski_evolute,
                            minkowski_length, normal_graph_area,
                            reverse_iso_report, signed_area,
                            support_function_of_front, total_curvature_identity)

N = 512
THETA = 2.0 * np.pi * np.arange(N) / N
ONE = np.ones(N)


def support(values):
    return SupportProfile(PeriodicSamples(values))


def norm(values):
    return NormProfile(PeriodicSamples(values))


def fd_derivative(fn, t, order, step=0.02):
    """Sixth-order central finite differences on a scalar callable."""
    offsets = np.array([-3, -2, -1, 1, 2, 3])
    grid = (t[:, None] + step * offsets[None, :]).ravel()
    vals = np.asarray(fn(grid)).reshape(t.size, offsets.size)
    if order == 1:
        w = np.array([-1.0, 9.0, -45.0, 45.0, -9.0, 1.0]) / 60.0
        return vals @ w / step
    w = np.array([2.0, -27.0, 270.0, 270.0, -27.0, 2.0]) / 180.0
    return (vals @ w - (490.0 / 180.0) * np.asarray(fn(t))) / step**2


# --- profile validation -------------------------------------------------

def test_nonconvex_support_rejected():
    with pytest.raises(ValidationError):
        support(1.0 + 0.5 * np.cos(2 * THETA))


def test_norm_must_be_positive():
    with pytest.raises(ValidationError):
        norm(0.4 + 0.5 * np.cos(2 * THETA) + 0.2 * np.cos(4 * THETA))


def test_norm_must_be_symmetric():
    with pytest.raises(ValidationError):
        norm(1.0 + 0.1 * np.cos(3 * THETA))


# --- curve_from_support -------------------------------------------------

def test_circle_from_constant_support():
    front = curve_from_support(support(2.0 * ONE))
    assert np.max(np.abs(np.linalg.norm(front.points, axis=1) - 2.0)) < 1e-13
    assert signed_area(front) == pytest.approx(4 * np.pi, rel=1e-13)


def test_degree_one_mode_is_translation():
    front = curve_from_support(support(1.0 + 0.3 * np.cos(THETA)))
    center = front.points.mean(axis=0)
    assert np.allclose(center, [0.3, 0.0], atol=1e-12)
    assert np.max(np.abs(np.linalg.norm(front.points - center, axis=1) - 1.0)) < 1e-12


def test_curvature_against_finite_differences():
    p = support(1.0 + 0.1 * np.cos(2 * THETA))
    coeffs = FourierCoefficients.from_samples(p.p)
    d = coeffs.derivative()

    def gx(t):
        return coeffs(t) * np.cos(t) - d(t) * np.sin(t)

    def gy(t):
        return coeffs(t) * np.sin(t) + d(t) * np.cos(t)

    t = THETA[::8]
    xp = fd_derivative(gx, t, 1)
    yp = fd_derivative(gy, t, 1)
    xpp = fd_derivative(gx, t, 2)
    ypp = fd_derivative(gy, t, 2)
    k_fd = (xp * ypp - yp * xpp) / (xp**2 + yp**2) ** 1.5
    assert np.max(np.abs(k_fd - 1.0 / p.radius[::8])) < 1e-9


# --- length, curvature, isoperimetrix ------------------------------------

def test_minkowski_length_euclidean_circle():
    assert minkowski_length(support(2 * ONE), norm(ONE)) == pytest.approx(4 * np.pi, rel=1e-13)


def test_minkowski_length_oscillating_norm():
    val = minkowski_length(support(ONE), norm(1.0 + 0.2 * np.cos(2 * THETA)))
    assert val == pytest.approx(2 * np.pi, rel=1e-13)


def test_minkowski_length_oscillating_curve():
    val = minkowski_length(support(1.0 + 0.1 * np.cos(2 * THETA)), norm(ONE))
    assert val == pytest.approx(2 * np.pi, rel=1e-13)


def test_minkowski_curvature_values():
    kappa = minkowski_curvature(support(ONE), norm(1.0 + 0.2 * np.cos(2 * THETA)))
    assert np.max(np.abs(kappa.values - (1.0 - 0.6 * np.cos(2 * THETA)))) < 1e-11
    assert kappa.values[0] == pytest.approx(0.4, abs=1e-11)


def test_minkowski_curvature_euclidean_case():
    p = support(1.0 + 0.1 * np.cos(2 * THETA) + 0.03 * np.sin(3 * THETA))
    kappa = minkowski_curvature(p, norm(ONE))
    assert np.max(np.abs(kappa.values - 1.0 / p.radius)) < 1e-12


def test_isoperimetrix_euclidean_is_unit_circle():
    front = isoperimetrix(norm(ONE))
    assert np.max(np.abs(np.linalg.norm(front.points, axis=1) - 1.0)) < 1e-13
    assert signed_area(front) == pytest.approx(np.pi, rel=1e-13)


def test_isoperimetrix_area_closed_form():
    front = isoperimetrix(norm(1.0 + 0.2 * np.cos(2 * THETA)))
    assert signed_area(front) == pytest.approx(0.94 * np.pi, rel=1e-12)


def test_isoperimetrix_curvature_oracle():
    h = norm(1.0 + 0.2 * np.cos(2 * THETA))
    front = isoperimetrix(h)
    cx = FourierCoefficients.from_samples(PeriodicSamples(front.points[:, 0]))
    cy = FourierCoefficients.from_samples(PeriodicSamples(front.points[:, 1]))
    t = THETA[::8]
    xp, yp = fd_derivative(cx, t, 1), fd_derivative(cy, t, 1)
    xpp, ypp = fd_derivative(cx, t, 2), fd_derivative(cy, t, 2)
    k_fd = (xp * ypp - yp * xpp) / (xp**2 + yp**2) ** 1.5
    assert np.max(np.abs(k_fd - 1.0 / h.radius[::8])) < 1e-8


# --- signed area and fronts ----------------------------------------------

def test_point_map_has_zero_area():
    assert signed_area(PlanarFront(np.zeros((N, 2)) + [1.5, -0.3], immersed=False)) == 0.0


def test_evolute_of_circle_is_center():
    e = minkowski_evolute(support(3 * ONE), norm(ONE))
    assert not e.immersed
    assert np.max(np.abs(e.points)) < 1e-12
    assert abs(signed_area(e)) < 1e-12


def test_evolute_area_closed_form():
    e = minkowski_evolute(support(1.0 + 0.1 * np.cos(2 * THETA)), norm(ONE))
    assert signed_area(e) == pytest.approx(-0.06 * np.pi, rel=1e-12)


def test_evolute_area_nonpositive_on_random_pairs():
    rng = np.random.default_rng(101)
    for _ in range(100):
        p, h = random_plane_pair(rng, N)
        assert signed_area(minkowski_evolute(p, h)) <= 1e-10


# --- identities -----------------------------------------------------------

def test_total_curvature_trivial():
    rep = total_curvature_identity(support(ONE), norm(ONE))
    assert rep.lhs == pytest.approx(2 * np.pi, rel=1e-13)
    assert rep.rhs == pytest.approx(2 * np.pi, rel=1e-13)


def test_total_curvature_closed_form():
    rep = total_curvature_identity(support(ONE), norm(1.0 + 0.2 * np.cos(2 * THETA)))
    assert rep.lhs == pytest.approx(1.88 * np.pi, rel=1e-12)
    assert rep.passed


def test_total_curvature_random_pairs():
    rng = np.random.default_rng(55)
    for _ in range(100):
        p, h = random_plane_pair(rng, N)
        rep = total_curvature_identity(p, h, tol=1e-9)
        assert rep.passed, abs(rep.margin)


def test_normal_graph_trivial_and_evolute_cases():
    p, h = support(ONE), norm(1.0 + 0.2 * np.cos(2 * THETA))
    zero = normal_graph_area(p, h, PeriodicSamples(np.zeros(N)))
    assert zero.lhs == pytest.approx(zero.functionals["A_gamma"], abs=1e-12)
    inv_kappa = PeriodicSamples(p.radius / h.radius)
    ev = normal_graph_area(p, h, inv_kappa)
    assert ev.equality  # lower bound attained exactly by the evolute


def test_normal_graph_direct_vs_formula():
    p, h = support(ONE), norm(ONE)
    rep = normal_graph_area(p, h, PeriodicSamples(0.05 * np.sin(3 * THETA)))
    assert abs(rep.lhs - rep.rhs) < 1e-9 * max(abs(rep.lhs), 1.0)


def test_normal_graph_random_sweep():
    rng = np.random.default_rng(77)
    for _ in range(50):
        p, h = random_plane_pair(rng, N)
        phi = random_periodic(rng, N)
        rep = normal_graph_area(p, h, phi, tol=1e-9)
        assert rep.passed


# --- reverse isoperimetric reports ----------------------------------------

def test_reverse_iso_trivial_circle():
    rep = reverse_iso_report(support(ONE), norm(ONE))
    assert abs(rep.lhs) < 1e-12 and abs(rep.rhs) < 1e-12
    assert rep.ratio == pytest.approx(1.0, abs=1e-12)
    assert rep.equality


def test_reverse_iso_closed_form():
    rep = reverse_iso_report(support(1.0 + 0.1 * np.cos(2 * THETA)), norm(ONE))
    assert rep.lhs == pytest.approx(0.06 * np.pi**2, rel=1e-12)
    assert rep.rhs == pytest.approx(0.24 * np.pi**2, rel=1e-12)
    assert not rep.equality and rep.passed


def test_homothetic_to_isoperimetrix_gives_equality():
    h = norm(1.0 + 0.2 * np.cos(2 * THETA) - 0.02 * np.sin(4 * THETA))
    q = support_function_of_front(isoperimetrix(h), THETA)
    rep = reverse_iso_report(support(q), h)
    assert abs(rep.lhs) < 1e-8 * rep.L**2
    assert rep.ratio == pytest.approx(1.0, abs=1e-8)


def test_support_function_of_isoperimetrix_recovers_norm():
    h = norm(1.0 + 0.15 * np.cos(2 * THETA) + 0.01 * np.cos(4 * THETA))
    q = support_function_of_front(isoperimetrix(h), THETA)
    assert np.max(np.abs(q - h.h.values)) < 1e-8


def test_hurwitz_equality_family():
    rep = hurwitz_report(support(1.0 + 0.1 * np.cos(2 * THETA)))
    assert rep.lhs == pytest.approx(0.06 * np.pi**2, rel=1e-12)
    assert rep.rhs == pytest.approx(0.06 * np.pi**2, rel=1e-12)
    assert rep.equality
    assert rep.functionals["energy_modes_ge3"] < 1e-20


def test_hurwitz_strict_for_mode_three():
    rep = hurwitz_report(support(1.0 + 0.05 * np.cos(3 * THETA)))
    assert rep.lhs == pytest.approx(0.04 * np.pi**2, rel=1e-12)
    assert rep.rhs == pytest.approx(0.09 * np.pi**2, rel=1e-12)
    assert not rep.equality


def test_hurwitz_circle_degenerate():
    rep = hurwitz_report(support(2.5 * ONE))
    assert abs(rep.lhs) < 1e-10 and abs(rep.rhs) < 1e-10


def test_euclidean_consistency_between_reports():
    p = support(1.0 + 0.08 * np.cos(2 * THETA) + 0.02 * np.sin(3 * THETA))
    rev = reverse_iso_report(p, norm(ONE))
    hw = hurwitz_report(p)
    assert rev.rhs == pytest.approx(4.0 * hw.rhs, rel=1e-12)


# --- invariance properties -------------------------------------------------

def test_translation_invariance():
    rng = np.random.default_rng(11)
    p, h = random_plane_pair(rng, N)
    shifted = support(p.p.values + 0.2 * np.cos(THETA) - 0.1 * np.sin(THETA))
    a, b = reverse_iso_report(p, h), reverse_iso_report(shifted, h)
    for key in ("L", "A_gamma", "A_iso"):
        assert b.functionals[key] == pytest.approx(a.functionals[key], rel=1e-9)
    assert abs(b.A_evolute) == pytest.approx(abs(a.A_evolute), rel=1e-9, abs=1e-12)


def test_scaling_covariance():
    rng = np.random.default_rng(12)
    p, h = random_plane_pair(rng, N)
    lam = 1.7
    a, b = reverse_iso_report(p, h), reverse_iso_report(support(lam * p.p.values), h)
    assert b.L == pytest.approx(lam * a.L, rel=1e-12)
    assert b.A_gamma == pytest.approx(lam**2 * a.A_gamma, rel=1e-12)
    assert b.A_evolute == pytest.approx(lam**2 * a.A_evolute, rel=1e-11, abs=1e-13)
    assert b.ratio == pytest.approx(a.ratio, abs=1e-10)
