import numpy as np
import pytest
from scipy.special import iv

from isogauge.errors import ValidationError
from isogauge.fourier import (FourierCoefficients, PeriodicSamples,
                              periodic_derivative, periodic_integral)

N = 64
THETA = 2.0 * np.pi * np.arange(N) / N


def test_cosine_second_derivative_is_eigenfunction():
    f = PeriodicSamples(np.cos(THETA))
    d2 = periodic_derivative(f, 2)
    assert np.max(np.abs(d2.values + np.cos(THETA))) < 1e-12


def test_constant_first_derivative_vanishes():
    f = PeriodicSamples(np.full(N, 3.0))
    assert np.max(np.abs(periodic_derivative(f, 1).values)) < 1e-14


def test_derivative_matches_closed_form():
    f = PeriodicSamples(np.cos(2 * THETA) + 0.5 * np.sin(3 * THETA))
    expected = -2.0 * np.sin(2 * THETA) + 1.5 * np.cos(3 * THETA)
    assert np.max(np.abs(periodic_derivative(f, 1).values - expected)) < 1e-12


def test_third_derivative_closed_form():
    f = PeriodicSamples(np.sin(2 * THETA))
    expected = -8.0 * np.cos(2 * THETA)
    assert np.max(np.abs(periodic_derivative(f, 3).values - expected)) < 1e-10


def test_derivative_rejects_bad_order():
    f = PeriodicSamples(np.cos(THETA))
    with pytest.raises(ValidationError):
        periodic_derivative(f, 4)


def test_odd_sample_count_rejected():
    with pytest.raises(ValidationError):
        PeriodicSamples(np.ones(9))


def test_non_finite_rejected():
    vals = np.ones(N)
    vals[3] = np.nan
    with pytest.raises(ValidationError):
        PeriodicSamples(vals)


def test_integral_of_one():
    assert periodic_integral(PeriodicSamples(np.ones(N))) == pytest.approx(2 * np.pi, abs=1e-14)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_integral_of_pure_modes_vanishes(k):
    assert abs(periodic_integral(PeriodicSamples(np.cos(k * THETA)))) < 1e-13


def test_integral_of_fourier_product():
    f = PeriodicSamples((1 + 0.1 * np.cos(2 * THETA)) * (1 - 0.3 * np.cos(2 * THETA)))
    assert periodic_integral(f) == pytest.approx(1.97 * np.pi, abs=1e-13)


def test_analyze_synthesize_round_trip():
    f = PeriodicSamples(np.exp(0.3 * np.cos(THETA)))
    coeffs = FourierCoefficients.from_samples(f)
    back = coeffs.to_samples(N)
    assert np.max(np.abs(back.values - f.values)) < 1e-12 * np.max(np.abs(f.values))


def test_coefficients_beyond_band_are_zero():
    f = PeriodicSamples(1.0 + 0.2 * np.cos(3 * THETA))
    coeffs = FourierCoefficients.from_samples(f)
    assert coeffs.effective_degree() == 3
    assert np.max(np.abs(coeffs.cos[3:])) < 1e-14
    assert np.max(np.abs(coeffs.sin[3:])) < 1e-14


def test_band_limit_enforced_on_synthesis():
    coeffs = FourierCoefficients(1.0, np.zeros(10), np.r_[np.zeros(9), 1.0])
    with pytest.raises(ValidationError):
        coeffs.to_samples(16)


def test_pointwise_evaluation_matches_nodes():
    f = PeriodicSamples(np.cos(2 * THETA) - 0.4 * np.sin(THETA))
    coeffs = FourierCoefficients.from_samples(f)
    assert np.max(np.abs(coeffs(THETA) - f.values)) < 1e-13


def test_derivative_of_coefficients():
    coeffs = FourierCoefficients(0.5, [0.0, 0.3], [0.2, 0.0])
    d = coeffs.derivative()
    t = np.linspace(0, 2 * np.pi, 17)
    expected = -0.6 * np.sin(2 * t) + 0.2 * np.cos(t)
    assert np.max(np.abs(d(t) - expected)) < 1e-14


def test_spectral_convergence_doubling_law():
    # analytic family exp(sin t): error(2n) <= error(n)^2 + 1e-13
    def deriv_error(n):
        t = 2 * np.pi * np.arange(n) / n
        f = PeriodicSamples(np.exp(np.sin(t)))
        exact = np.cos(t) * np.exp(np.sin(t))
        return np.max(np.abs(periodic_derivative(f, 1).values - exact))

    def quad_error(n):
        t = 2 * np.pi * np.arange(n) / n
        return abs(periodic_integral(PeriodicSamples(np.exp(np.sin(t))))
                   - 2 * np.pi * iv(0, 1.0))

    for err in (deriv_error, quad_error):
        for n in (8, 16):
            assert err(2 * n) <= err(n) ** 2 + 1e-13
