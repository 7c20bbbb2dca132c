"""Spectral calculus for smooth 2*pi-periodic functions on a uniform grid.

A function is held either as samples at the nodes ``theta_j = 2*pi*j/n``
(``PeriodicSamples``) or as real cosine/sine amplitudes
(``FourierCoefficients``).  Differentiation acts on the trigonometric
interpolant and is exact for band-limited data within band ``n/2 - 1``;
integration is the trapezoid rule, which on this grid is spectrally
accurate for smooth periodic integrands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

TWO_PI = 2.0 * np.pi

MIN_NODES = 8


def _as_valid_samples(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"expected a 1-d sample array, got shape {arr.shape}")
    n = arr.size
    if n < MIN_NODES or n % 2 != 0:
        raise ValidationError(f"need an even number of nodes >= {MIN_NODES}, got {n}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("samples contain non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PeriodicSamples:
    """Samples of a smooth 2*pi-periodic function at uniform nodes."""

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_valid_samples(self.values))

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def nodes(self) -> np.ndarray:
        return TWO_PI * np.arange(self.n) / self.n

    @classmethod
    def from_function(cls, fn, n: int) -> "PeriodicSamples":
        theta = TWO_PI * np.arange(n) / n
        return cls(fn(theta))

    def shifted_half_period(self) -> np.ndarray:
        """Values at ``theta_j + pi`` (node-exact for even n)."""
        return np.roll(self.values, -(self.n // 2))


def spectral_derivative(values: np.ndarray, order: int) -> np.ndarray:
    """Differentiate uniform periodic samples through the FFT.

    The Nyquist mode is dropped for odd orders (its derivative has no
    real representative on the grid) and kept for even orders.
    """
    n = values.size
    fh = np.fft.rfft(values)
    k = np.arange(n // 2 + 1, dtype=float)
    if order % 2 == 0:
        fh *= (-1.0) ** (order // 2) * k**order
    else:
        fh *= (1j) ** order * k**order
        fh[-1] = 0.0
    return np.fft.irfft(fh, n=n)


def periodic_derivative(f: PeriodicSamples, order: int) -> PeriodicSamples:
    """Spectral derivative of the trigonometric interpolant of ``f``."""
    if order not in (1, 2, 3):
        raise ValidationError(f"derivative order must be 1, 2 or 3, got {order}")
    return PeriodicSamples(spectral_derivative(f.values, order))


def periodic_integral(f: PeriodicSamples) -> float:
    """Trapezoid value ``(2*pi/n) * sum(values)`` over one period."""
    return TWO_PI * float(np.sum(f.values)) / f.n


def periodic_mean(f: PeriodicSamples) -> float:
    return float(np.mean(f.values))


@dataclass(frozen=True)
class FourierCoefficients:
    """Real Fourier amplitudes ``a0 + sum(a_k cos k0 + b_k sin k0)``."""

    a0: float
    cos: np.ndarray
    sin: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.array(self.cos, dtype=float))
        b = np.atleast_1d(np.array(self.sin, dtype=float))
        if a.shape != b.shape or a.ndim != 1:
            raise ValidationError("cos/sin amplitude lists must be 1-d and equal length")
        if not (np.isfinite(self.a0) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValidationError("non-finite Fourier amplitude")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos", a)
        object.__setattr__(self, "sin", b)

    @property
    def band(self) -> int:
        return self.cos.size

    def effective_degree(self, tol: float = 1e-13) -> int:
        """Highest mode whose amplitude exceeds ``tol`` times the largest."""
        amps = np.hypot(self.cos, self.sin)
        scale = max(abs(self.a0), amps.max(initial=0.0), 1e-300)
        big = np.nonzero(amps > tol * scale)[0]
        return int(big[-1] + 1) if big.size else 0

    @classmethod
    def from_samples(cls, f: PeriodicSamples) -> "FourierCoefficients":
        """Analyze samples; the band is truncated at ``n/2 - 1``."""
        n = f.n
        fh = np.fft.rfft(f.values)
        a0 = fh[0].real / n
        a = 2.0 * fh[1 : n // 2].real / n
        b = -2.0 * fh[1 : n // 2].imag / n
        return cls(a0, a, b)

    def to_samples(self, n: int) -> PeriodicSamples:
        """Synthesize on ``n`` uniform nodes; requires band <= n/2 - 1."""
        deg = self.effective_degree()
        if deg > n // 2 - 1:
            raise ValidationError(
                f"band {deg} does not fit on {n} nodes (limit {n // 2 - 1})")
        fh = np.zeros(n // 2 + 1, dtype=complex)
        fh[0] = self.a0 * n
        k = min(self.band, n // 2 - 1)
        fh[1 : k + 1] = 0.5 * n * (self.cos[:k] - 1j * self.sin[:k])
        return PeriodicSamples(np.fft.irfft(fh, n=n))

    def derivative(self) -> "FourierCoefficients":
        k = np.arange(1, self.band + 1, dtype=float)
        return FourierCoefficients(0.0, k * self.sin, -k * self.cos)

    def __call__(self, theta) -> np.ndarray:
        """Evaluate the trigonometric polynomial at arbitrary angles."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        k = np.arange(1, self.band + 1, dtype=float)
        kt = np.outer(th, k)
        out = self.a0 + np.cos(kt) @ self.cos + np.sin(kt) @ self.sin
        return out if np.ndim(theta) else float(out[0])

    def mode_energy(self) -> np.ndarray:
        """Per-mode energy ``pi * (a_k^2 + b_k^2)`` for k >= 1."""
        return np.pi * (self.cos**2 + self.sin**2)
