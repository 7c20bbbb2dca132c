"""Derivative-free search for extremal reverse-isoperimetric ratios.

The objective is the deficit-to-bound ratio of the planar reverse
inequality, in either normalization:

* ``euclidean``:   ``(L^2 - 4 pi A) / (pi |A(e)|)``, supremum 1, attained
  exactly on support functions with no mode above 2;
* ``anisotropic``: ``(L^2 - 4 A A_I) / (4 A_I |A(e)|)``, bounded by 1,
  sharp constant unknown -- the search reports empirical suprema per
  norm and makes no conjecture.

Search is Nelder-Mead simplex reflection with random restarts inside a
coefficient box; the objective is non-smooth at validity boundaries and
near the equality family, where gradients are useless.  Points that fail
profile validation are assigned ``-inf`` (rejected).  Everything is
deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import ValidationError
from .fourier import FourierCoefficients, PeriodicSamples, TWO_PI
from .plane import NormProfile, SupportProfile

REJECTED = -math.inf
# |A(evolute)| below this (relative) is the equality family: objective 0
DENOMINATOR_FLOOR = 1e-10
DEFAULT_RESOLUTION = 256


def default_bounds(degrees) -> np.ndarray:
    """Per-coefficient box half-widths ``0.5 / k^2`` for the given modes."""
    return np.array([0.5 / k**2 for k in degrees for _ in (0, 1)])


@dataclass(frozen=True)
class SearchSpace:
    """Fourier-coefficient box over curves (and optionally norms).

    The curve vector holds ``(a_k, b_k)`` for modes ``2..p_degree`` with
    ``a_0 = 1`` fixed (the ratio is scale-invariant) and degree-1 modes
    frozen at zero (translations are a flat null direction).  When
    ``h_degree >= 2`` the even modes ``2..h_degree`` of the norm are
    appended; otherwise the norm is ``fixed_norm`` (default Euclidean).
    """

    p_degree: int = 4
    h_degree: int = 0
    normalization: str = "euclidean"
    fixed_norm: FourierCoefficients | None = None
    bounds_scale: float = 1.0
    resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self):
        if self.normalization not in ("euclidean", "anisotropic"):
            raise ValidationError(f"unknown normalization {self.normalization!r}")
        if self.normalization == "euclidean" and (self.h_degree or self.fixed_norm):
            raise ValidationError("euclidean normalization fixes the norm to 1")
        if self.p_degree < 2 and self.h_degree < 2:
            pass  # zero-dimensional space is allowed (trivial {p = 1})
        if self.h_degree % 2:
            raise ValidationError("norm degree must be even (central symmetry)")

    @property
    def p_modes(self):
        return list(range(2, self.p_degree + 1))

    @property
    def h_modes(self):
        return list(range(2, self.h_degree + 1, 2))

    @property
    def dimension(self) -> int:
        return 2 * (len(self.p_modes) + len(self.h_modes))

    @property
    def bounds(self) -> np.ndarray:
        return self.bounds_scale * default_bounds(self.p_modes + self.h_modes)

    def decode(self, vector: np.ndarray):
        """Vector -> (curve coefficients, norm coefficients)."""
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (self.dimension,):
            raise ValidationError(
                f"point has dimension {vector.shape}, expected {self.dimension}")
        kp = self.p_modes
        p_cos = np.zeros(max(kp, default=1))
        p_sin = np.zeros_like(p_cos)
        for i, k in enumerate(kp):
            p_cos[k - 1], p_sin[k - 1] = vector[2 * i], vector[2 * i + 1]
        p = FourierCoefficients(1.0, p_cos, p_sin)

        if self.normalization == "euclidean":
            return p, None
        base = self.fixed_norm or FourierCoefficients(1.0, [0.0], [0.0])
        kh = self.h_modes
        nmodes = max([base.band] + kh)
        h_cos = np.zeros(nmodes)
        h_sin = np.zeros(nmodes)
        h_cos[: base.band] += base.cos
        h_sin[: base.band] += base.sin
        off = 2 * len(kp)
        for i, k in enumerate(kh):
            h_cos[k - 1] += vector[off + 2 * i]
            h_sin[k - 1] += vector[off + 2 * i + 1]
        return p, FourierCoefficients(base.a0, h_cos, h_sin)


def sharpness_objective(space: SearchSpace, vector, n: int | None = None) -> float:
    """Deficit-to-bound ratio at one point of the space.

    Invalid profiles get the rejection value ``-inf``; points whose
    evolute area vanishes (the equality family) get 0, since the
    numerator vanishes there as well.
    """
    n = n or space.resolution
    p_co, h_co = space.decode(vector)
    try:
        p = SupportProfile.from_coefficients(p_co, n)
        h = NormProfile.from_coefficients(h_co, n) if h_co is not None \
            else NormProfile.euclidean(n)
    except ValidationError:
        return REJECTED

    dt = TWO_PI / n
    radius_p = p.radius
    if space.normalization == "euclidean":
        length = float(np.sum(p.p.values)) * dt
        area = 0.5 * float(np.sum(p.p.values * radius_p)) * dt
        ddp = radius_p - p.p.values
        area_ev = -0.5 * float(np.sum(ddp * radius_p)) * dt
        numerator = length**2 - 4.0 * np.pi * area
        denominator = np.pi * abs(area_ev)
        floor = DENOMINATOR_FLOOR * max(1.0, abs(area))
    else:
        length = float(np.sum(h.h.values * radius_p)) * dt
        area = 0.5 * float(np.sum(p.p.values * radius_p)) * dt
        area_iso = 0.5 * float(np.sum(h.h.values * h.radius)) * dt
        # evolute area via the quadrature form of the normal-graph identity
        inv_kappa = radius_p / h.radius
        area_ev = area - 0.5 * float(np.sum(inv_kappa * h.h.values * radius_p)) * dt
        numerator = length**2 - 4.0 * area * area_iso
        denominator = 4.0 * area_iso * abs(area_ev)
        floor = DENOMINATOR_FLOOR * max(1.0, abs(area))
    if abs(area_ev) < floor:
        return 0.0
    return numerator / denominator


@dataclass(frozen=True)
class SearchResult:
    """Best point found, with its audit trail."""

    point: np.ndarray
    objective: float
    evaluations: int
    trace: np.ndarray            # columns: evaluation index, incumbent value
    certified_objective: float   # incumbent re-evaluated at 2x resolution
    resolution: int
    certified_resolution: int
    feasible: bool
    message: str = ""


def maximize(space: SearchSpace, budget: int, seed: int = 0,
             restart_evals: int = 400) -> SearchResult:
    """Budgeted Nelder-Mead with random restarts; deterministic per seed.

    The incumbent trace is monotone by construction.  The returned
    incumbent is re-certified at doubled quadrature resolution.
    """
    if budget < 50:
        raise ValidationError(f"budget must be at least 50, got {budget}")
    rng = np.random.default_rng(seed)
    state = {"count": 0, "best": REJECTED, "best_x": None}
    trace = []

    def record(value, x):
        state["count"] += 1
        if value > state["best"]:
            state["best"] = value
            state["best_x"] = np.array(x, dtype=float)
        trace.append((state["count"], state["best"]))

    def neg_objective(x):
        value = sharpness_objective(space, x)
        record(value, x)
        return 1e6 if value == REJECTED else -value

    if space.dimension == 0:
        value = sharpness_objective(space, np.zeros(0))
        record(value, np.zeros(0))
    else:
        bounds = space.bounds
        while state["count"] < budget:
            left = budget - state["count"]
            start = None
            for _ in range(min(left, 50)):
                candidate = rng.uniform(-bounds, bounds)
                if sharpness_objective(space, candidate) != REJECTED:
                    start = candidate
                    break
                state["count"] += 1
                trace.append((state["count"], state["best"]))
            if start is None:
                break
            left = budget - state["count"]
            if left <= 2 * space.dimension:
                break
            minimize(neg_objective, start, method="Nelder-Mead",
                     options={"maxfev": min(left, restart_evals),
                              "xatol": 1e-10, "fatol": 1e-12,
                              "adaptive": space.dimension > 4})

    if state["best_x"] is None:
        return SearchResult(
            point=np.zeros(space.dimension), objective=REJECTED,
            evaluations=state["count"],
            trace=np.array(trace if trace else [(0, REJECTED)], dtype=float),
            certified_objective=REJECTED, resolution=space.resolution,
            certified_resolution=2 * space.resolution, feasible=False,
            message="infeasible: every sampled point failed validation")

    certified = sharpness_objective(space, state["best_x"], n=2 * space.resolution)
    return SearchResult(
        point=state["best_x"], objective=state["best"],
        evaluations=state["count"], trace=np.array(trace, dtype=float),
        certified_objective=certified, resolution=space.resolution,
        certified_resolution=2 * space.resolution, feasible=True)
