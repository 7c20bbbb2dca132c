"""Numerical certification of reverse isoperimetric inequalities.

Spectral calculus on the circle and sphere, convex-curve geometry in
normed planes, convex surfaces in R^3 via support functions, strictly
convex curves on the sphere, and a derivative-free search for extremal
deficit-to-bound ratios.  Every value is immutable after construction
and every operation is a pure function.
"""

from .errors import CertificationError, ValidationError
from .fourier import (FourierCoefficients, PeriodicSamples,
                      periodic_derivative, periodic_integral)
from .sphere import (SphereGrid, SphereScalarField, harmonic_coefficient,
                     poincare_gap_check, real_sph_harm, sphere_integral,
                     sphere_operators)
from .plane import (NormProfile, PlanarFront, PlaneReport, SupportProfile,
                    curve_from_support, hurwitz_report, isoperimetrix,
                    minkowski_curvature, minkowski_evolute, minkowski_length,
                    normal_graph_area, reverse_iso_report, signed_area,
                    support_function_of_front, total_curvature_identity)
from .surface import (FocalData, SupportField, SurfaceGeometry, SurfaceReport,
                      deficit_identity_check, focal_maps, focal_volume_identity,
                      normal_graph_volume_series, oriented_volume,
                      principal_radii, reverse_minkowski_report,
                      surface_from_support)
from .spherecurve import (CurveFrame, SphereCurveReport, SphericalCurve,
                          frame_and_curvature, gnomonic_lift, length_area,
                          remainder_functional, reverse_iso_identity_report,
                          spherical_evolute)
from .search import SearchResult, SearchSpace, maximize, sharpness_objective
from .reports import InequalityReport

__version__ = "0.1.0"

__all__ = [
    "CertificationError", "ValidationError",
    "FourierCoefficients", "PeriodicSamples",
    "periodic_derivative", "periodic_integral",
    "SphereGrid", "SphereScalarField", "harmonic_coefficient",
    "poincare_gap_check", "real_sph_harm", "sphere_integral", "sphere_operators",
    "NormProfile", "PlanarFront", "PlaneReport", "SupportProfile",
    "curve_from_support", "hurwitz_report", "isoperimetrix",
    "minkowski_curvature", "minkowski_evolute", "minkowski_length",
    "normal_graph_area", "reverse_iso_report", "signed_area",
    "support_function_of_front", "total_curvature_identity",
    "FocalData", "SupportField", "SurfaceGeometry", "SurfaceReport",
    "deficit_identity_check", "focal_maps", "focal_volume_identity",
    "normal_graph_volume_series", "oriented_volume", "principal_radii",
    "reverse_minkowski_report", "surface_from_support",
    "CurveFrame", "SphereCurveReport", "SphericalCurve",
    "frame_and_curvature", "gnomonic_lift", "length_area",
    "remainder_functional", "reverse_iso_identity_report", "spherical_evolute",
    "SearchResult", "SearchSpace", "maximize", "sharpness_objective",
    "InequalityReport",
]
