"""Geometric probability laboratory.

Closed-form integral-geometry constants with exact rational-times-pi-power
arithmetic, quadrature verification of the line-measure identities, and
seeded Monte Carlo estimators for the classical convex-position and random-
secant expectations, each cross-checked against an independent oracle.
"""

from .crofton import MomentResult, Polyline, chord_moment, crofton_length, distance_moment, eta_count
from .exact import (
    DensityLaw,
    PiRational,
    PiSum,
    half_ball_integral,
    half_integer_binomial,
    half_integer_factorial,
    kingman_v,
    max_radius_density,
    reference_constants,
    secant_offset_density,
    sylvester_probability,
    unit_ball_volume,
)
from .geom import (
    ConvexBody2,
    DegenerateGeometryError,
    GeometryError,
    HyperplaneCoords4,
    LineCoords2,
    PlaneCoords3,
    chord_length,
    convex_position_4,
    convex_position_5_3d,
    flat_from_points,
    line_from_points,
    point_in_tetra,
    point_in_triangle,
    segment_area,
    tetra_volume,
    triangle_area,
)
from .mc import (
    estimate_boundary_triangle,
    estimate_center_triangle,
    estimate_mean_distance,
    estimate_offcut,
    estimate_simplex_volume,
    estimate_sylvester,
    max_radius_gof,
    sample_uniform_ball,
    secant_offset_histogram,
)
from .rng import RngStream
from .stats import Estimate, HistogramGof

__version__ = "0.1.0"

__all__ = [
    "ConvexBody2",
    "DegenerateGeometryError",
    "DensityLaw",
    "Estimate",
    "GeometryError",
    "HistogramGof",
    "HyperplaneCoords4",
    "LineCoords2",
    "MomentResult",
    "PiRational",
    "PiSum",
    "PlaneCoords3",
    "Polyline",
    "RngStream",
    "chord_length",
    "chord_moment",
    "convex_position_4",
    "convex_position_5_3d",
    "crofton_length",
    "distance_moment",
    "estimate_boundary_triangle",
    "estimate_center_triangle",
    "estimate_mean_distance",
    "estimate_offcut",
    "estimate_simplex_volume",
    "estimate_sylvester",
    "eta_count",
    "flat_from_points",
    "half_ball_integral",
    "half_integer_binomial",
    "half_integer_factorial",
    "kingman_v",
    "line_from_points",
    "max_radius_density",
    "max_radius_gof",
    "point_in_tetra",
    "point_in_triangle",
    "reference_constants",
    "sample_uniform_ball",
    "secant_offset_density",
    "secant_offset_histogram",
    "segment_area",
    "sylvester_probability",
    "tetra_volume",
    "triangle_area",
    "unit_ball_volume",
]
