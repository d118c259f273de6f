"""Exact 2-adic dynamics of a*x + 1/x on the projective line over Q_2."""

from dyadicdyn._core import (
    ParseError,
    DomainError,
    PrecisionError,
    abs2,
    apply,
    classify,
    finite_levels,
    fixed_points,
    incidence_matrix,
    itinerary,
    julia_description,
    julia_verdict,
    orbit,
    same_extension,
    spherical_distance,
    sqrt,
    sqrt_exists,
    square_class,
    valuation,
    verify_routing,
    weak_repeller,
)

__all__ = [
    "ParseError",
    "DomainError",
    "PrecisionError",
    "abs2",
    "apply",
    "classify",
    "finite_levels",
    "fixed_points",
    "incidence_matrix",
    "itinerary",
    "julia_description",
    "julia_verdict",
    "orbit",
    "same_extension",
    "spherical_distance",
    "sqrt",
    "sqrt_exists",
    "square_class",
    "valuation",
    "verify_routing",
    "weak_repeller",
]
