"""Curlicues generated by degree-one circle maps: orbits, curves, diagnostics."""

from .circle_maps import (
    ArnoldLift,
    CircleLift,
    ConjugatedRotation,
    OrbitLift,
    Rotation,
    example_pl,
    example_quadratic,
    iterate_orbit,
    parse_map,
)
from .core import Curlicue, birkhoff_stats, build_curlicue, weyl_curve
from .curvature import radius_series
from .diagnostics import (
    classify_periodic_case,
    denjoy_koksma_check,
    growth_exponent_fit,
    reconstruct_section,
)
from .errors import ConfigError, CurlicueError, PreconditionError
from .rotation import cf_expand, classify_arithmetic_type, estimate_rotation_number

__version__ = "0.1.0"

__all__ = [
    "ArnoldLift", "CircleLift", "ConjugatedRotation", "OrbitLift", "Rotation",
    "example_pl", "example_quadratic", "iterate_orbit", "parse_map",
    "Curlicue", "birkhoff_stats", "build_curlicue", "weyl_curve",
    "radius_series",
    "classify_periodic_case", "denjoy_koksma_check", "growth_exponent_fit", "reconstruct_section",
    "ConfigError", "CurlicueError", "PreconditionError",
    "cf_expand", "classify_arithmetic_type", "estimate_rotation_number",
]
