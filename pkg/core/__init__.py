"""
Core 模組
"""

from .errors import ConvergenceError, GlsError, HypothesisError, ValidationError
from .system import (
    AffineDigitData,
    Digit,
    DigitTriple,
    DominationCheck,
    GlsFamily,
    GlsSystem,
    affine_data,
    apply_f,
    apply_h,
    check_domination,
    compose_w_interval,
    compose_x_interval,
    digit_set,
    has_distinct_maps,
    new_family,
    new_gls_system,
    to_fraction,
)
from .presets import base_system, mixed_base_family, signed_base_family
from .loader import family_from_dict, family_to_dict, load_family, parse_family

__all__ = [
    "AffineDigitData",
    "ConvergenceError",
    "Digit",
    "DigitTriple",
    "DominationCheck",
    "GlsError",
    "GlsFamily",
    "GlsSystem",
    "HypothesisError",
    "ValidationError",
    "affine_data",
    "apply_f",
    "apply_h",
    "base_system",
    "check_domination",
    "compose_w_interval",
    "compose_x_interval",
    "digit_set",
    "family_from_dict",
    "family_to_dict",
    "has_distinct_maps",
    "load_family",
    "mixed_base_family",
    "new_family",
    "new_gls_system",
    "parse_family",
    "signed_base_family",
    "to_fraction",
]
