"""Exact computation of Alexander polynomials for plane curve
configurations with deep singularities, via adjunction ideals and
two-stage toric resolutions."""

from .exactpoly import (
    AdjalexError,
    BiPoly,
    Frac,
    InconsistencyError,
    ParseError,
    TruncationError,
    TruncBiPoly,
    TruncSeries,
    poly_parse,
    poly_str,
)

__all__ = [
    "AdjalexError",
    "BiPoly",
    "Frac",
    "InconsistencyError",
    "ParseError",
    "TruncationError",
    "TruncBiPoly",
    "TruncSeries",
    "poly_parse",
    "poly_str",
]

__version__ = "0.1.0"
