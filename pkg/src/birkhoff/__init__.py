"""Exact Ehrhart polynomials and volumes of Birkhoff polytopes."""
from .assembly import (
    EhrhartResult,
    ValueSet,
    VolumeReport,
    assemble,
    ehrhart_polynomial,
    required_value_count,
    structural_checks,
    volume_from_polynomial,
)
from .ct import composition_rank, composition_unrank, ct_count, term_value
from .exact import Polynomial, binomial, canonicalize, interpolate
from .oracle import count_dp, count_naive, count_series

__version__ = "0.1.0"

__all__ = [
    "EhrhartResult",
    "Polynomial",
    "ValueSet",
    "VolumeReport",
    "assemble",
    "binomial",
    "canonicalize",
    "composition_rank",
    "composition_unrank",
    "count_dp",
    "count_naive",
    "count_series",
    "ct_count",
    "ehrhart_polynomial",
    "interpolate",
    "required_value_count",
    "structural_checks",
    "term_value",
    "volume_from_polynomial",
]
