"""Modular-symbols computation of the Eisenstein-local cuspidal Hecke data."""

from .eisenstein import (
    ConsistencyError,
    EisensteinReport,
    MismatchError,
    NoGoodPrime,
    PrecisionExhausted,
    SlopeComponent,
    component_slopes,
    default_precision,
    eisenstein_local_factor,
    generator_check,
    rank_consistency_check,
    smallest_good_prime,
)
from .manin import (
    HeckeMatrix,
    ManinSpace,
    build_manin_space,
    genus_x0,
    hecke_matrix,
    heilbronn_matrices,
)

__all__ = [
    "ConsistencyError",
    "EisensteinReport",
    "HeckeMatrix",
    "ManinSpace",
    "MismatchError",
    "NoGoodPrime",
    "PrecisionExhausted",
    "SlopeComponent",
    "build_manin_space",
    "component_slopes",
    "default_precision",
    "eisenstein_local_factor",
    "generator_check",
    "genus_x0",
    "hecke_matrix",
    "heilbronn_matrices",
    "rank_consistency_check",
    "smallest_good_prime",
]
