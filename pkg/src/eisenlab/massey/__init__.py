"""Formal Massey-product calculus over finite groups and Z/p^s modules."""

from .cochains import (
    Cochain,
    CoeffModule,
    all_cocycles,
    coboundary,
    cup,
    is_cocycle,
    random_cocycle,
    vanishes_in_h2,
)
from .groups import FiniteGroup, cyclic, dihedral, direct_product, symmetric
from .products import (
    DefiningSystem,
    InvalidDefiningSystem,
    coordinate_relation,
    deformation_tables,
    is_deformation_homomorphism,
    massey_power,
    massey_power_vanishes,
    massey_power_vanishes_somewhere,
    massey_product_cocycle,
    power_defining_systems,
    shifted_system,
    unipotent_concatenation,
    unipotent_pair,
)

__all__ = [
    "Cochain",
    "CoeffModule",
    "DefiningSystem",
    "FiniteGroup",
    "InvalidDefiningSystem",
    "all_cocycles",
    "coboundary",
    "coordinate_relation",
    "cup",
    "cyclic",
    "deformation_tables",
    "dihedral",
    "direct_product",
    "is_cocycle",
    "is_deformation_homomorphism",
    "massey_power",
    "massey_power_vanishes",
    "massey_power_vanishes_somewhere",
    "massey_product_cocycle",
    "power_defining_systems",
    "random_cocycle",
    "shifted_system",
    "symmetric",
    "unipotent_concatenation",
    "unipotent_pair",
    "vanishes_in_h2",
]
