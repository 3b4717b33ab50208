"""Instance translators and gadget builders for the hardness constructions."""

from .gadgets import (
    HullReduction,
    HullSetReduction,
    SatReduction,
    WrapResult,
    choose_parameters,
    h_interiors,
    hitting_to_isohull,
    qsat2_to_hullset,
    sat_to_isohull,
    triangle_gadget,
    triangle_size,
    validate_parameters,
    wrap_three_terminals,
)
from .setsystems import (
    CoordinateReduction,
    DominationReduction,
    build_Mk_instance,
    coordinate_reversal_solve,
    coordinate_to_hitting,
    dominating_to_closure,
    drop_constant_coordinates,
    hitting_to_coordinate,
    normalize_hitting_family,
)

__all__ = [
    "CoordinateReduction",
    "DominationReduction",
    "HullReduction",
    "HullSetReduction",
    "SatReduction",
    "WrapResult",
    "build_Mk_instance",
    "choose_parameters",
    "coordinate_reversal_solve",
    "coordinate_to_hitting",
    "dominating_to_closure",
    "drop_constant_coordinates",
    "h_interiors",
    "hitting_to_coordinate",
    "hitting_to_isohull",
    "normalize_hitting_family",
    "qsat2_to_hullset",
    "sat_to_isohull",
    "triangle_gadget",
    "triangle_size",
    "validate_parameters",
    "wrap_three_terminals",
]
