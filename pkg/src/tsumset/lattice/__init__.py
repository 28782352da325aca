"""Representation counts and structure of t-sumsets of finite sets in Z^d."""

from .geometry import Hull, extremal_points, in_hull
from .span import LatticeBasis, lattice_span
from .zd import (
    CountGrid,
    DirectionStats,
    LatticePointSet,
    ZdStructure,
    admissible_simplices,
    caratheodory_cover_check,
    delta_Delta,
    empirical_structure_index,
    hull_size_poly_check,
    parse_point_literal,
    parse_points,
    rho_h_d,
    rho_total_d,
    stabilization_cap,
    structured_rhs_d,
    t_sumset_d,
    zd_bound_formula,
)

__all__ = [
    "CountGrid",
    "DirectionStats",
    "Hull",
    "LatticeBasis",
    "LatticePointSet",
    "ZdStructure",
    "admissible_simplices",
    "caratheodory_cover_check",
    "delta_Delta",
    "empirical_structure_index",
    "extremal_points",
    "hull_size_poly_check",
    "in_hull",
    "lattice_span",
    "parse_point_literal",
    "parse_points",
    "rho_h_d",
    "rho_total_d",
    "stabilization_cap",
    "structured_rhs_d",
    "t_sumset_d",
    "zd_bound_formula",
]
