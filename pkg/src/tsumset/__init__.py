"""Exact representation counts, exceptional sets and structure of t-representable sumsets."""

from .core import (
    AffineRecord,
    DomainError,
    IntegerSet,
    InternalInconsistencyError,
    InvalidInputError,
    Limits,
    ResourceLimitError,
    TsumsetError,
    normalize,
    parse_set,
    reflect,
)
from .denumerant import RhoTable, Simplex, rho_batch, rho_h, rho_total
from .frobenius import ExceptionalSet, exceptional_set, frobenius_brackets, frobenius_t
from .structure import (
    BoundsReport,
    StructureReport,
    bound_mt1,
    bound_mt2,
    bound_yz,
    bounds,
    ht_exact,
    is_structured,
    structured_rhs,
    t_sumset,
)
from .threeset import ThreeSet

__version__ = "0.1.0"

__all__ = [
    "AffineRecord",
    "BoundsReport",
    "DomainError",
    "ExceptionalSet",
    "IntegerSet",
    "InternalInconsistencyError",
    "InvalidInputError",
    "Limits",
    "ResourceLimitError",
    "RhoTable",
    "Simplex",
    "StructureReport",
    "ThreeSet",
    "TsumsetError",
    "bound_mt1",
    "bound_mt2",
    "bound_yz",
    "bounds",
    "exceptional_set",
    "frobenius_brackets",
    "frobenius_t",
    "ht_exact",
    "is_structured",
    "normalize",
    "parse_set",
    "reflect",
    "rho_batch",
    "rho_h",
    "rho_total",
    "structured_rhs",
    "t_sumset",
]
