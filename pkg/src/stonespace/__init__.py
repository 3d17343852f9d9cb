"""Invariants and homeomorphism decisions for omega-Stone spaces."""

from .errors import ParseError, StoneSpaceError
from .ordinal import Ordinal, add, cb_rank, classify_limit, compare, left_subtract, parse_ordinal
from .ordspace import ScatteredType, canonical_g, classify, monoid_add, type_of
from .posys import ExtendedPOSystem, POSystem, invariants as po_invariants
from .spacecalc import homeo_decide, invariants, parse_expr

__version__ = "0.1.0"

__all__ = [
    "ParseError",
    "StoneSpaceError",
    "Ordinal",
    "add",
    "cb_rank",
    "classify_limit",
    "compare",
    "left_subtract",
    "parse_ordinal",
    "ScatteredType",
    "canonical_g",
    "classify",
    "monoid_add",
    "type_of",
    "ExtendedPOSystem",
    "POSystem",
    "po_invariants",
    "homeo_decide",
    "invariants",
    "parse_expr",
]
