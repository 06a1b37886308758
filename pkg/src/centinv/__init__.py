"""Exact computations with centralisers of nilpotent matrices: bases,
symmetric invariants, coadjoint data and the enveloping algebra."""

from .combinatorics import Case, Partition, degree_sequence, involution, invariant_count
from .fields import QQ, Field, parse_field
from .centralizer import BasisIndex, Centraliser, ZetaEtaBasis, enumerate_basis
from .invariants import elementary_invariant, restrict

__all__ = [
    "Case", "Partition", "degree_sequence", "involution", "invariant_count",
    "QQ", "Field", "parse_field",
    "BasisIndex", "Centraliser", "ZetaEtaBasis", "enumerate_basis",
    "elementary_invariant", "restrict",
]
