"""Exact obstruction classes for couplings of Lie algebras over the rationals."""

from .ce import TModule, betti, class_of, cohomology, ce_differential
from .coup import combine, make_element, uobs
from .lie import LieAlgebra, abelian, center, derivation_spaces, heisenberg, sl2, validate
from .obstruction import construct_extension, obstruction_class, validate_coupling, verify_independence

__all__ = [
    "LieAlgebra", "TModule", "abelian", "betti", "ce_differential", "center", "class_of", "cohomology",
    "combine", "construct_extension", "derivation_spaces", "heisenberg", "make_element",
    "obstruction_class", "sl2", "uobs", "validate", "validate_coupling", "verify_independence",
]

__version__ = "0.1.0"
