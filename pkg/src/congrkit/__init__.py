"""Congruence lattices of finite algebras and residuated lattices."""
from .partition import Congruence, UnionFind
from .lattice import FiniteLattice
from .algebra import (FiniteAlgebra, CongruenceLattice, cg, con, con_bruteforce, make_algebra,
                      parse_algebra, format_algebra, product, quotient)
from .cblp import (algebra_has_cblp, cblp_equivalents, has_cblp, satisfies_star,
                   semilocal_decompose, spectra)
from .reslat import ResiduatedLattice, validate_residuated

__all__ = [
    "Congruence", "UnionFind", "FiniteLattice", "FiniteAlgebra", "CongruenceLattice", "cg", "con",
    "con_bruteforce", "make_algebra", "parse_algebra", "format_algebra", "product", "quotient",
    "algebra_has_cblp", "cblp_equivalents", "has_cblp", "satisfies_star", "semilocal_decompose",
    "spectra", "ResiduatedLattice", "validate_residuated",
]
__version__ = "0.1.0"
