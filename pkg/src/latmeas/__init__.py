"""Measures on finite bounded lattices.

The measurability n(X) of a finite lattice is the rank of its ring of
measures; it is computed here three independent ways (2-valued points,
Boolean Groebner bases over F2, exact nullspace of the inclusion-exclusion
constraints).
"""
from .catalog import enumerate_all, named
from .errors import LatticeError
from .lattice import FiniteLattice, LatticeMorphism, chain, from_covers, powerset, product
from .lattice_io import load_lattice, parse_lattice, serialize_lattice
from .measures import check_measure, make_measure, solve_membership, universal_measure
from .oracles import n_all
from .spectrum import enumerate_points, measurability

__version__ = "0.1.0"

__all__ = [
    "FiniteLattice",
    "LatticeError",
    "LatticeMorphism",
    "chain",
    "check_measure",
    "enumerate_all",
    "enumerate_points",
    "from_covers",
    "load_lattice",
    "make_measure",
    "measurability",
    "n_all",
    "named",
    "parse_lattice",
    "powerset",
    "product",
    "serialize_lattice",
    "solve_membership",
    "universal_measure",
]
