"""The three independent ways of computing the measurability n(X)."""
from __future__ import annotations

from .boolpoly import groebner_basis, standard_monomials
from .errors import MethodDisagreement
from .lattice import FiniteLattice
from .linalg import constraint_matrix, nullspace_dimension
from .spectrum import enumerate_points

METHODS = ("points", "groebner", "nullspace")


def n_points(lat: FiniteLattice) -> int:
    return len(enumerate_points(lat))


def n_groebner(lat: FiniteLattice) -> int:
    return len(standard_monomials(groebner_basis(lat)))


def n_nullspace(lat: FiniteLattice, max_subset_size: int | None = None) -> int:
    return nullspace_dimension(constraint_matrix(lat, max_subset_size))


def n_value(lat: FiniteLattice, method: str, max_subset_size: int | None = None) -> int:
    if method == "points":
        return n_points(lat)
    if method == "groebner":
        return n_groebner(lat)
    if method == "nullspace":
        return n_nullspace(lat, max_subset_size)
    raise ValueError(f"unknown method {method!r}")


def n_all(lat: FiniteLattice, max_subset_size: int | None = None) -> dict[str, int]:
    """All three values; raises MethodDisagreement unless they coincide."""
    values = {m: n_value(lat, m, max_subset_size) for m in METHODS}
    if len(set(values.values())) != 1:
        raise MethodDisagreement(values)
    return values
