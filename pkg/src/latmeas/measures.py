"""Universal measure, rational-valued measures, invariant measures and the
orthogonal-idempotent construction, all in the Z^n picture given by the
2-valued points."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, NotAMeasure, NotANNMeasure, NotAnAutomorphism, UnknownElement
from .lattice import FiniteLattice, LatticeMorphism, is_automorphism
from .linalg import ExactMatrix, relation_rows, solve
from .spectrum import Spectrum, enumerate_points, point_action
from .verdict import Verdict


@dataclass(frozen=True)
class UniversalMeasure:
    """pi: X -> Z^n, coordinate k being the value of point k."""

    lattice: FiniteLattice
    spectrum: Spectrum
    table: np.ndarray  # (|X|, n) int64

    @property
    def n(self) -> int:
        return int(self.table.shape[1])

    def __call__(self, x: int | str) -> np.ndarray:
        if isinstance(x, str):
            x = self.lattice.index(x)
        return self.table[x]

    def rows(self) -> dict[str, list[int]]:
        return {e: [int(v) for v in self.table[i]] for i, e in enumerate(self.lattice.elements)}


def universal_measure(lat: FiniteLattice) -> UniversalMeasure:
    spec = enumerate_points(lat)
    table = np.asarray(spec.points, dtype=np.int64).T.reshape(len(lat), len(spec))
    um = UniversalMeasure(lat, spec, table)
    _verify_universal(um)
    return um


def _verify_universal(um: UniversalMeasure) -> None:
    lat, t = um.lattice, um.table
    assert not t[lat.bottom].any()
    assert (t[lat.top] == 1).all()
    # meet is the coordinatewise product, join is x + y - xy
    assert np.array_equal(t[lat.meet], t[:, None, :] * t[None, :, :])
    assert np.array_equal(t[lat.join], t[:, None, :] + t[None, :, :] - t[:, None, :] * t[None, :, :])


def _subset_names(lat: FiniteLattice, mask: int) -> list[str]:
    return [e for i, e in enumerate(lat.elements) if mask >> i & 1]


@dataclass(frozen=True)
class Measure:
    lattice: FiniteLattice
    coefficients: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __call__(self, x: int | str) -> Fraction:
        if isinstance(x, str):
            x = self.lattice.index(x)
        return self.values[x]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.lattice.elements, self.values))


def make_measure(um: UniversalMeasure, coefficients: Sequence) -> Measure:
    if len(coefficients) != um.n:
        raise DimensionMismatch(f"expected {um.n} coefficients, got {len(coefficients)}")
    c = tuple(Fraction(v) for v in coefficients)
    vals = tuple(sum((ck for ck, b in zip(c, row) if b), Fraction(0)) for row in um.table)
    return Measure(um.lattice, c, vals)


def _values_vector(lat: FiniteLattice, values) -> list[Fraction]:
    if isinstance(values, Mapping):
        missing = [e for e in lat.elements if e not in values]
        if missing:
            raise UnknownElement(f"no value given for {missing[0]!r}")
        extra = [k for k in values if k not in lat._index]
        if extra:
            raise UnknownElement(f"unknown element {extra[0]!r}")
        return [Fraction(values[e]) for e in lat.elements]
    vals = [Fraction(v) for v in values]
    if len(vals) != len(lat):
        raise DimensionMismatch(f"expected {len(lat)} values, got {len(vals)}")
    return vals


def _first_ie_violation(lat: FiniteLattice, vals: list[Fraction], max_subset_size: int | None):
    rows, masks = relation_rows(lat, max_subset_size)
    if len(rows) == 0:
        return None
    den = lcm(*(v.denominator for v in vals))
    ints = np.array([int(v * den) for v in vals], dtype=object)
    resid = rows.astype(object) @ ints
    bad = np.nonzero(resid != 0)[0]
    if len(bad) == 0:
        return None
    # rows come level by level, lexicographic within a level
    return int(masks[bad[0]])


def check_measure(lat: FiniteLattice, values, max_subset_size: int | None = None) -> Verdict:
    """Check nu(0)=0 and the inclusion-exclusion law on every subset of
    2..max_subset_size distinct elements; the witness is the first failing
    subset (by size, then lexicographic in declaration order)."""
    vals = _values_vector(lat, values)
    if vals[lat.bottom] != 0:
        return Verdict(False, "value at bottom is not 0", [lat.elements[lat.bottom]])
    mask = _first_ie_violation(lat, vals, max_subset_size)
    if mask is not None:
        return Verdict(False, "inclusion-exclusion fails", _subset_names(lat, mask))
    return Verdict(True)


def solve_membership(um: UniversalMeasure, values) -> tuple[Fraction, ...]:
    """The unique coefficient vector c with values = pi . c."""
    lat = um.lattice
    vals = _values_vector(lat, values)
    a = ExactMatrix(um.table.tolist(), um.n)
    x, bad = solve(a, vals)
    if x is None:
        raise NotAMeasure(f"map is not a measure: residual at element {lat.elements[bad]!r}",
                          lat.elements[bad])
    return tuple(x)


@dataclass(frozen=True)
class InvariantMeasureSpace:
    orbits: tuple[tuple[int, ...], ...]  # partition of point indices

    @property
    def dimension(self) -> int:
        return len(self.orbits)

    def basis(self, n: int) -> list[tuple[int, ...]]:
        """Orbit indicator coefficient vectors."""
        return [tuple(1 if k in orb else 0 for k in range(n)) for orb in self.orbits]


def invariant_space(um: UniversalMeasure, generators: Sequence[LatticeMorphism]) -> InvariantMeasureSpace:
    n = um.n
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in generators:
        if not is_automorphism(g):
            raise NotAnAutomorphism("generator is not a lattice automorphism")
        sigma = point_action(um.lattice, g, um.spectrum)
        for i, j in enumerate(sigma):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    return InvariantMeasureSpace(tuple(tuple(v) for _, v in sorted(groups.items())))


def orthogonalize(um: UniversalMeasure, xs: Sequence[int | str]) -> list[np.ndarray]:
    """y1 = x1, y_{i+1} = x_{i+1} (1 - x1) ... (1 - x_i), as vectors in Z^n."""
    if not xs:
        raise ValueError("need at least one element")
    vecs = [um(x) for x in xs]
    out = []
    rest = np.ones(um.n, dtype=np.int64)
    for v in vecs:
        out.append(v * rest)
        rest = rest * (1 - v)
    return out


def check_orthogonal(um: UniversalMeasure, xs, ys) -> Verdict:
    vecs = [um(x) for x in xs]
    for i, a in enumerate(ys):
        if not np.array_equal(a * a, a):
            return Verdict(False, "not idempotent", i)
        for j in range(i + 1, len(ys)):
            if (a * ys[j]).any():
                return Verdict(False, "not orthogonal", (i, j))
    sx = np.zeros(um.n, dtype=bool)
    sy = np.zeros(um.n, dtype=bool)
    for i, (v, y) in enumerate(zip(vecs, ys)):
        sx |= v != 0
        sy |= y != 0
        if not np.array_equal(sx, sy):
            return Verdict(False, "prefix ideals differ", i)
    return Verdict(True)


def nn_split(lat: FiniteLattice, values, max_subset_size: int | None = None) -> tuple[Measure, Fraction]:
    """Split a non-normalized measure mu into (mu - mu(0), mu(0))."""
    vals = _values_vector(lat, values)
    mask = _first_ie_violation(lat, vals, max_subset_size)
    if mask is not None:
        names = _subset_names(lat, mask)
        raise NotANNMeasure(f"inclusion-exclusion fails on {names}", names)
    c0 = vals[lat.bottom]
    shifted = [v - c0 for v in vals]
    um = universal_measure(lat)
    coeffs = solve_membership(um, shifted)
    return make_measure(um, coeffs), c0
