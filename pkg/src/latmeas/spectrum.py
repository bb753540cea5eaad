"""Two-valued points of a finite lattice and its measurability.

A point is a {0,1}-valuation ``v`` with ``v(0)=0``, ``v(1)=1``,
``v(x meet y) = v(x) v(y)`` and ``v(x join y) = max(v(x), v(y))``; these are
exactly the ring maps from the F2 ring of measures to F2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NotAnAutomorphism, SizeCapExceeded
from .lattice import FiniteLattice, LatticeMorphism, is_automorphism

BRUTE_FORCE_CAP = 24


def _sort_points(rows) -> np.ndarray:
    """Lexicographic order with 1 before 0 in element-declaration order.

    With this order the points of a chain 0<1<...<n come out as the
    thresholds 1, 2, ..., n, so the universal measure of i is e_1+...+e_i.
    """
    rows = [tuple(int(b) for b in r) for r in rows]
    rows = sorted(set(rows), key=lambda r: tuple(1 - b for b in r))
    if not rows:
        return np.zeros((0, 0), np.uint8)
    return np.array(rows, dtype=np.uint8)


@dataclass(frozen=True)
class Spectrum:
    lattice: FiniteLattice
    points: np.ndarray  # (n_points, |X|) uint8

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def index_of(self, values) -> int:
        key = tuple(int(b) for b in values)
        for k, p in enumerate(self.points):
            if tuple(int(b) for b in p) == key:
                return k
        raise KeyError("not a point of this spectrum")

    def ones(self, k: int) -> list[str]:
        return [self.lattice.elements[i] for i, v in enumerate(self.points[k]) if v]


def is_point(lat: FiniteLattice, values) -> bool:
    v = np.asarray(values, dtype=np.int64)
    if v.shape != (len(lat),) or not np.isin(v, (0, 1)).all():
        return False
    if v[lat.bottom] != 0 or v[lat.top] != 1:
        return False
    return bool(np.array_equal(v[lat.meet], v[:, None] & v[None, :])
                and np.array_equal(v[lat.join], v[:, None] | v[None, :]))


def enumerate_points(lat: FiniteLattice) -> Spectrum:
    """All 2-valued points, by depth-first search with unit propagation.

    The set of elements valued 1 is a prime filter; propagation pushes 1s up
    and 0s down and applies the meet/join laws to decided pairs, so the
    search tree has few dead branches.
    """
    if "spectrum" in lat._cache:
        return lat._cache["spectrum"]
    n = len(lat)
    meet = np.ascontiguousarray(lat.meet)
    join = np.ascontiguousarray(lat.join)
    leq = np.ascontiguousarray(lat.leq)
    found: list[np.ndarray] = []
    if n >= 2:
        start = np.full(n, -1, np.int64)
        start[lat.bottom] = 0
        start[lat.top] = 1
        stack = [start]
        while stack:
            ok, v = kernels.propagate(stack.pop(), meet, join, leq)
            if not ok:
                continue
            free = np.nonzero(v < 0)[0]
            if len(free) == 0:
                if not is_point(lat, v):  # pragma: no cover - propagation is complete
                    raise AssertionError("propagation produced an invalid valuation")
                found.append(v)
                continue
            for bit in (0, 1):
                w = v.copy()
                w[free[0]] = bit
                stack.append(w)
    pts = _sort_points(found)
    if len(found) == 0:
        pts = np.zeros((0, n), np.uint8)
    spec = Spectrum(lat, pts)
    lat._cache["spectrum"] = spec
    return spec


def brute_force_points(lat: FiniteLattice, *, impl=None) -> Spectrum:
    """Naive scan over all 2^|X| valuations; the test oracle."""
    n = len(lat)
    if n > BRUTE_FORCE_CAP:
        raise SizeCapExceeded(f"brute force limited to {BRUTE_FORCE_CAP} elements")
    fn = impl or kernels.valuations
    rows = fn(np.ascontiguousarray(lat.meet), np.ascontiguousarray(lat.join), lat.bottom, lat.top)
    pts = _sort_points(rows) if len(rows) else np.zeros((0, n), np.uint8)
    return Spectrum(lat, pts)


def measurability(lat: FiniteLattice) -> int:
    return len(enumerate_points(lat))


def point_action(lat: FiniteLattice, g: LatticeMorphism, spec: Spectrum | None = None) -> tuple[int, ...]:
    """Permutation sigma of point indices with point[sigma(i)] = point[i] o g."""
    if not is_automorphism(g):
        raise NotAnAutomorphism("generator is not a lattice automorphism")
    spec = spec if spec is not None else enumerate_points(lat)
    gm = np.asarray(g.map, dtype=np.int64)
    index = {tuple(int(b) for b in p): k for k, p in enumerate(spec.points)}
    sigma = tuple(index[tuple(int(b) for b in p[gm])] for p in spec.points)
    assert sorted(sigma) == list(range(len(spec)))
    return sigma
