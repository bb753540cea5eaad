"""The Boolean hull: D(x) = set of points where x is 1, inside the powerset
of the points."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boolpoly import BoolPoly, groebner_basis, normal_form, standard_monomials
from .errors import NotBoolean, SizeCapExceeded, TargetNotBoolean
from .lattice import FiniteLattice, LatticeMorphism, is_morphism, morphisms, powerset, powerset_masks
from .spectrum import Spectrum, enumerate_points
from .verdict import Verdict

UP_CAP_SOURCE = 6
UP_CAP_TARGET = 16


@dataclass(frozen=True)
class BooleanHull:
    spectrum: Spectrum
    d_masks: tuple[int, ...]  # D(x) as a bitmask over point indices
    hull: FiniteLattice  # powerset of the points
    position: dict  # bitmask -> index in ``hull``

    @property
    def lattice(self) -> FiniteLattice:
        return self.spectrum.lattice

    @property
    def n(self) -> int:
        return len(self.spectrum)

    def d(self, x: int | str) -> list[int]:
        if isinstance(x, str):
            x = self.lattice.index(x)
        m = self.d_masks[x]
        return [k for k in range(self.n) if m >> k & 1]

    def d_map(self) -> dict[str, list[int]]:
        return {e: self.d(i) for i, e in enumerate(self.lattice.elements)}

    def as_morphism(self) -> LatticeMorphism:
        """D as a lattice map X -> Y."""
        return LatticeMorphism(self.lattice, self.hull, tuple(self.position[m] for m in self.d_masks))


def _masks_from_points(spec: Spectrum) -> tuple[int, ...]:
    n_el = len(spec.lattice)
    weights = [1 << k for k in range(len(spec))]
    out = []
    for x in range(n_el):
        m = 0
        for k, w in enumerate(weights):
            if spec.points[k, x]:
                m |= w
        out.append(m)
    return tuple(out)


def hull(lat: FiniteLattice) -> BooleanHull:
    spec = enumerate_points(lat)
    n = len(spec)
    y = powerset(n, size_cap=1 << max(n, 12), atoms=[f"p{k}" for k in range(n)])
    y.name = f"hull({lat.name})" if lat.name else "hull"
    masks = powerset_masks(n)
    position = {int(m): i for i, m in enumerate(masks)}
    h = BooleanHull(spec, _masks_from_points(spec), y, position)
    v = check_hull(h)
    if not v:  # pragma: no cover - cannot fail for a valid lattice
        raise AssertionError(v.detail)
    return h


def generated_subalgebra(h: BooleanHull) -> set[int]:
    """Close the image of D under intersection, union and complement."""
    full = (1 << h.n) - 1
    seen = set(h.d_masks) | {0, full}
    frontier = list(seen)
    while frontier:
        new = []
        for a in frontier:
            cands = [full & ~a] + [op for b in list(seen) for op in (a & b, a | b)]
            for c in cands:
                if c not in seen:
                    seen.add(c)
                    new.append(c)
        frontier = new
    return seen


def check_hull(h: BooleanHull) -> Verdict:
    """Exhaustive check of the preservation laws and of separation."""
    lat, d = h.lattice, h.d_masks
    full = (1 << h.n) - 1
    names = lat.elements
    if d[lat.bottom] != 0:
        return Verdict(False, "D(0) is not empty", [names[lat.bottom]])
    if d[lat.top] != full:
        return Verdict(False, "D(1) is not the full point set", [names[lat.top]])
    n = len(lat)
    for a in range(n):
        for b in range(n):
            if d[lat.meet[a, b]] != d[a] & d[b]:
                return Verdict(False, "D does not preserve meet", [names[a], names[b]])
            if d[lat.join[a, b]] != d[a] | d[b]:
                return Verdict(False, "D does not preserve join", [names[a], names[b]])
            if lat.leq[a, b] and d[a] & ~d[b]:
                return Verdict(False, "D is not monotone", [names[a], names[b]])
    table = np.asarray(h.spectrum.points, dtype=np.int64).T.reshape(n, h.n)
    for a in range(n):
        for b in range(a + 1, n):
            if d[a] == d[b] and not np.array_equal(table[a], table[b]):
                return Verdict(False, "equal D but different universal values", [names[a], names[b]])
    if len(generated_subalgebra(h)) != 1 << h.n:
        return Verdict(False, "image of D does not generate the whole powerset")
    return Verdict(True)


def verify_universal_property(lat: FiniteLattice, target: FiniteLattice, cap: int = UP_CAP_SOURCE,
                              target_cap: int = UP_CAP_TARGET) -> Verdict:
    """Every lattice map f: X -> Z into a Boolean Z factors as f = g D for
    exactly one lattice map g: Y -> Z.  Exhaustive, so only for small inputs."""
    if len(lat) > cap:
        raise SizeCapExceeded(f"source has {len(lat)} elements, cap is {cap}")
    if len(target) > target_cap:
        raise SizeCapExceeded(f"target has {len(target)} elements, cap is {target_cap}")
    if not target.is_boolean():
        raise TargetNotBoolean(f"target {target.name or '?'} is not a Boolean lattice")
    h = hull(lat)
    dpos = [h.position[m] for m in h.d_masks]
    checked = 0
    for f in morphisms(lat, target):
        pins: dict[int, int] = {}
        for x, fx in enumerate(f):
            if pins.setdefault(dpos[x], fx) != fx:
                return Verdict(False, "f does not factor through D", list(f))
        gs = list(morphisms(h.hull, target, fixed=pins, limit=2))
        if len(gs) != 1:
            return Verdict(False, f"{len(gs)} factorizations", list(f))
        checked += 1
    return Verdict(True, f"{checked} maps checked", checked)


def boolean_ring_structure(lat: FiniteLattice) -> Verdict:
    """Compare the ring (X, symmetric difference, meet) of a Boolean lattice
    with F2[X]/I through x -> normal form of the variable x."""
    if not lat.is_boolean():
        raise NotBoolean(f"{lat.name or 'lattice'} is not complemented and distributive")
    n = len(lat)
    comp = [c[0] for c in lat.complements()]
    gb = groebner_basis(lat)
    nf = [normal_form(BoolPoly.var(x), gb) for x in range(n)]
    names = lat.elements
    one = normal_form(BoolPoly.one(), gb)  # 0 in the zero ring
    if nf[lat.bottom] != 0 or nf[lat.top] != one:
        return Verdict(False, "bounds do not map to 0 and 1")
    if len(set(nf)) != n:
        return Verdict(False, "element map is not injective")
    for a in range(n):
        for b in range(n):
            s = lat.join[lat.meet[a, comp[b]], lat.meet[comp[a], b]]
            if normal_form(nf[a] + nf[b], gb) != nf[s]:
                return Verdict(False, "addition differs", [names[a], names[b]])
            if normal_form(nf[a] * nf[b], gb) != nf[lat.meet[a, b]]:
                return Verdict(False, "multiplication differs", [names[a], names[b]])
    # |F2[X]/I| = 2^(standard monomials); injective + equal size = bijective
    size = 1 << len(standard_monomials(gb)) if gb.leads != [0] else 1
    if size != n:
        return Verdict(False, f"quotient has {size} elements, lattice has {n}")
    return Verdict(True, f"{n * n} pairs")


def induced_point_map(f: LatticeMorphism) -> tuple[int, ...]:
    """f_*: points of the target -> points of the source, p -> p o f."""
    src = enumerate_points(f.source)
    tgt = enumerate_points(f.target)
    index = {tuple(int(b) for b in p): k for k, p in enumerate(src.points)}
    fm = np.asarray(f.map, dtype=np.int64)
    return tuple(index[tuple(int(b) for b in p[fm])] for p in tgt.points)


def check_naturality(f: LatticeMorphism) -> Verdict:
    """D'(f(x)) is the preimage of D(x) under f_*, for every x."""
    if not is_morphism(f):
        raise ValueError("not a lattice morphism")
    hx, hy = hull(f.source), hull(f.target)
    fstar = induced_point_map(f)
    for x in range(len(f.source)):
        dx = hx.d_masks[x]
        pre = 0
        for k, j in enumerate(fstar):
            if dx >> j & 1:
                pre |= 1 << k
        if hy.d_masks[f.map[x]] != pre:
            return Verdict(False, "naturality square fails", f.source.elements[x])
    return Verdict(True)
