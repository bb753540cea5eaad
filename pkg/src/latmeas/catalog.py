"""Named example lattices, exhaustive enumeration of small lattices up to
isomorphism, and random lattices for property tests."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .errors import SizeCapExceeded, UnknownName
from .lattice import (
    FiniteLattice,
    LatticeMorphism,
    canonical_form,
    canonical_id,
    chain,
    from_covers,
    powerset,
    powerset_masks,
)
from .spectrum import measurability

ENUM_CAP = 8


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    lattice: FiniteLattice
    expected_n: int | None = None


def _m3() -> FiniteLattice:
    mid = ["x1", "x2", "x3"]
    return from_covers(["0", *mid, "1"], [("0", m) for m in mid] + [(m, "1") for m in mid], "m3")


def _m2() -> FiniteLattice:
    return from_covers(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], "m2")


def _n5() -> FiniteLattice:
    return from_covers(["0", "a", "b", "c", "1"],
                       [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")], "n5")


def _hexagon9() -> FiniteLattice:
    # two middle rows: y1 y2 below z1 z2 z3, with z2 above both y's
    return from_covers(
        ["0", "y1", "y2", "z1", "z2", "z3", "1"],
        [("0", "y1"), ("0", "y2"), ("y1", "z1"), ("y1", "z2"), ("y2", "z2"), ("y2", "z3"),
         ("z1", "1"), ("z2", "1"), ("z3", "1")],
        "hexagon9",
    )


def _x7() -> FiniteLattice:
    # an M3 block x0 < x1,x2,x3 < x4 stacked between 0 and 1, beside a lone y
    return from_covers(
        ["0", "x0", "x1", "x2", "x3", "x4", "y", "1"],
        [("0", "x0"), ("x0", "x1"), ("x0", "x2"), ("x0", "x3"), ("x1", "x4"), ("x2", "x4"),
         ("x3", "x4"), ("x4", "1"), ("0", "y"), ("y", "1")],
        "x7",
    )


_FIXED = {
    "m3": (_m3, 0),
    "m2": (_m2, 2),
    "n5": (_n5, 2),
    "hexagon9": (_hexagon9, 2),
    "x7": (_x7, 2),
}

NAMES = ("m3", "m2", "n5", "chain(k)", "powerset(k)", "hexagon9", "x7")


def named(name: str) -> CatalogEntry:
    key = name.strip().lower()
    if key in _FIXED:
        build, n = _FIXED[key]
        return CatalogEntry(key, build(), n)
    m = re.fullmatch(r"(chain|powerset)\((\d+)\)", key)
    if m:
        k = int(m.group(2))
        lat = chain(k) if m.group(1) == "chain" else powerset(k)
        return CatalogEntry(key, lat, k)
    raise UnknownName(f"unknown catalog name {name!r}; known: {', '.join(NAMES)}")


# ---------------------------------------------------------------------------
# enumeration


def _naturally_labeled_posets(m: int) -> Iterator[np.ndarray]:
    """Strict orders on 0..m-1 in which i < j implies i < j as integers.

    Element k is added with a down-closed set of predecessors among 0..k-1.
    Every poset has such a labeling, so every isomorphism type appears.
    """
    lt = np.zeros((m, m), dtype=bool)

    def downsets(k):
        # down-closed subsets of 0..k-1 under the current order
        out = []
        for mask in range(1 << k):
            ok = True
            for i in range(k):
                if mask >> i & 1:
                    below = lt[:k, i]
                    if any(below[j] and not mask >> j & 1 for j in range(k)):
                        ok = False
                        break
            if ok:
                out.append(mask)
        return out

    def rec(k):
        if k == m:
            yield lt
            return
        for mask in downsets(k):
            for i in range(k):
                lt[i, k] = bool(mask >> i & 1)
            yield from rec(k + 1)
        lt[:k, k] = False

    yield from rec(0)


def _names(n: int) -> list[str]:
    return ["0"] + [chr(ord("a") + i) for i in range(n - 2)] + ["1"]


def enumerate_all(size: int) -> list[FiniteLattice]:
    """All lattices with exactly ``size`` elements, one per isomorphism type,
    sorted by canonical form."""
    if size > ENUM_CAP:
        raise SizeCapExceeded(f"enumeration limited to {ENUM_CAP} elements")
    if size < 1:
        return []
    if size == 1:
        lat = FiniteLattice(["0"], [[True]], [[0]], [[0]], 0, 0, "L1")
        return [lat]
    m = size - 2
    names = _names(size)
    found: dict[tuple, FiniteLattice] = {}
    for lt in _naturally_labeled_posets(m):
        leq = np.zeros((size, size), dtype=bool)
        leq[0, :] = True
        leq[:, size - 1] = True
        leq[1:size - 1, 1:size - 1] = lt | np.eye(m, dtype=bool)
        meet, join = kernels.bound_tables(leq)
        if (meet < 0).any() or (join < 0).any():
            continue
        lat = FiniteLattice(names, leq, meet, join, 0, size - 1)
        key = canonical_form(lat)
        if key not in found:
            lat.name = canonical_id(lat)
            found[key] = lat
    return [found[k] for k in sorted(found)]


def enumerate_up_to(size: int) -> list[FiniteLattice]:
    out = []
    for k in range(1, size + 1):
        out.extend(enumerate_all(k))
    return out


# The measurability values printed under the 25 Hasse diagrams of all
# lattices with at most six elements.  The first printed row runs over the
# diagrams of sizes 1, 2, 3, 4, 4, 5, 5, 5, 5, 5; the second and third rows
# cover the fifteen six-element diagrams.
REFERENCE_ROWS = (
    (0, 1, 2, 3, 2, 4, 3, 3, 0, 2),
    (5, 4, 4, 4, 3, 3, 1, 1, 2),
    (2, 1, 1, 3, 0, 0),
)
REFERENCE_SIZES = (1, 2, 3, 4, 4, 5, 5, 5, 5, 5) + (6,) * 15


def reference_table() -> dict[int, list[int]]:
    values = [v for row in REFERENCE_ROWS for v in row]
    out: dict[int, list[int]] = {}
    for s, v in zip(REFERENCE_SIZES, values):
        out.setdefault(s, []).append(v)
    return {s: sorted(v) for s, v in out.items()}


@dataclass(frozen=True)
class TableRow:
    size: int
    canonical_id: str
    n: int


def table(max_size: int = 6) -> list[TableRow]:
    return [TableRow(len(lat), lat.name, measurability(lat)) for lat in enumerate_up_to(max_size)]


def table_multisets(rows: list[TableRow]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for r in rows:
        out.setdefault(r.size, []).append(r.n)
    return {s: sorted(v) for s, v in sorted(out.items())}


# ---------------------------------------------------------------------------
# random lattices and symmetry groups


def random_lattice(rng: random.Random, max_size: int = 10, ground: int | None = None) -> FiniteLattice:
    """A random lattice of at most ``max_size`` elements.

    Random subsets of a small ground set are added one at a time, closing
    under intersection, until a randomly drawn target size is reached.  The
    family (with the ground set) ordered by inclusion is a lattice, and
    every finite lattice arises this way.
    """
    while True:
        target = rng.randint(1, max_size)
        g = ground if ground is not None else rng.randint(2, 5)
        full = (1 << g) - 1
        fam = {full}
        for _ in range(4 * max_size):
            if len(fam) >= target:
                break
            new = {rng.randrange(1 << g)}
            while new:
                a = new.pop()
                if a in fam:
                    continue
                fam.add(a)
                new.update(a & b for b in fam if a & b not in fam)
        if len(fam) > max_size:
            continue
        sets = sorted(fam, key=lambda s: (bin(s).count("1"), s))
        arr = np.array(sets, dtype=np.int64)
        leq = (arr[:, None] & ~arr[None, :]) == 0
        meet, join = kernels.bound_tables(leq)
        names = [f"e{i}" for i in range(len(sets))]
        return FiniteLattice(names, leq, meet, join, 0, len(sets) - 1, f"rand{len(sets)}")


def powerset_symmetry(k: int, lat: FiniteLattice | None = None) -> list[LatticeMorphism]:
    """Generators of Sym(k) acting on powerset(k): a transposition and a k-cycle."""
    lat = lat if lat is not None else powerset(k)
    if k < 2:
        return []
    masks = powerset_masks(k)
    pos = {int(m): i for i, m in enumerate(masks)}

    def induced(perm):
        out = []
        for m in masks:
            img = 0
            for i in range(k):
                if m >> i & 1:
                    img |= 1 << perm[i]
            out.append(pos[img])
        return LatticeMorphism(lat, lat, tuple(out))

    swap = list(range(k))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % k for i in range(k)]
    gens = [induced(swap)]
    if k > 2:
        gens.append(induced(cycle))
    return gens
