"""Finite bounded lattices: construction, validation, products, isomorphism."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    CycleInCovers,
    DuplicateElement,
    NotALattice,
    NotBounded,
    SizeCapExceeded,
    UnknownElement,
)

DEFAULT_SIZE_CAP = 4096


class FiniteLattice:
    """An immutable finite bounded lattice.

    Elements are identified by position; ``elements`` holds their names in
    declaration order.  ``leq``, ``meet`` and ``join`` are precomputed numpy
    tables indexed by position.
    """

    __slots__ = ("name", "elements", "leq", "meet", "join", "bottom", "top", "_index", "_cache")

    def __init__(self, elements, leq, meet, join, bottom, top, name=""):
        self.name = name
        self.elements = tuple(elements)
        self.leq = np.asarray(leq, dtype=bool)
        self.meet = np.asarray(meet, dtype=np.int64)
        self.join = np.asarray(join, dtype=np.int64)
        self.bottom = int(bottom)
        self.top = int(top)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._cache = {}
        for arr in (self.leq, self.meet, self.join):
            arr.setflags(write=False)

    # -- basic accessors -------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name or '?'}, {len(self)} elements)"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (a, b) with a covered by b, sorted by index."""
        if "covers" not in self._cache:
            lt = self.leq.copy()
            np.fill_diagonal(lt, False)
            # a < b is a cover iff there is no c with a < c < b
            between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
            cov = lt & ~between
            self._cache["covers"] = [(int(a), int(b)) for a, b in zip(*np.nonzero(cov))]
        return self._cache["covers"]

    def heights(self) -> np.ndarray:
        """Length of the longest chain from the bottom to each element."""
        if "heights" not in self._cache:
            h = np.zeros(len(self), np.int64)
            lowers: dict[int, list[int]] = {}
            for a, b in self.covers():
                lowers.setdefault(b, []).append(a)
            # counting elements below gives a linear extension
            for b in np.argsort(self.leq.sum(axis=0), kind="stable"):
                lows = lowers.get(int(b))
                if lows:
                    h[b] = max(h[a] for a in lows) + 1
            self._cache["heights"] = h
        return self._cache["heights"]

    def atoms(self) -> list[int]:
        return [b for a, b in self.covers() if a == self.bottom]

    # -- structural predicates ------------------------------------------

    def is_distributive(self) -> bool:
        m, j = self.meet, self.join
        for x in range(len(self)):
            # x ^ (y v z) == (x ^ y) v (x ^ z) for all y, z
            if not np.array_equal(m[x][j], j[m[x][:, None], m[x][None, :]]):
                return False
        return True

    def complements(self) -> list[list[int]]:
        """All complements of each element."""
        n = len(self)
        return [[y for y in range(n)
                 if self.meet[x, y] == self.bottom and self.join[x, y] == self.top]
                for x in range(n)]

    def is_complemented(self) -> bool:
        return all(self.complements())

    def is_boolean(self) -> bool:
        return self.is_complemented() and self.is_distributive()

    def check_laws(self) -> None:
        """Exhaustively assert the lattice axioms; raises AssertionError."""
        n = len(self)
        m, j, leq = self.meet, self.join, self.leq
        idx = np.arange(n)
        assert leq[idx, idx].all()
        assert not (leq & leq.T & ~np.eye(n, dtype=bool)).any()
        assert (leq.astype(np.int64) @ leq.astype(np.int64) > 0)[~leq].sum() == 0
        assert np.array_equal(m, m.T) and np.array_equal(j, j.T)
        assert np.array_equal(m[idx, idx], idx) and np.array_equal(j[idx, idx], idx)
        # associativity: m[m[x,y], z] == m[x, m[y,z]]
        assert np.array_equal(m[m[:, :, None], idx[None, None, :]], m[idx[:, None, None], m[None, :, :]])
        assert np.array_equal(j[j[:, :, None], idx[None, None, :]], j[idx[:, None, None], j[None, :, :]])
        # absorption
        assert np.array_equal(m[idx[:, None], j], np.broadcast_to(idx[:, None], (n, n)))
        assert np.array_equal(j[idx[:, None], m], np.broadcast_to(idx[:, None], (n, n)))
        # consistency with order
        assert np.array_equal(m == idx[:, None], leq)
        assert leq[self.bottom].all() and leq[:, self.top].all()

    # -- serialization helpers ------------------------------------------

    def to_covers(self) -> tuple[list[str], list[tuple[str, str]]]:
        return list(self.elements), [(self.elements[a], self.elements[b]) for a, b in self.covers()]

    def relabel(self, order: Sequence[int], names=None, name=None) -> "FiniteLattice":
        """Return the same lattice with elements listed in ``order``."""
        order = np.asarray(order, dtype=np.int64)
        inv = np.empty_like(order)
        inv[order] = np.arange(len(order))
        els = [self.elements[i] for i in order] if names is None else list(names)
        return FiniteLattice(
            els,
            self.leq[np.ix_(order, order)],
            inv[self.meet[np.ix_(order, order)]],
            inv[self.join[np.ix_(order, order)]],
            inv[self.bottom],
            inv[self.top],
            self.name if name is None else name,
        )


@dataclass(frozen=True)
class LatticeMorphism:
    source: FiniteLattice
    target: FiniteLattice
    map: tuple[int, ...] = field()

    def __call__(self, x: int) -> int:
        return self.map[x]

    @classmethod
    def identity(cls, lat: FiniteLattice) -> "LatticeMorphism":
        return cls(lat, lat, tuple(range(len(lat))))

    @classmethod
    def from_names(cls, source, target, mapping: dict) -> "LatticeMorphism":
        return cls(source, target, tuple(target.index(mapping[e]) for e in source.elements))


# ---------------------------------------------------------------------------
# construction


def _from_order(elements, leq, name="", size_cap=DEFAULT_SIZE_CAP) -> FiniteLattice:
    n = len(elements)
    if n > size_cap:
        raise SizeCapExceeded(f"{n} elements exceeds the size cap {size_cap}")
    if n == 0:
        raise NotBounded("empty poset has no bottom or top")
    mins = np.nonzero(leq.all(axis=1))[0]
    maxs = np.nonzero(leq.all(axis=0))[0]
    if len(mins) != 1 or len(maxs) != 1:
        raise NotBounded("poset has no unique minimum and maximum")
    meet, join = kernels.bound_tables(np.ascontiguousarray(leq))
    for table, op in ((join, "join"), (meet, "meet")):
        bad = np.argwhere(table < 0)
        if len(bad):
            a, b = bad[0]
            raise NotALattice(elements[a], elements[b], op)
    return FiniteLattice(elements, leq, meet, join, int(mins[0]), int(maxs[0]), name)


def from_covers(elements: Sequence[str], covers: Iterable[tuple[str, str]], name: str = "",
                size_cap: int = DEFAULT_SIZE_CAP) -> FiniteLattice:
    """Build a lattice from a Hasse diagram given as ``(lower, upper)`` pairs.

    Pairs need not be irredundant; the order is their reflexive-transitive
    closure.
    """
    elements = list(elements)
    index = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(f"duplicate element {e!r}")
        index[e] = i
    n = len(elements)
    if n > size_cap:
        raise SizeCapExceeded(f"{n} elements exceeds the size cap {size_cap}")
    adj = np.zeros((n, n), dtype=bool)
    for a, b in covers:
        for e in (a, b):
            if e not in index:
                raise UnknownElement(f"cover references unknown element {e!r}")
        if a == b:
            raise CycleInCovers(f"self-loop on {a!r}")
        adj[index[a], index[b]] = True
    leq = kernels.closure(adj)
    cyc = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(cyc):
        a, b = cyc[0]
        raise CycleInCovers(f"cycle through {elements[a]!r} and {elements[b]!r}")
    return _from_order(elements, leq, name, size_cap)


def from_leq(elements: Sequence[str], leq, name: str = "") -> FiniteLattice:
    return _from_order(list(elements), np.asarray(leq, dtype=bool), name)


def chain(n: int) -> FiniteLattice:
    """The total order 0 < 1 < ... < n."""
    if n < 0:
        raise ValueError("chain length must be nonnegative")
    idx = np.arange(n + 1)
    return FiniteLattice(
        [str(i) for i in idx],
        idx[:, None] <= idx[None, :],
        np.minimum.outer(idx, idx),
        np.maximum.outer(idx, idx),
        0,
        n,
        f"chain({n})",
    )


def subset_name(mask: int, atoms: Sequence[str]) -> str:
    if mask == 0:
        return "0"
    return "_".join(a for i, a in enumerate(atoms) if mask >> i & 1)


def powerset_masks(n: int) -> np.ndarray:
    """Subset bitmasks in the element order used by :func:`powerset`."""
    masks = sorted(range(2 ** n), key=lambda m: (bin(m).count("1"), [-(m >> i & 1) for i in range(n)]))
    return np.array(masks, dtype=np.int64)


def powerset(n: int, size_cap: int = DEFAULT_SIZE_CAP, atoms: Sequence[str] | None = None) -> FiniteLattice:
    """Subsets of an n-element set ordered by inclusion.

    Elements are listed by cardinality, then lexicographically, so the atoms
    ``x1..xn`` come right after the empty set ``0``.
    """
    if n < 0:
        raise ValueError("powerset size must be nonnegative")
    if 2 ** n > size_cap:
        raise SizeCapExceeded(f"powerset({n}) has {2 ** n} elements, cap is {size_cap}")
    atoms = list(atoms) if atoms is not None else [f"x{i + 1}" for i in range(n)]
    masks = powerset_masks(n)
    pos = np.empty(2 ** n, np.int64)
    pos[masks] = np.arange(2 ** n)
    return FiniteLattice(
        [subset_name(int(m), atoms) for m in masks],
        (masks[:, None] & ~masks[None, :]) == 0,
        pos[masks[:, None] & masks[None, :]],
        pos[masks[:, None] | masks[None, :]],
        0,
        2 ** n - 1,
        f"powerset({n})",
    )


def product(x: FiniteLattice, y: FiniteLattice, size_cap: int = DEFAULT_SIZE_CAP) -> FiniteLattice:
    """Coordinatewise product; element (i, j) sits at position i*|y| + j."""
    nx, ny = len(x), len(y)
    if nx * ny > size_cap:
        raise SizeCapExceeded(f"product has {nx * ny} elements, cap is {size_cap}")
    names = [f"{a}_{b}" for a in x.elements for b in y.elements]
    if len(set(names)) != len(names):
        names = [f"p{i}_{j}" for i in range(nx) for j in range(ny)]
    leq = (x.leq[:, None, :, None] & y.leq[None, :, None, :]).reshape(nx * ny, nx * ny)
    meet = (x.meet[:, None, :, None] * ny + y.meet[None, :, None, :]).reshape(nx * ny, nx * ny)
    join = (x.join[:, None, :, None] * ny + y.join[None, :, None, :]).reshape(nx * ny, nx * ny)
    return FiniteLattice(names, leq, meet, join, x.bottom * ny + y.bottom, x.top * ny + y.top,
                         f"{x.name}x{y.name}")


def projections(x: FiniteLattice, y: FiniteLattice, xy: FiniteLattice | None = None):
    xy = xy if xy is not None else product(x, y)
    ny = len(y)
    p1 = LatticeMorphism(xy, x, tuple(k // ny for k in range(len(xy))))
    p2 = LatticeMorphism(xy, y, tuple(k % ny for k in range(len(xy))))
    return p1, p2


def is_morphism(f: LatticeMorphism) -> bool:
    src, tgt = f.source, f.target
    fm = np.asarray(f.map, dtype=np.int64)
    if fm.shape != (len(src),) or (fm < 0).any() or (fm >= len(tgt)).any():
        return False
    if fm[src.bottom] != tgt.bottom or fm[src.top] != tgt.top:
        return False
    if not np.array_equal(fm[src.meet], tgt.meet[fm[:, None], fm[None, :]]):
        return False
    return bool(np.array_equal(fm[src.join], tgt.join[fm[:, None], fm[None, :]]))


def is_automorphism(f: LatticeMorphism) -> bool:
    return (f.source is f.target or f.source.elements == f.target.elements) and \
        len(set(f.map)) == len(f.map) and is_morphism(f)


# ---------------------------------------------------------------------------
# isomorphism


def _refined_colors(lat: FiniteLattice, table: dict) -> list[int]:
    """Color classes from (height, up-degree, down-degree), refined by covers.

    ``table`` maps signatures to small integers and may be shared between
    lattices so that colors are comparable across them.
    """
    n = len(lat)
    h = lat.heights()
    up = lat.leq.sum(axis=1)
    down = lat.leq.sum(axis=0)
    cov = lat.covers()
    uppers = [[] for _ in range(n)]
    lowers = [[] for _ in range(n)]
    for a, b in cov:
        uppers[a].append(b)
        lowers[b].append(a)
    sig = [("base", int(h[i]), int(up[i]), int(down[i])) for i in range(n)]
    col = [table.setdefault(s, len(table)) for s in sig]
    for _ in range(n):
        sig = [(col[i], tuple(sorted(col[u] for u in uppers[i])), tuple(sorted(col[d] for d in lowers[i])))
               for i in range(n)]
        new = [table.setdefault(s, len(table)) for s in sig]
        if len(set(new)) == len(set(col)):
            col = new
            break
        col = new
    return col


def _ranked_colors(lat: FiniteLattice) -> list[int]:
    """Like :func:`_refined_colors`, but each round renumbers the signatures
    by their sorted rank, so colors do not depend on the element labels."""
    n = len(lat)
    h = lat.heights()
    up = lat.leq.sum(axis=1)
    down = lat.leq.sum(axis=0)
    uppers = [[] for _ in range(n)]
    lowers = [[] for _ in range(n)]
    for a, b in lat.covers():
        uppers[a].append(b)
        lowers[b].append(a)

    def rank(sig):
        order = {s: k for k, s in enumerate(sorted(set(sig)))}
        return [order[s] for s in sig]

    col = rank([(int(h[i]), int(up[i]), int(down[i])) for i in range(n)])
    while True:
        new = rank([(col[i], tuple(sorted(col[u] for u in uppers[i])), tuple(sorted(col[d] for d in lowers[i])))
                    for i in range(n)])
        if len(set(new)) == len(set(col)):
            return new
        col = new


def _search_isomorphisms(x: FiniteLattice, y: FiniteLattice, first_only: bool) -> Iterator[tuple[int, ...]]:
    if len(x) != len(y):
        return
    table: dict = {}
    cx = _refined_colors(x, table)
    cy = _refined_colors(y, table)
    if sorted(cx) != sorted(cy):
        return
    n = len(x)
    # assign x-elements bottom-up so order checks bite early
    order = sorted(range(n), key=lambda i: (int(x.heights()[i]), i))
    cand = {i: [j for j in range(n) if cy[j] == cx[i]] for i in range(n)}
    f = [-1] * n
    used = [False] * n

    def consistent(i, j):
        for k in range(n):
            if f[k] >= 0:
                if x.leq[i, k] != y.leq[j, f[k]] or x.leq[k, i] != y.leq[f[k], j]:
                    return False
        return True

    def extend(pos):
        if pos == n:
            yield tuple(f)
            return
        i = order[pos]
        for j in cand[i]:
            if not used[j] and consistent(i, j):
                f[i] = j
                used[j] = True
                yield from extend(pos + 1)
                f[i] = -1
                used[j] = False

    yield from extend(0)


def find_isomorphism(x: FiniteLattice, y: FiniteLattice) -> tuple[int, ...] | None:
    return next(_search_isomorphisms(x, y, True), None)


def are_isomorphic(x: FiniteLattice, y: FiniteLattice) -> bool:
    return find_isomorphism(x, y) is not None


def automorphisms(lat: FiniteLattice) -> list[LatticeMorphism]:
    """All automorphisms, identity first."""
    maps = sorted(_search_isomorphisms(lat, lat, False))
    return [LatticeMorphism(lat, lat, m) for m in maps]


def canonical_form(lat: FiniteLattice) -> tuple[int, bytes]:
    """A complete isomorphism invariant: (size, packed order code).

    Elements are arranged by refined color; within a color class the
    arrangement minimizing the code is found by branch and bound.  The code
    lists, for each position p, the order bits between p and all earlier
    positions, so any prefix of an arrangement fixes a prefix of the code.
    """
    n = len(lat)
    if "canon" in lat._cache:
        return lat._cache["canon"]
    col = _ranked_colors(lat)
    slots = sorted(col)
    leq = lat.leq
    best: list = [None]
    perm = [-1] * n
    used = [False] * n

    def rec(p, code):
        if best[0] is not None and code > best[0][: len(code)]:
            return
        if p == n:
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        options = []
        for i in range(n):
            if not used[i] and col[i] == slots[p]:
                bits = tuple(int(leq[perm[q], i]) for q in range(p)) + tuple(int(leq[i, perm[q]]) for q in range(p))
                options.append((bits, i))
        options.sort()
        for bits, i in options:
            perm[p] = i
            used[i] = True
            rec(p + 1, code + bits)
            used[i] = False
            perm[p] = -1

    rec(0, ())
    bits = best[0]
    packed = np.packbits(np.array(bits, dtype=np.uint8)).tobytes() if bits else b""
    lat._cache["canon"] = (n, packed)
    return lat._cache["canon"]


def canonical_id(lat: FiniteLattice) -> str:
    n, code = canonical_form(lat)
    return f"L{n}_{code.hex() or '0'}"


# ---------------------------------------------------------------------------
# morphism enumeration


def morphisms(src: FiniteLattice, tgt: FiniteLattice, fixed: dict[int, int] | None = None,
              limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Enumerate bounded-lattice maps src -> tgt, optionally with pinned values.

    Backtracking over elements in height order; after every choice the
    values forced by meets and joins of already-assigned elements are
    propagated.
    """
    n = len(src)
    smeet, sjoin = src.meet, src.join
    tmeet, tjoin = tgt.meet, tgt.join
    start = [-1] * n
    if src.bottom == src.top and tgt.bottom != tgt.top:
        return
    pins = {src.bottom: tgt.bottom, src.top: tgt.top}
    for k, v in (fixed or {}).items():
        if pins.get(k, v) != v:
            return
        pins[k] = v
    for k, v in pins.items():
        if start[k] not in (-1, v):
            return
        start[k] = v

    def close(f):
        f = list(f)
        changed = True
        while changed:
            changed = False
            assigned = [i for i in range(n) if f[i] >= 0]
            for a_pos, a in enumerate(assigned):
                for b in assigned[a_pos:]:
                    for s_tab, t_tab in ((smeet, tmeet), (sjoin, tjoin)):
                        c = s_tab[a, b]
                        v = t_tab[f[a], f[b]]
                        if f[c] < 0:
                            f[c] = int(v)
                            changed = True
                        elif f[c] != v:
                            return None
        return f

    order = sorted(range(n), key=lambda i: (int(src.heights()[i]), i))
    count = 0

    def rec(f):
        nonlocal count
        if limit is not None and count >= limit:
            return
        nxt = next((i for i in order if f[i] < 0), None)
        if nxt is None:
            count += 1
            yield tuple(f)
            return
        for v in range(len(tgt)):
            g = list(f)
            g[nxt] = v
            g = close(g)
            if g is not None:
                yield from rec(g)

    f0 = close(start)
    if f0 is not None:
        yield from rec(f0)
