"""Exact linear algebra over Z and Q.

Everything here uses Python integers and ``fractions.Fraction``; numpy is
only used to generate and de-duplicate the integer relation rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NonIntegerEntry, SizeCapExceeded
from .lattice import FiniteLattice

DEFAULT_ROW_CAP = 1 << 20


class ExactMatrix:
    """A dense matrix of exact rationals (ints where possible)."""

    __slots__ = ("rows", "ncols", "labels")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None, labels=None):
        self.rows = [[_exact(v) for v in r] for r in rows]
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise DimensionMismatch("ragged matrix")
        self.labels = labels

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def is_integer(self) -> bool:
        return all(isinstance(v, int) for r in self.rows for v in r)

    def __repr__(self) -> str:
        return f"ExactMatrix{self.shape}"

    def to_tsv_rows(self, header=None) -> list[list]:
        out = [list(header)] if header is not None else []
        out.extend(list(r) for r in self.rows)
        return out


def _exact(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, float):
        raise TypeError("floating point entries are not allowed")
    return _exact(Fraction(v))


def _integer_rows(m: ExactMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank preserving)."""
    out = []
    for r in m.rows:
        d = 1
        for v in r:
            if isinstance(v, Fraction):
                d = lcm(d, v.denominator)
        out.append([int(v * d) for v in r])
    return out


# ---------------------------------------------------------------------------
# constraint system


def constraint_matrix(lat: FiniteLattice, max_subset_size: int | None = None,
                      row_cap: int = DEFAULT_ROW_CAP, dedupe: bool = True) -> ExactMatrix:
    """Integer matrix whose kernel is the space of measures on ``lat``.

    One column per element.  Rows: the normalization row e_{0_X}, then one
    inclusion-exclusion relation per subset of 2..max_subset_size distinct
    elements.  Zero rows are dropped and duplicates removed (sorted output).
    """
    n = len(lat)
    k = n if max_subset_size is None else max_subset_size
    if n >= 2 and not 2 <= k <= n:
        raise ValueError(f"max_subset_size must be in [2, {n}]")
    if n > 62:
        raise SizeCapExceeded("constraint matrix limited to 62 elements")
    count = kernels.ie_row_count(n, k) if n >= 2 else 0
    if count > row_cap:
        raise SizeCapExceeded(f"{count} relation rows exceed the cap {row_cap}")
    rows, _ = kernels.ie_rows(lat.meet, lat.join, k) if n >= 2 else (np.zeros((0, n), np.int64), None)
    norm = np.zeros((1, n), np.int64)
    norm[0, lat.bottom] = 1
    allrows = np.vstack([norm, rows])
    allrows = allrows[np.any(allrows != 0, axis=1)]
    if dedupe:
        allrows = np.unique(allrows, axis=0)
    return ExactMatrix(allrows.tolist(), n, labels=list(lat.elements))


def relation_rows(lat: FiniteLattice, max_subset_size: int | None = None):
    """Raw (rows, subset masks) for check_measure-style witnesses."""
    n = len(lat)
    k = n if max_subset_size is None else min(max_subset_size, n)
    if n < 2 or k < 2:
        return np.zeros((0, n), np.int64), np.zeros(0, np.int64)
    return kernels.ie_rows(lat.meet, lat.join, k)


# ---------------------------------------------------------------------------
# rank / nullspace


def bareiss_rank(rows: list[list[int]], ncols: int) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    a = [list(r) for r in rows if any(r)]
    rank = 0
    prev = 1
    for col in range(ncols):
        if rank == len(a):
            break
        piv = next((r for r in range(rank, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        pr = a[rank]
        for r in range(rank + 1, len(a)):
            row = a[r]
            f = row[col]
            for c in range(col + 1, ncols):
                # exact division is the Bareiss invariant
                row[c] = (p * row[c] - f * pr[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def rank(m: ExactMatrix) -> int:
    return bareiss_rank(_integer_rows(m), m.ncols)


def nullspace_dimension(m: ExactMatrix) -> int:
    return m.ncols - rank(m)


def rref(m: ExactMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    a = [[Fraction(v) for v in r] for r in m.rows]
    pivots = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace_basis(m: ExactMatrix) -> list[list[Fraction]]:
    red, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(a: ExactMatrix, b: Sequence) -> tuple[list[Fraction] | None, int | None]:
    """Solve a x = b exactly.

    Returns ``(x, None)`` on success (free variables set to 0) or
    ``(None, i)`` where ``i`` is the first row whose equation cannot hold.
    """
    rows, n = a.shape
    if len(b) != rows:
        raise DimensionMismatch(f"right-hand side has {len(b)} entries, expected {rows}")
    aug = [[Fraction(v) for v in r] + [Fraction(bv)] for r, bv in zip(a.rows, b)]
    where = [-1] * n
    origin = list(range(rows))
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        where[c] = r
        r += 1
    bad = [origin[i] for i in range(r, rows) if aug[i][n] != 0]
    if bad:
        return None, min(bad)
    x = [Fraction(0)] * n
    for c in range(n):
        if where[c] >= 0:
            x[c] = aug[where[c]][n]
    return x, None


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    divisors: tuple[int, ...]  # nonzero elementary divisors, d1 | d2 | ...
    rank: int
    shape: tuple[int, int]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.divisors + (0,) * (min(self.shape) - self.rank)

    @property
    def torsion_free(self) -> bool:
        return all(d == 1 for d in self.divisors)


def smith_normal_form(m: ExactMatrix) -> SmithForm:
    """Elementary divisors by unimodular row/column operations.

    At each stage the nonzero entry of least absolute value in the remaining
    block is moved to the pivot position and used to clear its row and
    column; leftover remainders restart the stage.  A pivot that does not
    divide the rest of the block absorbs an offending row first.
    """
    if not m.is_integer():
        raise NonIntegerEntry("Smith normal form needs integer entries")
    a = [list(r) for r in m.rows if any(r)]
    nrows, ncols = len(a), m.ncols
    t = 0
    divisors = []
    while t < nrows and t < ncols:
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nrows):
                q = a[i][t] // p
                if q:
                    ri, rt = a[i], a[t]
                    for c in range(t, ncols):
                        ri[c] -= q * rt[c]
                if a[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    done = False
            if done:
                bad = next((i for i in range(t + 1, nrows)
                            if any(a[i][c] % p for c in range(t + 1, ncols))), None)
                if bad is None:
                    break
                for c in range(t, ncols):
                    a[t][c] += a[bad][c]
                done = False
            # move the smallest entry of row/column t into the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nrows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, ncols) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        divisors.append(abs(a[t][t]))
        t += 1
    # normalize the divisibility chain (already holds, but keep it explicit)
    for x in range(len(divisors)):
        for y in range(x + 1, len(divisors)):
            g = gcd(divisors[x], divisors[y])
            divisors[x], divisors[y] = g, divisors[x] * divisors[y] // g
    return SmithForm(tuple(divisors), len(divisors), (len(m.rows), ncols))


def measure_space_dimension(lat: FiniteLattice, max_subset_size: int | None = None) -> int:
    return nullspace_dimension(constraint_matrix(lat, max_subset_size))


def augmented_invariant_matrix(lat: FiniteLattice, generators) -> ExactMatrix:
    """Constraint rows plus nu(g x) - nu(x) = 0 for each generator g."""
    base = constraint_matrix(lat)
    n = len(lat)
    extra = []
    for g in generators:
        for x in range(n):
            if g.map[x] != x:
                row = [0] * n
                row[g.map[x]] += 1
                row[x] -= 1
                extra.append(row)
    return ExactMatrix(base.rows + extra, n, labels=base.labels)
