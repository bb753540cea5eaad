"""Boolean polynomials over F2 and a Buchberger engine for the measure ideal.

Monomials are square-free and stored as int bitmasks over variable indices
(variable i is lattice element i).  A polynomial is a frozenset of monomials;
adding is symmetric difference.  Square-freeness stands in for the field
equations x^2 = x, which hold in the quotient anyway because x meet x = x.

Monomial order is degree reverse lexicographic with x0 > x1 > ...; for two
monomials of equal degree the one with the smaller bitmask is larger.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import FiniteLattice
from .verdict import Verdict


def order_key(m: int) -> tuple[int, int]:
    return (m.bit_count(), -m)


def monomial_vars(m: int) -> list[int]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


class BoolPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[int] = ()):
        acc: set[int] = set()
        for t in terms:
            acc ^= {t}
        self.terms = frozenset(acc)

    @classmethod
    def _raw(cls, terms: frozenset) -> "BoolPoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def var(cls, i: int) -> "BoolPoly":
        return cls._raw(frozenset((1 << i,)))

    @classmethod
    def one(cls) -> "BoolPoly":
        return cls._raw(frozenset((0,)))

    @classmethod
    def zero(cls) -> "BoolPoly":
        return cls._raw(frozenset())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BoolPoly.one() if other % 2 else BoolPoly.zero()
        return isinstance(other, BoolPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        if isinstance(other, int):
            other = BoolPoly.one() if other % 2 else BoolPoly.zero()
        return BoolPoly._raw(self.terms ^ other.terms)

    __radd__ = __add__
    __sub__ = __add__

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        if isinstance(other, int):
            return self if other % 2 else BoolPoly.zero()
        acc: set[int] = set()
        for a in self.terms:
            for b in other.terms:
                acc ^= {a | b}
        return BoolPoly._raw(frozenset(acc))

    __rmul__ = __mul__

    def lead(self) -> int:
        return max(self.terms, key=order_key)

    def sorted_terms(self) -> list[int]:
        return sorted(self.terms, key=order_key, reverse=True)

    def evaluate(self, values: Sequence[int]) -> int:
        """Value at a 0/1 assignment of the variables."""
        ones = 0
        for i, v in enumerate(values):
            if v:
                ones |= 1 << i
        return sum(1 for t in self.terms if t & ones == t) % 2

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(t, names) for t in self.sorted_terms())

    def __repr__(self) -> str:
        return f"BoolPoly({self.format()})"


def _var_name(i: int, names: Sequence[str] | None) -> str:
    if names is None:
        return f"x{i}"
    s = names[i]
    return s if (s[0].isalpha() or s[0] == "_") else f"[{s}]"


def format_monomial(m: int, names: Sequence[str] | None = None) -> str:
    if m == 0:
        return "1"
    return "*".join(_var_name(i, names) for i in monomial_vars(m))


# ---------------------------------------------------------------------------
# the measure ideal


@dataclass(frozen=True)
class MeasureIdeal:
    nvars: int
    generators: tuple[BoolPoly, ...]
    names: tuple[str, ...] = ()


def build_ideal(lat: FiniteLattice) -> MeasureIdeal:
    """Generators 0_X, 1_X + 1, and for every pair x<y (by index)
    ``x^y + xy`` and ``xvy + x + y + xy`` (signs vanish over F2)."""
    n = len(lat)
    gens: dict[frozenset, BoolPoly] = {}

    def add(p: BoolPoly):
        if p.terms:
            gens.setdefault(p.terms, p)

    add(BoolPoly.var(lat.bottom))
    add(BoolPoly.var(lat.top) + BoolPoly.one())
    for x in range(n):
        for y in range(x + 1, n):
            xy = 1 << x | 1 << y
            add(BoolPoly((1 << int(lat.meet[x, y]), xy)))
            add(BoolPoly((1 << int(lat.join[x, y]), 1 << x, 1 << y, xy)))
    ordered = sorted(gens.values(), key=lambda p: [order_key(t) for t in p.sorted_terms()])
    return MeasureIdeal(n, tuple(ordered), tuple(lat.elements))


# ---------------------------------------------------------------------------
# reduction


def _reduce(terms: set[int], basis: Sequence[tuple[int, frozenset]], full: bool = True) -> set[int]:
    """Reduce a term set modulo basis entries (leading monomial, terms)."""
    p = set(terms)
    rem: set[int] = set()
    while p:
        t = max(p, key=order_key)
        for lt, g in basis:
            if t & lt == lt:
                cof = t & ~lt
                for m in g:
                    p ^= {cof | m}
                break
        else:
            if not full:
                rem |= p
                break
            p.discard(t)
            rem.add(t)
    return rem


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple[BoolPoly, ...]
    nvars: int
    names: tuple[str, ...] = ()
    order: str = "degrevlex"

    @property
    def leads(self) -> list[int]:
        return [g.lead() for g in self.basis]

    def _pairs(self):
        return [(g.lead(), g.terms) for g in self.basis]

    def formatted(self) -> list[str]:
        return [g.format(self.names or None) for g in self.basis]


def _smul(cof: int, terms: Iterable[int]) -> set[int]:
    acc: set[int] = set()
    for m in terms:
        acc ^= {cof | m}
    return acc


def _spoly(f: tuple[int, frozenset], g: tuple[int, frozenset]) -> set[int]:
    lcm = f[0] | g[0]
    return _smul(lcm & ~f[0], f[1]) ^ _smul(lcm & ~g[0], g[1])


def _field_spoly(f: tuple[int, frozenset], v: int) -> set[int]:
    """x_v * f + f for a variable x_v in the leading monomial of f."""
    return _smul(1 << v, f[1]) ^ set(f[1])


def buchberger(ideal: MeasureIdeal) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal plus the field equations.

    Pairs are processed by the normal strategy (smallest lcm first) with
    Buchberger's product and chain criteria.  Besides ordinary S-pairs each
    element f contributes one field pair per variable of its leading
    monomial: x*f must reduce to zero because x^2 = x.
    """
    G: list[tuple[int, frozenset]] = []
    live: list[bool] = []
    heap: list = []
    pending: set[tuple[int, int]] = set()
    seq = 0

    def add(terms: set[int]) -> bool:
        """Append a new basis element; return True if it is the constant 1."""
        nonlocal seq
        lt = max(terms, key=order_key)
        h = len(G)
        G.append((lt, frozenset(terms)))
        live.append(True)
        if lt == 0:
            return True
        for i in range(h):
            if live[i]:
                lcm = G[i][0] | lt
                heapq.heappush(heap, (order_key(lcm), seq, i, h))
                pending.add((i, h))
                seq += 1
        for v in monomial_vars(lt):
            heapq.heappush(heap, (order_key(lt), seq, h, -1 - v))
            seq += 1
        # elements whose leading monomial is a multiple of lt become redundant
        for i in range(h):
            if live[i] and G[i][0] & lt == lt:
                live[i] = False
        return False

    def active():
        return [G[i] for i in range(len(G)) if live[i]]

    for gen in ideal.generators:
        r = _reduce(set(gen.terms), active())
        if r and add(r):
            return GroebnerBasis((BoolPoly.one(),), ideal.nvars, ideal.names)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if j < 0:
            if not live[i]:
                continue
            s = _field_spoly(G[i], -1 - j)
        else:
            pending.discard((i, j))
            if not (live[i] and live[j]):
                continue
            fi, fj = G[i], G[j]
            if fi[0] & fj[0] == 0:
                continue  # product criterion
            lcm = fi[0] | fj[0]
            chain = False
            for k in range(len(G)):
                if k in (i, j) or not live[k] or G[k][0] & lcm != G[k][0]:
                    continue
                if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                    chain = True
                    break
            if chain:
                continue
            s = _spoly(fi, fj)
        r = _reduce(s, active())
        if r and add(r):
            return GroebnerBasis((BoolPoly.one(),), ideal.nvars, ideal.names)

    return _interreduce(active(), ideal)


def _interreduce(G: list[tuple[int, frozenset]], ideal: MeasureIdeal) -> GroebnerBasis:
    G = sorted(G, key=lambda g: order_key(g[0]))
    minimal = []
    for lt, terms in G:
        if not any(lt & m == m for m, _ in minimal):
            minimal.append((lt, terms))
    out = []
    for k, (lt, terms) in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = _reduce(set(terms) - {lt}, others)
        out.append(BoolPoly._raw(frozenset(tail | {lt})))
    out.sort(key=lambda p: order_key(p.lead()))
    return GroebnerBasis(tuple(out), ideal.nvars, ideal.names)


def groebner_basis(lat: FiniteLattice) -> GroebnerBasis:
    if "groebner" not in lat._cache:
        lat._cache["groebner"] = buchberger(build_ideal(lat))
    return lat._cache["groebner"]


def normal_form(p: BoolPoly, gb: GroebnerBasis) -> BoolPoly:
    return BoolPoly._raw(frozenset(_reduce(set(p.terms), gb._pairs())))


def is_groebner(gb: GroebnerBasis) -> bool:
    """Check every S-pair and field pair of the basis reduces to zero."""
    pairs = gb._pairs()
    for a in range(len(pairs)):
        for v in monomial_vars(pairs[a][0]):
            if _reduce(_field_spoly(pairs[a], v), pairs):
                return False
        for b in range(a + 1, len(pairs)):
            if _reduce(_spoly(pairs[a], pairs[b]), pairs):
                return False
    return True


def standard_monomials(gb: GroebnerBasis) -> list[int]:
    """Square-free monomials divisible by no leading monomial, ascending."""
    leads = gb.leads
    if 0 in leads:
        return []
    out = []

    def rec(m: int, start: int):
        out.append(m)
        for v in range(start, gb.nvars):
            m2 = m | 1 << v
            if not any(m2 & lt == lt for lt in leads):
                rec(m2, v + 1)

    rec(0, 0)
    return sorted(out, key=order_key)


def random_poly(nvars: int, rng: random.Random, max_terms: int = 6, max_degree: int = 3) -> BoolPoly:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        deg = rng.randint(0, min(max_degree, nvars))
        m = 0
        for v in rng.sample(range(nvars), deg):
            m |= 1 << v
        terms.append(m)
    return BoolPoly(terms)


def is_boolean_ring(gb: GroebnerBasis, trials: int = 100, seed: int = 0) -> Verdict:
    """Spot-check that every class of the quotient is idempotent."""
    rng = random.Random(seed)
    for t in range(trials):
        p = random_poly(max(gb.nvars, 1), rng) if gb.nvars else BoolPoly.one()
        a = normal_form(p, gb)
        if normal_form(p * p, gb) != a or normal_form(a * a, gb) != a:
            return Verdict(False, f"trial {t}: p^2 and p differ", p.format(gb.names or None))
    return Verdict(True, f"{trials} trials, seed {seed}")
