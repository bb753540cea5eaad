"""Text formats for lattices and automorphism generators, plus output helpers.

Lattice files::

    # comments start with '#'
    name: M3            (optional)
    elements: 0 a b c 1
    covers:
    0 < a
    a < 1

Group files contain one generator per line, ``perm: a->b b->a``; elements
not mentioned are fixed.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import (
    DuplicateElement,
    LatticeSyntaxError,
    NotAnAutomorphism,
    NotAPermutation,
    UnknownElement,
)
from .lattice import FiniteLattice, LatticeMorphism, from_covers

IDENT = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass
class LatticeFile:
    name: str = ""
    elements: list[str] = field(default_factory=list)
    covers: list[tuple[str, str]] = field(default_factory=list)

    def to_lattice(self) -> FiniteLattice:
        return from_covers(self.elements, self.covers, name=self.name)

    @classmethod
    def from_lattice(cls, lat: FiniteLattice) -> "LatticeFile":
        els, cov = lat.to_covers()
        return cls(lat.name, els, cov)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_lattice(text: str) -> LatticeFile:
    out = LatticeFile()
    seen: dict[str, int] = {}
    have_elements = False
    in_covers = False
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = _strip(raw)
        if not line:
            continue
        col = raw.find(line) + 1
        if line.startswith("name:"):
            value = line[5:].strip()
            if not IDENT.match(value or "!"):
                raise LatticeSyntaxError(f"bad lattice name {value!r}", lineno, col)
            out.name = value
            continue
        if line.startswith("elements:"):
            if have_elements:
                raise LatticeSyntaxError("second 'elements:' line", lineno, col)
            have_elements = True
            for tok in line[len("elements:"):].split():
                if not IDENT.match(tok):
                    raise LatticeSyntaxError(f"bad identifier {tok!r}", lineno, raw.find(tok) + 1)
                if tok in seen:
                    err = DuplicateElement(f"line {lineno}: duplicate element {tok!r}")
                    err.line = lineno
                    raise err
                seen[tok] = lineno
                out.elements.append(tok)
            continue
        if line.startswith("covers:"):
            if not have_elements:
                raise LatticeSyntaxError("'covers:' before 'elements:'", lineno, col)
            in_covers = True
            rest = line[len("covers:"):].strip()
            if rest:
                raise LatticeSyntaxError("cover pairs go on their own lines", lineno, col)
            continue
        if not in_covers:
            raise LatticeSyntaxError(f"unexpected text {line!r}", lineno, col)
        parts = [p.strip() for p in line.split("<")]
        if len(parts) != 2 or not all(IDENT.match(p) for p in parts):
            raise LatticeSyntaxError(f"expected 'a < b', got {line!r}", lineno, col)
        for p in parts:
            if p not in seen:
                err = UnknownElement(f"line {lineno}: unknown element {p!r}")
                err.line = lineno
                raise err
        out.covers.append((parts[0], parts[1]))
    if not have_elements:
        raise LatticeSyntaxError("missing 'elements:' line", None)
    return out


def serialize_lattice(lf: LatticeFile | FiniteLattice) -> str:
    if isinstance(lf, FiniteLattice):
        lf = LatticeFile.from_lattice(lf)
    lines = []
    if lf.name and IDENT.match(lf.name):
        lines.append(f"name: {lf.name}")
    lines.append("elements: " + " ".join(lf.elements))
    lines.append("covers:")
    lines.extend(f"{a} < {b}" for a, b in lf.covers)
    return "\n".join(lines) + "\n"


def load_lattice(path: str) -> FiniteLattice:
    import os

    with open(path, encoding="utf-8") as fh:
        lf = parse_lattice(fh.read())
    if not lf.name:
        lf.name = os.path.splitext(os.path.basename(path))[0]
    return lf.to_lattice()


# ---------------------------------------------------------------------------
# groups


def first_violation(f: LatticeMorphism) -> str | None:
    """Describe the first meet/join/bound that ``f`` fails to preserve."""
    s, t, m = f.source, f.target, f.map
    name = s.elements
    if m[s.bottom] != t.bottom:
        return f"bottom {name[s.bottom]!r} not sent to bottom"
    if m[s.top] != t.top:
        return f"top {name[s.top]!r} not sent to top"
    n = len(s)
    for a in range(n):
        for b in range(a + 1, n):
            if m[s.meet[a, b]] != t.meet[m[a], m[b]]:
                return f"meet of {name[a]!r} and {name[b]!r} not preserved"
            if m[s.join[a, b]] != t.join[m[a], m[b]]:
                return f"join of {name[a]!r} and {name[b]!r} not preserved"
    return None


def check_automorphism(f: LatticeMorphism) -> LatticeMorphism:
    if sorted(f.map) != list(range(len(f.source))):
        raise NotAPermutation("map is not a bijection on the elements")
    why = first_violation(f)
    if why:
        raise NotAnAutomorphism(why)
    return f


def parse_group(text: str, lat: FiniteLattice) -> list[LatticeMorphism]:
    gens = []
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = _strip(raw)
        if not line:
            continue
        if not line.startswith("perm:"):
            raise LatticeSyntaxError("expected 'perm:'", lineno, raw.find(line) + 1)
        mapping = {}
        for tok in line[5:].split():
            m = re.fullmatch(r"([A-Za-z0-9_]+)->([A-Za-z0-9_]+)", tok)
            if not m:
                raise LatticeSyntaxError(f"expected 'a->b', got {tok!r}", lineno, raw.find(tok) + 1)
            a, b = m.groups()
            for e in (a, b):
                if e not in lat._index:
                    err = UnknownElement(f"line {lineno}: unknown element {e!r}")
                    err.line = lineno
                    raise err
            if a in mapping and mapping[a] != b:
                raise NotAPermutation(f"line {lineno}: {a!r} mapped twice")
            mapping[a] = b
        full = tuple(lat.index(mapping.get(e, e)) for e in lat.elements)
        f = LatticeMorphism(lat, lat, full)
        try:
            check_automorphism(f)
        except (NotAPermutation, NotAnAutomorphism) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
        gens.append(f)
    return gens


def serialize_group(gens: Iterable[LatticeMorphism]) -> str:
    lines = []
    for g in gens:
        els = g.source.elements
        moved = [f"{els[i]}->{els[j]}" for i, j in enumerate(g.map) if i != j]
        lines.append(("perm: " + " ".join(moved)).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# output


def _plain(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def emit(result: Any, fmt: str = "json") -> str:
    """Deterministic rendering of a toolkit result.

    ``json``: dict insertion order is kept, no whitespace.  ``tsv``: the
    result must be a sequence of rows.  ``text``: ``str(result)``.
    """
    if fmt == "json":
        return json.dumps(_plain(result), separators=(",", ":"), ensure_ascii=False)
    if fmt == "tsv":
        return "\n".join("\t".join(str(_plain(c)) for c in row) for row in result)
    return str(result)


def points_records(lat: FiniteLattice, points: Sequence[Sequence[int]]) -> list[dict]:
    return [{"point_index": k, "ones": [lat.elements[i] for i, v in enumerate(p) if v]}
            for k, p in enumerate(points)]


def matrix_tsv(rows: Sequence[Sequence], header: Sequence[str] | None = None) -> list[list]:
    out = [list(header)] if header is not None else []
    out.extend([_plain(v) for v in r] for r in rows)
    return out


def to_dot(lat: FiniteLattice) -> str:
    lines = [f'digraph "{lat.name or "L"}" {{', "  rankdir=BT;"]
    lines += [f'  "{e}";' for e in lat.elements]
    lines += [f'  "{lat.elements[a]}" -> "{lat.elements[b]}";' for a, b in lat.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"
