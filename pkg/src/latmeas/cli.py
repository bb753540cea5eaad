"""Command-line interface: ``latmeas <command> ...``.

Exit status is 0 on success, 1 on a domain error (bad lattice, failed
verification, disagreeing methods) and 2 on a usage error.  With
``--format json`` every result, including errors, is one JSON document on
stdout.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import catalog, hull as hull_mod, lattice_io, linalg, measures, oracles
from .boolpoly import groebner_basis, is_boolean_ring
from .errors import LatticeError, MethodDisagreement
from .lattice import canonical_id, product
from .spectrum import enumerate_points

FORMATS = ("text", "json", "tsv")


class UsageError(Exception):
    pass


class Output:
    """Collects lines so a failing command prints nothing partial."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def result(self, obj, rows=None, text=None):
        if self.fmt == "json":
            self.lines.append(lattice_io.emit(obj, "json"))
        elif self.fmt == "tsv":
            self.lines.append(lattice_io.emit(rows if rows is not None else _kv_rows(obj), "tsv"))
        else:
            self.lines.append(text if text is not None else _kv_text(obj))


def _kv_rows(obj: dict) -> list[list]:
    return [[k, lattice_io.emit(v, "json") if isinstance(v, (dict, list)) else lattice_io._plain(v)]
            for k, v in obj.items()]


def _kv_text(obj: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in _kv_rows(obj))


def _load(path: str):
    try:
        return lattice_io.load_lattice(path)
    except LatticeError as exc:
        exc.file = path
        raise


def _subset_cap(args, lat) -> int | None:
    k = args.max_subset_size
    if k is None:
        return None
    if len(lat) >= 2 and not 2 <= k <= len(lat):
        raise UsageError(f"--max-subset-size must lie in [2, {len(lat)}]")
    return k


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, out: Output) -> int:
    lat = _load(args.file)
    lat.check_laws()
    gb = groebner_basis(lat)
    ring = is_boolean_ring(gb, trials=args.trials, seed=args.seed)
    res = {
        "file": args.file,
        "lattice": lat.name,
        "size": len(lat),
        "covers": len(lat.covers()),
        "distributive": lat.is_distributive(),
        "complemented": lat.is_complemented(),
        "boolean": lat.is_boolean(),
        "canonical_id": canonical_id(lat),
        "seed": args.seed,
        "ring_idempotent": ring.ok,
    }
    out.result(res)
    return 0 if ring.ok else 1


def cmd_n(args, out: Output) -> int:
    lat = _load(args.file)
    k = _subset_cap(args, lat)
    if args.method == "all":
        values = oracles.n_all(lat, k)
        n = values["points"]
    else:
        values = {args.method: oracles.n_value(lat, args.method, k)}
        n = values[args.method]
    res = {"lattice": lat.name, "n": n, "methods": values}
    if args.method == "all":
        res["agree"] = True
    out.result(res, rows=[["method", "n"]] + [[m, v] for m, v in values.items()])
    return 0


def cmd_points(args, out: Output) -> int:
    lat = _load(args.file)
    spec = enumerate_points(lat)
    recs = lattice_io.points_records(lat, spec.points)
    rows = [["point_index", "ones"]] + [[r["point_index"], ",".join(r["ones"])] for r in recs]
    text = "\n".join(f"p{r['point_index']}: {' '.join(r['ones'])}" for r in recs) or "(no points)"
    out.result({"lattice": lat.name, "n": len(spec), "points": recs}, rows=rows, text=text)
    return 0


def cmd_universal(args, out: Output) -> int:
    lat = _load(args.file)
    um = measures.universal_measure(lat)
    table = um.rows()
    header = ["element"] + [f"p{k}" for k in range(um.n)]
    rows = [header] + [[e] + v for e, v in table.items()]
    text = "\n".join(f"{e}: ({', '.join(map(str, v))})" for e, v in table.items())
    out.result({"lattice": lat.name, "n": um.n, "pi": table}, rows=rows, text=text)
    return 0


def cmd_hull(args, out: Output) -> int:
    lat = _load(args.file)
    h = hull_mod.hull(lat)
    v = hull_mod.check_hull(h)
    d = h.d_map()
    res = {"lattice": lat.name, "n": h.n, "hull_size": len(h.hull), "d_map": d, "invariants": v.ok}
    rows = [["element", "D"]] + [[e, ",".join(map(str, s))] for e, s in d.items()]
    out.result(res, rows=rows)
    return 0 if v.ok else 1


def cmd_ortho(args, out: Output) -> int:
    lat = _load(args.file)
    xs = [lat.index(x) for x in args.elements]
    um = measures.universal_measure(lat)
    ys = measures.orthogonalize(um, xs)
    v = measures.check_orthogonal(um, xs, ys)
    steps = []
    acc = None
    for x, y in zip(xs, ys):
        steps.append({
            "x": lat.elements[x],
            "a": None if acc is None else lat.elements[acc],
            "y": [int(t) for t in y],
        })
        acc = x if acc is None else int(lat.join[acc, x])
    res = {"lattice": lat.name, "steps": steps, "ok": v.ok}
    if not v.ok:
        res["detail"] = v.detail
    rows = [["x", "a", "y"]] + [[s["x"], s["a"] or "-", ",".join(map(str, s["y"]))] for s in steps]
    text = "\n".join(f"y{i + 1} = {s['x']}" + (f"(1-{s['a']})" if s["a"] else "") + f" = {tuple(s['y'])}"
                     for i, s in enumerate(steps)) + f"\northogonal: {v.ok}"
    out.result(res, rows=rows, text=text)
    return 0 if v.ok else 1


def cmd_invariant(args, out: Output) -> int:
    lat = _load(args.file)
    with open(args.group, encoding="utf-8") as fh:
        try:
            gens = lattice_io.parse_group(fh.read(), lat)
        except LatticeError as exc:
            exc.file = args.group
            raise
    um = measures.universal_measure(lat)
    space = measures.invariant_space(um, gens)
    check = linalg.nullspace_dimension(linalg.augmented_invariant_matrix(lat, gens))
    if check != space.dimension:
        raise MethodDisagreement({"orbits": space.dimension, "augmented_nullspace": check})
    basis = space.basis(um.n)
    res = {
        "lattice": lat.name,
        "generators": len(gens),
        "dimension": space.dimension,
        "orbits": [list(o) for o in space.orbits],
        "basis": [list(b) for b in basis],
    }
    rows = [["orbit", "points"]] + [[i, ",".join(map(str, o))] for i, o in enumerate(space.orbits)]
    out.result(res, rows=rows)
    return 0


def cmd_product(args, out: Output) -> int:
    a, b = _load(args.file1), _load(args.file2)
    p = product(a, b)
    if args.name:
        p.name = args.name
    text = lattice_io.serialize_lattice(p)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        res = {"output": args.output, "name": p.name, "size": len(p)}
        out.result(res)
    elif out.fmt == "json":
        out.result({"name": p.name, "size": len(p), "lattice": text})
    else:
        out.lines.append(text.rstrip("\n"))
    return 0


def cmd_snf(args, out: Output) -> int:
    lat = _load(args.file)
    m = linalg.constraint_matrix(lat, _subset_cap(args, lat))
    s = linalg.smith_normal_form(m)
    res = {
        "lattice": lat.name,
        "shape": list(m.shape),
        "rank": s.rank,
        "nullity": m.ncols - s.rank,
        "divisors": list(s.divisors),
        "torsion_free": s.torsion_free,
    }
    out.result(res)
    return 0


def cmd_catalog(args, out: Output) -> int:
    if args.name:
        entry = catalog.named(args.name)
        text = lattice_io.serialize_lattice(entry.lattice)
        if out.fmt == "json":
            out.result({"name": entry.name, "expected_n": entry.expected_n, "lattice": text})
        else:
            out.lines.append(text.rstrip("\n"))
        return 0
    if args.size is not None:
        if not 1 <= args.size <= catalog.ENUM_CAP:
            raise UsageError(f"--size must lie in [1, {catalog.ENUM_CAP}]")
        lats = catalog.enumerate_all(args.size)
        recs = [{"canonical_id": lat.name, "n": oracles.n_points(lat)} for lat in lats]
        rows = [["canonical_id", "n"]] + [[r["canonical_id"], r["n"]] for r in recs]
        text = "\n".join(f"{r['canonical_id']}\t{r['n']}" for r in recs) + f"\n{len(recs)} lattices"
        out.result({"size": args.size, "count": len(recs), "lattices": recs}, rows=rows, text=text)
        return 0
    recs = []
    for name in ("m3", "m2", "n5", "chain(3)", "powerset(3)", "hexagon9", "x7"):
        e = catalog.named(name)
        recs.append({"name": e.name, "size": len(e.lattice), "expected_n": e.expected_n,
                     "n": oracles.n_points(e.lattice)})
    rows = [["name", "size", "expected_n", "n"]] + [list(r.values()) for r in recs]
    text = "\n".join(f"{r['name']}: size {r['size']}, n = {r['n']} (expected {r['expected_n']})" for r in recs)
    out.result({"entries": recs}, rows=rows, text=text)
    return 0 if all(r["n"] == r["expected_n"] for r in recs) else 1


def cmd_table(args, out: Output) -> int:
    rows = catalog.table(args.max_size)
    got = catalog.table_multisets(rows)
    ref = catalog.reference_table()
    match = all(got.get(s) == v for s, v in ref.items()) if args.max_size >= 6 else \
        all(got.get(s) == ref[s] for s in range(1, args.max_size + 1))
    tsv = [["size", "canonical_id", "n"]] + [[r.size, r.canonical_id, r.n] for r in rows]
    res = {
        "count": len(rows),
        "rows": [{"size": r.size, "canonical_id": r.canonical_id, "n": r.n} for r in rows],
        "multisets": {str(s): v for s, v in got.items()},
        "matches_reference": match,
    }
    text = lattice_io.emit(tsv, "tsv") + f"\n# {len(rows)} lattices; reference multisets match: {match}"
    out.result(res, rows=tsv, text=text)
    return 0 if match else 1


def cmd_dot(args, out: Output) -> int:
    lat = _load(args.file)
    out.lines.append(lattice_io.to_dot(lat).rstrip("\n"))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default text)")
    common.add_argument("--max-subset-size", type=int, default=None, metavar="K",
                        help="largest subset used by inclusion-exclusion checks (default |X|)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks (default 0)")

    p = argparse.ArgumentParser(prog="latmeas", description="Measures on finite lattices.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check, "validate a lattice file and report its properties")
    sp.add_argument("file")
    sp.add_argument("--trials", type=int, default=100, help="random polynomials for the idempotency check")
    sp = add("n", cmd_n, "measurability n(X)")
    sp.add_argument("file")
    sp.add_argument("--method", choices=oracles.METHODS + ("all",), default="all")
    add("points", cmd_points, "list the 2-valued points").add_argument("file")
    add("universal", cmd_universal, "universal measure table").add_argument("file")
    add("hull", cmd_hull, "Boolean hull and the map D").add_argument("file")
    sp = add("ortho", cmd_ortho, "orthogonal idempotents from a sequence of elements")
    sp.add_argument("file")
    sp.add_argument("elements", nargs="+")
    sp = add("invariant", cmd_invariant, "measures invariant under a group of automorphisms")
    sp.add_argument("file")
    sp.add_argument("--group", required=True, metavar="GFILE")
    sp = add("product", cmd_product, "cartesian product of two lattices")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.add_argument("-o", "--output", default=None)
    sp.add_argument("--name", default=None, help="name of the product lattice")
    add("snf", cmd_snf, "Smith normal form of the constraint matrix").add_argument("file")
    sp = add("catalog", cmd_catalog, "named lattices or all lattices of a given size")
    sp.add_argument("--size", type=int, default=None)
    sp.add_argument("--name", default=None, help="print the named lattice as a lattice file")
    sp = add("table", cmd_table, "measurability of every lattice with at most 6 elements")
    sp.add_argument("--max-size", type=int, default=6, choices=range(1, catalog.ENUM_CAP + 1), metavar="K")
    add("dot", cmd_dot, "Graphviz rendering of the Hasse diagram").add_argument("file")
    return p


def _error(out: Output, exc: Exception, status: int) -> int:
    if isinstance(exc, LatticeError):
        d = exc.to_dict()
    elif isinstance(exc, OSError):
        d = {"error": type(exc).__name__, "message": f"{exc.strerror}: {exc.filename}"}
    else:
        d = {"error": "UsageError", "message": str(exc)}
    if getattr(exc, "file", None):
        d["file"] = exc.file
    if out.fmt == "json":
        print(lattice_io.emit(d, "json"))
    else:
        where = f"{d['file']}: " if "file" in d else ""
        print(f"error: {where}{d['message']}", file=sys.stderr)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        status = args.func(args, out)
    except UsageError as exc:
        print(f"latmeas {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (LatticeError, OSError) as exc:
        if not getattr(exc, "file", None) and getattr(args, "file", None):
            exc.file = args.file
        return _error(out, exc, 1)
    for line in out.lines:
        print(line)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
