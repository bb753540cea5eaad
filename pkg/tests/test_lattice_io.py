import json

import pytest
from hypothesis import given

from latmeas import catalog
from latmeas.errors import (
    DuplicateElement,
    LatticeSyntaxError,
    NotAnAutomorphism,
    NotAPermutation,
    UnknownElement,
)
from latmeas.lattice import are_isomorphic, chain, powerset
from latmeas.lattice_io import (
    LatticeFile,
    emit,
    parse_group,
    parse_lattice,
    points_records,
    serialize_group,
    serialize_lattice,
    to_dot,
)
from latmeas.measures import universal_measure
from latmeas.spectrum import enumerate_points

from conftest import lattices

M3_TEXT = """# the diamond with three atoms
name: M3
elements: 0 x1 x2 x3 1
covers:
0 < x1
0 < x2
0 < x3
x1 < 1
x2 < 1
x3 < 1
"""


def test_parse_chain():
    lf = parse_lattice("elements: 0 1\ncovers:\n0 < 1\n")
    assert lf.elements == ["0", "1"] and lf.covers == [("0", "1")]
    assert are_isomorphic(lf.to_lattice(), chain(1))


def test_parse_m3():
    lf = parse_lattice(M3_TEXT)
    assert lf.name == "M3" and len(lf.elements) == 5 and len(lf.covers) == 6
    assert are_isomorphic(lf.to_lattice(), catalog.named("m3").lattice)


def test_crlf_and_comments():
    text = M3_TEXT.replace("\n", "\r\n").replace("0 < x1", "0 < x1   # first atom")
    assert parse_lattice(text).covers == parse_lattice(M3_TEXT).covers


def test_duplicate_element_line():
    with pytest.raises(DuplicateElement) as exc:
        parse_lattice("elements: a a\n")
    assert exc.value.line == 1


def test_syntax_errors_carry_position():
    with pytest.raises(LatticeSyntaxError) as exc:
        parse_lattice("elements: 0 1\ncovers:\n0 <= 1\n")
    assert exc.value.line == 3
    with pytest.raises(LatticeSyntaxError) as exc:
        parse_lattice("elements: 0 b-c 1\n")
    assert (exc.value.line, exc.value.column) == (1, 13)
    with pytest.raises(LatticeSyntaxError):
        parse_lattice("covers:\n")
    with pytest.raises(LatticeSyntaxError):
        parse_lattice("# nothing\n")
    with pytest.raises(UnknownElement) as exc:
        parse_lattice("elements: 0 1\ncovers:\n0 < 2\n")
    assert exc.value.line == 3


@given(lattices)
def test_serialize_round_trip(lat):
    text = serialize_lattice(lat)
    lf = parse_lattice(text)
    assert serialize_lattice(lf) == text
    assert are_isomorphic(lf.to_lattice(), lat)
    assert lf.to_lattice().elements == lat.elements


def test_serialize_is_lf_only():
    text = serialize_lattice(parse_lattice(M3_TEXT.replace("\n", "\r\n")))
    assert "\r" not in text and text.endswith("\n")


def test_parse_group_identity_and_swap():
    p3 = powerset(3)
    (ident,) = parse_group("perm:\n", p3)
    assert ident.map == tuple(range(8))
    (swap,) = parse_group("perm: x1->x2 x2->x1 x1_x3->x2_x3 x2_x3->x1_x3\n", p3)
    assert swap.map[1] == 2 and swap.map[2] == 1
    assert serialize_group([swap]) == "perm: x1->x2 x2->x1 x1_x3->x2_x3 x2_x3->x1_x3\n"


def test_parse_group_errors(n5):
    with pytest.raises(NotAnAutomorphism):
        parse_group("perm: a->c c->a\n", n5)  # a sits below b, c does not
    with pytest.raises(NotAPermutation):
        parse_group("perm: a->b\n", n5)
    with pytest.raises(UnknownElement):
        parse_group("perm: a->z\n", n5)
    with pytest.raises(LatticeSyntaxError):
        parse_group("a->b\n", n5)
    # the atom swap alone is not an automorphism of powerset(3)
    with pytest.raises(NotAnAutomorphism):
        parse_group("perm: x1->x2 x2->x1\n", powerset(3))


def test_emit_measurability():
    assert emit({"lattice": "M3", "n": 0}) == '{"lattice":"M3","n":0}'


def test_emit_points_and_universal():
    c1 = chain(1)
    recs = points_records(c1, enumerate_points(c1).points)
    assert emit(recs) == '[{"point_index":0,"ones":["1"]}]'
    um = universal_measure(chain(3))
    assert json.loads(emit(um.rows())) == {"0": [0, 0, 0], "1": [1, 0, 0], "2": [1, 1, 0], "3": [1, 1, 1]}


def test_emit_fractions_and_tsv():
    from fractions import Fraction

    assert emit([Fraction(1, 2), Fraction(4, 2)]) == '["1/2",2]'
    assert emit([["a", 1], ["b", Fraction(1, 3)]], "tsv") == "a\t1\nb\t1/3"


def test_dot_export(m2):
    dot = to_dot(m2)
    assert dot.startswith('digraph "m2"') and '"0" -> "a";' in dot


def test_lattice_file_from_lattice(n5):
    lf = LatticeFile.from_lattice(n5)
    assert lf.name == "n5" and lf.elements == list(n5.elements)
