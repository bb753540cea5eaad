import random

import pytest
from hypothesis import given, strategies as st

from latmeas import catalog
from latmeas.boolpoly import (
    BoolPoly,
    MeasureIdeal,
    buchberger,
    build_ideal,
    format_monomial,
    groebner_basis,
    is_boolean_ring,
    is_groebner,
    normal_form,
    order_key,
    random_poly,
    standard_monomials,
)
from latmeas.lattice import chain, powerset
from latmeas.spectrum import measurability

from conftest import lattices

x = BoolPoly.var


def test_arithmetic_mod_two():
    a, b = x(0), x(1)
    assert a + a == 0
    assert a * a == a
    assert (a + b) * (a + b) == a + b
    assert (a + 1) * a == 0
    assert BoolPoly([3, 3, 1]) == x(0)


def test_degrevlex_order():
    ms = [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0]
    ranked = sorted(ms, key=order_key, reverse=True)
    # degree first; ties broken with x0 > x1 > x2 in reverse lex
    assert ranked == [0b011, 0b101, 0b110, 0b001, 0b010, 0b100, 0]


def test_format():
    assert format_monomial(0b101, ["0", "a", "b"]) == "[0]*b"
    assert (x(1) * x(2) + 1).format(["0", "a", "b"]) == "a*b + 1"


def test_chain1_ideal():
    gens = build_ideal(chain(1)).generators
    assert {x(0), x(1) + 1} <= set(gens)
    # the remaining pair relation x0 x1 + x0 reduces to zero modulo x0
    assert set(gens) - {x(0), x(1) + 1} == {x(0) * x(1) + x(0)}
    assert groebner_basis(chain(1)).formatted() == ["[1] + 1", "[0]"]


def test_m2_ideal(m2):
    gb = groebner_basis(m2)
    a, b = x(m2.index("a")), x(m2.index("b"))
    assert normal_form(a * b, gb) == 0
    assert normal_form(a + b + a * b + 1, gb) == 0
    ideal = build_ideal(m2)
    assert a * b + x(m2.index("0")) in ideal.generators


def test_m3_basis_is_one(m3):
    gb = groebner_basis(m3)
    assert gb.basis == (BoolPoly.one(),)
    assert normal_form(BoolPoly.one(), gb) == 0
    assert standard_monomials(gb) == []


def test_empty_ideal():
    gb = buchberger(MeasureIdeal(3, ()))
    assert gb.basis == ()
    assert len(standard_monomials(gb)) == 8


def test_frozen_bases(m2, n5):
    assert groebner_basis(m2).formatted() == ["[1] + 1", "a + b + 1", "[0]"]
    assert groebner_basis(n5).formatted() == ["[1] + 1", "b + c + 1", "a + c + 1", "[0]"]


def test_n5_join_generator(n5):
    gb = groebner_basis(n5)
    a, c = n5.index("a"), n5.index("c")
    j = int(n5.join[a, c])
    assert normal_form(x(j) + x(a) + x(c) + x(a) * x(c), gb) == 0


@pytest.mark.parametrize("lat, n", [(chain(3), 3), (powerset(3), 3), (powerset(4), 4)])
def test_standard_monomial_counts(lat, n):
    assert len(standard_monomials(groebner_basis(lat))) == n


@given(lattices)
def test_groebner_matches_points(lat):
    gb = groebner_basis(lat)
    assert is_groebner(gb)
    assert len(standard_monomials(gb)) == measurability(lat)
    for g in build_ideal(lat).generators:
        assert normal_form(g, gb) == 0


@given(lattices, st.integers(0, 2**16))
def test_normal_form_is_canonical(lat, seed):
    # p and p + (a multiple of a generator) have the same normal form
    gb = groebner_basis(lat)
    rng = random.Random(seed)
    gens = build_ideal(lat).generators
    p = random_poly(len(lat), rng)
    q = p + random_poly(len(lat), rng) * gens[rng.randrange(len(gens))]
    assert normal_form(p, gb) == normal_form(q, gb)
    nf = normal_form(p, gb)
    leads = gb.leads
    assert all(not any(t & lt == lt for lt in leads) for t in nf.terms)


def test_is_boolean_ring(n5, m3):
    assert is_boolean_ring(groebner_basis(n5), trials=100, seed=3)
    assert is_boolean_ring(groebner_basis(m3), trials=20, seed=0)
    for v in range(5):
        assert normal_form(x(v) * x(v), groebner_basis(n5)) == normal_form(x(v), groebner_basis(n5))
