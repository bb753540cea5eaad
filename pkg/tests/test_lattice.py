import itertools

import numpy as np
import pytest
from hypothesis import given

from latmeas import catalog
from latmeas.errors import (
    CycleInCovers,
    DuplicateElement,
    NotALattice,
    NotBounded,
    SizeCapExceeded,
    UnknownElement,
)
from latmeas.lattice import (
    LatticeMorphism,
    are_isomorphic,
    automorphisms,
    canonical_form,
    canonical_id,
    chain,
    find_isomorphism,
    from_covers,
    is_automorphism,
    is_morphism,
    morphisms,
    powerset,
    product,
    projections,
)

from conftest import lattices


def test_m3_structure(m3):
    assert len(m3) == 5
    assert m3.elements[m3.bottom] == "0" and m3.elements[m3.top] == "1"
    a, b = m3.index("x1"), m3.index("x2")
    assert m3.meet[a, b] == m3.bottom and m3.join[a, b] == m3.top
    assert len(m3.covers()) == 6
    assert not m3.is_distributive()
    assert [m3.elements[i] for i in m3.atoms()] == ["x1", "x2", "x3"]


def test_one_element_lattice():
    lat = from_covers(["0"], [])
    assert lat.bottom == lat.top == 0
    assert len(chain(0)) == 1 and len(powerset(0)) == 1


def test_m2_tables(m2):
    a, b = m2.index("a"), m2.index("b")
    assert m2.elements[m2.meet[a, b]] == "0"
    assert m2.elements[m2.join[a, b]] == "1"
    assert m2.is_boolean()


def test_n5_not_distributive(n5):
    assert not n5.is_distributive()
    assert n5.heights().tolist() == [0, 1, 2, 1, 3]


def test_construction_errors():
    with pytest.raises(DuplicateElement):
        from_covers(["0", "0"], [])
    with pytest.raises(UnknownElement):
        from_covers(["0", "1"], [("0", "2")])
    with pytest.raises(CycleInCovers):
        from_covers(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")])
    with pytest.raises(NotBounded):
        from_covers(["a", "b"], [])
    with pytest.raises(SizeCapExceeded):
        from_covers([str(i) for i in range(6)], [], size_cap=5)
    with pytest.raises(SizeCapExceeded):
        powerset(13)


def test_not_a_lattice_reports_pair():
    # two incomparable upper bounds c, d for a and b
    els = ["0", "a", "b", "c", "d", "1"]
    cov = [("0", "a"), ("0", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "1"), ("d", "1")]
    with pytest.raises(NotALattice) as exc:
        from_covers(els, cov)
    assert exc.value.pair == ("a", "b") and exc.value.op == "join"


def test_chain_and_powerset():
    c = chain(3)
    assert c.elements == ("0", "1", "2", "3")
    assert c.is_distributive() and not c.is_complemented()
    p = powerset(3)
    assert len(p) == 8 and p.is_boolean()
    assert p.elements[:4] == ("0", "x1", "x2", "x3")
    assert p.elements[-1] == "x1_x2_x3"


@given(lattices)
def test_lattice_laws(lat):
    lat.check_laws()
    n = len(lat)
    for a, b in itertools.product(range(n), repeat=2):
        assert lat.leq[a, b] == (lat.meet[a, b] == a) == (lat.join[a, b] == b)


def test_product():
    p = product(chain(1), chain(2))
    assert len(p) == 6
    assert p.elements[:3] == ("0_0", "0_1", "0_2")
    p1, p2 = projections(chain(1), chain(2), p)
    assert is_morphism(p1) and is_morphism(p2)
    one = chain(0)
    m3 = catalog.named("m3").lattice
    assert are_isomorphic(product(m3, one), m3)
    assert len(product(catalog.named("m2").lattice, catalog.named("m2").lattice)) == 16


def test_product_name_collisions():
    lat = from_covers(["0", "a_b", "a", "1"], [("0", "a_b"), ("a_b", "a"), ("a", "1")])
    lat2 = from_covers(["b_1", "1"], [("b_1", "1")])
    p = product(lat, lat2)
    assert len(set(p.elements)) == 8


def test_morphism_checks(n5, m3):
    assert is_morphism(LatticeMorphism.identity(n5))
    const = LatticeMorphism(m3, m3, (m3.top,) * 5)
    assert not is_morphism(const)


def test_isomorphism_examples(n5, m2):
    assert not are_isomorphic(n5, m2)
    assert are_isomorphic(n5, n5)
    f = find_isomorphism(powerset(2), m2)
    assert f is not None
    assert is_morphism(LatticeMorphism(powerset(2), m2, f))


def test_automorphism_counts(m3, n5):
    assert len(automorphisms(m3)) == 6
    assert len(automorphisms(n5)) == 1
    assert len(automorphisms(powerset(3))) == 6
    assert len(automorphisms(chain(4))) == 1
    auts = automorphisms(powerset(3))
    assert auts[0].map == tuple(range(8))
    assert all(is_automorphism(g) for g in auts)


def test_canonical_form_agrees_with_isomorphism(up_to_6):
    # both directions: equal forms iff isomorphic
    lats = up_to_6 + [lat.relabel(list(reversed(range(len(lat))))) for lat in up_to_6]
    for x, y in itertools.combinations(lats, 2):
        assert (canonical_form(x) == canonical_form(y)) == are_isomorphic(x, y)


def test_canonical_id_frozen(m3):
    assert canonical_id(m3) == "L5_a20f00"
    assert canonical_id(powerset(2)) == canonical_id(catalog.named("m2").lattice)


def test_isomorphism_is_equivalence(up_to_6):
    lats = up_to_6[:12]
    for x in lats:
        assert are_isomorphic(x, x)
        for y in lats:
            assert are_isomorphic(x, y) == are_isomorphic(y, x)


def test_round_trip_through_covers(up_to_6):
    for lat in up_to_6:
        els, cov = lat.to_covers()
        again = from_covers(els, cov)
        assert np.array_equal(again.leq, lat.leq)


def test_morphism_enumeration():
    # maps chain(2) -> powerset(1) are the 2 points of chain(2)
    assert len(list(morphisms(chain(2), powerset(1)))) == 2
    assert list(morphisms(catalog.named("m3").lattice, powerset(1))) == []
    maps = list(morphisms(powerset(2), powerset(2)))
    assert all(is_morphism(LatticeMorphism(powerset(2), powerset(2), m)) for m in maps)
    # the two automorphisms, plus the maps collapsing onto a sublattice
    assert len(maps) == 4
    pinned = list(morphisms(powerset(2), powerset(2), fixed={1: 1}))
    assert all(m[1] == 1 for m in pinned)


def test_relabel_preserves_structure(n5):
    r = n5.relabel([4, 3, 2, 1, 0])
    assert r.elements == tuple(reversed(n5.elements))
    assert are_isomorphic(r, n5)
