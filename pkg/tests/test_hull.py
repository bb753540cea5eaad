import pytest
from hypothesis import given

from latmeas import catalog
from latmeas.errors import NotBoolean, SizeCapExceeded, TargetNotBoolean
from latmeas.hull import (
    boolean_ring_structure,
    check_hull,
    check_naturality,
    generated_subalgebra,
    hull,
    induced_point_map,
    verify_universal_property,
)
from latmeas.lattice import LatticeMorphism, are_isomorphic, chain, is_morphism, morphisms, powerset, product, projections
from latmeas.spectrum import measurability

from conftest import lattices, small_lattices


def test_n5_and_m2_hulls(n5, m2):
    hn, hm = hull(n5), hull(m2)
    assert len(hn.hull) == len(hm.hull) == 4
    assert are_isomorphic(hn.hull, hm.hull)
    assert hn.d_map() == {"0": [], "a": [0], "b": [0], "c": [1], "1": [0, 1]}


def test_m3_hull_is_trivial(m3):
    h = hull(m3)
    assert h.n == 0 and len(h.hull) == 1
    assert set(h.d_masks) == {0}


def test_powerset_hull_is_isomorphism():
    p3 = powerset(3)
    h = hull(p3)
    d = h.as_morphism()
    assert is_morphism(d) and sorted(d.map) == list(range(8))


@given(lattices)
def test_hull_invariants(lat):
    h = hull(lat)
    assert check_hull(h)
    assert is_morphism(h.as_morphism())
    assert len(generated_subalgebra(h)) == len(h.hull)
    assert measurability(h.hull) == measurability(lat)


def test_no_maps_from_trivial_lattice():
    assert list(morphisms(chain(0), chain(1))) == []
    assert list(morphisms(chain(0), chain(0))) == [(0,)]


def test_universal_property_examples(m3):
    assert verify_universal_property(chain(2), powerset(1))
    v = verify_universal_property(m3, powerset(1))
    assert v and v.witness == 0  # no map M3 -> 2 exists, so nothing to factor
    for k in (1, 2, 3):
        p = powerset(k)
        assert verify_universal_property(p, p, cap=8)


@given(small_lattices)
def test_universal_property_random(lat):
    if len(lat) <= 6:
        assert verify_universal_property(lat, powerset(2))


def test_universal_property_errors(n5):
    with pytest.raises(TargetNotBoolean):
        verify_universal_property(chain(2), n5)
    with pytest.raises(SizeCapExceeded):
        verify_universal_property(powerset(3), powerset(1))
    with pytest.raises(SizeCapExceeded):
        verify_universal_property(chain(2), powerset(5))


def test_boolean_ring_structure(n5):
    for k in range(4):
        assert boolean_ring_structure(powerset(k))
    assert boolean_ring_structure(catalog.named("m2").lattice)
    with pytest.raises(NotBoolean):
        boolean_ring_structure(n5)
    with pytest.raises(NotBoolean):
        boolean_ring_structure(chain(2))


def test_naturality_projections():
    for x, y in [(chain(1), chain(2)), (catalog.named("n5").lattice, catalog.named("m2").lattice)]:
        for f in projections(x, y):
            assert check_naturality(f)


@given(small_lattices, small_lattices)
def test_naturality_all_maps(x, y):
    for fm in morphisms(x, y, limit=20):
        f = LatticeMorphism(x, y, fm)
        assert check_naturality(f)


def test_induced_point_map_of_projection():
    x, y = chain(1), chain(2)
    p1, p2 = projections(x, y, product(x, y))
    # product points in order: (0,1,1,0,1,1), (0,0,1,0,0,1), (0,0,0,1,1,1)
    assert induced_point_map(p1) == (2,)
    assert induced_point_map(p2) == (0, 1)
