import random
from collections import Counter

import pytest

from latmeas import catalog
from latmeas.errors import SizeCapExceeded, UnknownName
from latmeas.lattice import are_isomorphic, canonical_form, is_automorphism, powerset
from latmeas.spectrum import measurability


@pytest.mark.parametrize("name, size, n", [
    ("m3", 5, 0), ("m2", 4, 2), ("n5", 5, 2), ("hexagon9", 7, 2), ("x7", 8, 2),
    ("chain(5)", 6, 5), ("powerset(3)", 8, 3),
])
def test_named(name, size, n):
    e = catalog.named(name)
    assert e.expected_n == n
    assert len(e.lattice) == size
    assert measurability(e.lattice) == n


def test_unknown_name():
    with pytest.raises(UnknownName):
        catalog.named("m4")


def test_x7_relations():
    # every x_i equals 1 - y in the ring of measures: x_i + y = 1 at each point
    from latmeas.measures import universal_measure

    lat = catalog.named("x7").lattice
    um = universal_measure(lat)
    for i in range(5):
        assert (um(f"x{i}") + um("y")).tolist() == [1, 1]


@pytest.mark.parametrize("size, count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 5), (6, 15), (7, 53), (8, 222)])
def test_enumeration_counts(size, count):
    assert len(catalog.enumerate_all(size)) == count


def test_enumeration_is_deterministic_and_distinct():
    a = catalog.enumerate_all(6)
    b = catalog.enumerate_all(6)
    assert [x.name for x in a] == [x.name for x in b]
    assert len({canonical_form(x) for x in a}) == 15
    for i, x in enumerate(a):
        x.check_laws()
        for y in a[i + 1:]:
            assert not are_isomorphic(x, y)


def test_size_5_contains_m3_once():
    lats = catalog.enumerate_all(5)
    assert [measurability(x) for x in lats].count(0) == 1
    assert any(are_isomorphic(x, catalog.named("m3").lattice) for x in lats)


def test_enum_cap():
    with pytest.raises(SizeCapExceeded):
        catalog.enumerate_all(9)


def test_reference_table_grouping():
    ref = catalog.reference_table()
    assert ref[4] == [2, 3]
    assert Counter(ref[5]) == Counter([4, 3, 3, 0, 2])
    assert Counter(ref[6]) == Counter([5, 4, 4, 4, 3, 3, 1, 1, 2, 2, 1, 1, 3, 0, 0])
    assert sum(len(v) for v in ref.values()) == 25


def test_table_matches_reference():
    rows = catalog.table()
    assert len(rows) == 25
    assert catalog.table_multisets(rows) == catalog.reference_table()


def test_random_lattice_sizes():
    rng = random.Random(0)
    sizes = [len(catalog.random_lattice(rng, max_size=10)) for _ in range(200)]
    assert max(sizes) <= 10 and min(sizes) >= 1
    assert len(set(sizes)) >= 6


def test_powerset_symmetry():
    p3 = powerset(3)
    gens = catalog.powerset_symmetry(3, p3)
    assert len(gens) == 2 and all(is_automorphism(g) for g in gens)
    assert catalog.powerset_symmetry(1) == []
