import itertools
import random

import numpy as np
import pytest
from hypothesis import given

from latmeas import catalog
from latmeas.errors import NotAnAutomorphism
from latmeas.lattice import LatticeMorphism, automorphisms, chain, powerset, product, projections
from latmeas.spectrum import brute_force_points, enumerate_points, is_point, measurability, point_action

from conftest import lattices


def test_m3_has_no_points(m3):
    assert len(enumerate_points(m3)) == 0
    assert measurability(m3) == 0


def test_chain1_single_point():
    spec = enumerate_points(chain(1))
    assert spec.points.tolist() == [[0, 1]]


def test_powerset3_points_are_atom_upsets():
    p = powerset(3)
    spec = enumerate_points(p)
    assert len(spec) == 3
    for k, atom in enumerate(["x1", "x2", "x3"]):
        assert spec.ones(k) == [e for e in p.elements if atom in e.split("_")]


def test_chain_points_are_thresholds():
    spec = enumerate_points(chain(4))
    assert spec.points.tolist() == [[0, 1, 1, 1, 1], [0, 0, 1, 1, 1], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]]


@pytest.mark.parametrize("name, n", [("n5", 2), ("m2", 2), ("hexagon9", 2), ("x7", 2)])
def test_named_measurability(name, n):
    assert measurability(catalog.named(name).lattice) == n


@pytest.mark.parametrize("k", range(0, 8))
def test_chain_measurability(k):
    assert measurability(chain(k)) == k


@given(lattices)
def test_matches_brute_force(lat):
    fast = enumerate_points(lat)
    slow = brute_force_points(lat)
    assert np.array_equal(fast.points, slow.points)
    for p in fast.points:
        assert is_point(lat, p)


def test_brute_force_up_to_12_elements():
    rng = random.Random(12)
    for _ in range(5):
        lat = catalog.random_lattice(rng, max_size=12, ground=4)
        assert np.array_equal(enumerate_points(lat).points, brute_force_points(lat).points)
    p = product(powerset(2), chain(2))
    assert np.array_equal(enumerate_points(p).points, brute_force_points(p).points)


def test_powerset_12_is_feasible():
    assert measurability(powerset(12)) == 12


def test_is_point_rejects():
    p = powerset(2)
    assert not is_point(p, [0, 1, 1, 1])  # both atoms 1 but their meet is 0
    assert not is_point(p, [0, 0, 0, 0])
    assert not is_point(p, [0, 1, 2, 1])
    assert is_point(p, [0, 1, 0, 1])


@given(lattices, lattices)
def test_product_additivity(x, y):
    assert measurability(product(x, y)) == measurability(x) + measurability(y)


@given(lattices)
def test_bound(lat):
    if len(lat) >= 2:
        assert measurability(lat) <= len(lat) - 1


@given(lattices, lattices)
def test_surjection_cannot_increase(x, y):
    p1, _ = projections(x, y)
    assert measurability(p1.source) >= measurability(p1.target)


def test_point_action():
    p2 = powerset(2)
    assert point_action(p2, LatticeMorphism.identity(p2)) == (0, 1)
    swap = LatticeMorphism(p2, p2, (0, 2, 1, 3))
    assert point_action(p2, swap) == (1, 0)
    c = chain(4)
    for g in automorphisms(c):
        assert point_action(c, g) == tuple(range(4))
    with pytest.raises(NotAnAutomorphism):
        point_action(p2, LatticeMorphism(p2, p2, (0, 1, 1, 3)))


def test_point_action_composes():
    p3 = powerset(3)
    auts = automorphisms(p3)
    for g, h in itertools.product(auts, repeat=2):
        gh = LatticeMorphism(p3, p3, tuple(g.map[h.map[i]] for i in range(8)))
        sg, sh, sgh = point_action(p3, g), point_action(p3, h), point_action(p3, gh)
        # point o (g h) = (point o g) o h
        assert sgh == tuple(sh[sg[i]] for i in range(3))
