"""Finite coset-product arrangements and the graphic arrangement."""

import pytest

from tfpoly.fixtures import fixture
from tfpoly.invariants import omega
from tfpoly.tensionflow import FiniteAbelianGroup
from tfpoly.arrangements import (
    FiniteCosetProduct,
    ambient_product,
    complement_count,
    finite_semilattice,
    graphic_flat_dims,
    graphic_semilattice,
    product_valuation,
    subgroup_closure,
)
from tfpoly.graph import EdgeSubset

Z2 = FiniteAbelianGroup.cyclic(2)
Z4 = FiniteAbelianGroup.cyclic(4)
Z6 = FiniteAbelianGroup.cyclic(6)


def test_subgroup_closure():
    assert subgroup_closure(Z6, [(2,)]) == frozenset({(0,), (2,), (4,)})
    assert subgroup_closure(Z6, []) == frozenset({(0,)})
    assert subgroup_closure(Z4, [(1,)]) == frozenset({(0,), (1,), (2,), (3,)})


def test_coset_product_membership_and_size():
    ambient = [Z4, Z2]
    even_any = FiniteCosetProduct.from_subgroup(ambient, [[(2,)], [(1,)]])
    assert even_any.size == 4
    assert even_any.contains([(0,), (1,)])
    assert not even_any.contains([(1,), (0,)])
    shifted = FiniteCosetProduct.from_subgroup(ambient, [[(2,)], []], shifts=[(1,), (1,)])
    assert shifted.size == 2
    assert shifted.contains([(3,), (1,)])
    assert not shifted.contains([(3,), (0,)])


def test_coset_product_intersection():
    ambient = [Z4]
    evens = FiniteCosetProduct.from_subgroup(ambient, [[(2,)]])
    odds = FiniteCosetProduct.from_subgroup(ambient, [[(2,)]], shifts=[(1,)])
    assert evens.intersect(odds).is_empty()
    whole = ambient_product(ambient)
    assert whole.size == 4
    assert evens.intersect(whole).factors == evens.factors
    assert evens.is_subset_of(whole)
    assert not whole.is_subset_of(evens)


def test_characteristic_polynomial_matches_complement_count():
    # two "hyperplanes" in Z4 x Z2: x even, and y = 0
    ambient = [Z4, Z2]
    members = [
        FiniteCosetProduct.from_subgroup(ambient, [[(2,)], [(1,)]]),
        FiniteCosetProduct.from_subgroup(ambient, [[(1,)], []]),
    ]
    poset = finite_semilattice(ambient, members)
    chi = poset.characteristic_polynomial()
    want = complement_count(ambient, members)
    assert chi.evaluate() == want
    # brute force the complement too
    outside = [
        pt
        for pt in (
            [(a,), (b,)] for a in range(4) for b in range(2)
        )
        if not any(m.contains(pt) for m in members)
    ]
    assert want == len(outside) == 2


def test_mobius_of_single_member():
    ambient = [Z6]
    sub = FiniteCosetProduct.from_subgroup(ambient, [[(3,)]])
    poset = finite_semilattice(ambient, [sub])
    assert poset.mobius(sub) == -1
    assert complement_count(ambient, [sub]) == 4


def test_empty_arrangement_complement_is_everything():
    ambient = [Z4, Z2]
    assert complement_count(ambient, []) == 8


def test_product_valuation_additivity():
    ambient = [Z4]
    evens = FiniteCosetProduct.from_subgroup(ambient, [[(2,)]])
    odds = FiniteCosetProduct.from_subgroup(ambient, [[(2,)]], shifts=[(1,)])
    whole = ambient_product(ambient)
    assert product_valuation([(1, evens), (1, odds)], check_disjoint=True) == whole.size
    assert product_valuation([(1, whole), (-1, evens)]) == odds.size


def test_product_valuation_rejects_overlap():
    ambient = [Z4]
    evens = FiniteCosetProduct.from_subgroup(ambient, [[(2,)]])
    whole = ambient_product(ambient)
    with pytest.raises(ValueError):
        product_valuation([(1, whole), (1, evens)], check_disjoint=True)


# -- graphic backend -----------------------------------------------------------


def test_graphic_flat_dims():
    g = fixture("k3")
    # vanishing on nothing: all tensions (dim 2) and all flows (dim 1)
    assert graphic_flat_dims(g, EdgeSubset.empty(3)) == (2, 1)
    # vanishing on one edge kills the circuit flow and one tension dim
    assert graphic_flat_dims(g, EdgeSubset.of(3, [0])) == (1, 0)
    assert graphic_flat_dims(g, EdgeSubset.full(3)) == (0, 0)


@pytest.mark.parametrize("name", ["edge", "loop", "digon", "k3", "theta", "k4me"])
def test_graphic_characteristic_polynomial_is_omega(name):
    g = fixture(name)
    chi = graphic_semilattice(g).characteristic_polynomial()
    assert chi == omega(g)


def test_graphic_semilattice_of_edgeless_graph():
    chi = graphic_semilattice(fixture("e2")).characteristic_polynomial()
    assert chi == 1
