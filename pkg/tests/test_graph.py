"""Multigraph structure: ranks, minors, cuts, circuits, orientations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfpoly.algebra import RationalMatrix, rational_rank
from tfpoly.fixtures import fixture, fixture_names
from tfpoly.graph import (
    EdgeSubset,
    MultiGraph,
    Orientation,
    arc,
    bonds,
    components_count,
    contract,
    coupling,
    delete,
    directed_bonds,
    directed_circuits,
    incidence_matrix,
    is_acyclic,
    is_totally_cyclic,
    rank_nullity,
    restriction,
    subset_rank_table,
)

RANKS = {
    "e2": (0, 0),
    "edge": (1, 0),
    "loop": (0, 1),
    "p3": (2, 0),
    "digon": (1, 1),
    "k3": (2, 1),
    "theta": (1, 2),
    "k3_loop": (2, 2),
    "k4me": (3, 2),
    "k4": (3, 3),
}


@pytest.mark.parametrize("name", sorted(RANKS))
def test_rank_nullity(name):
    assert rank_nullity(fixture(name)) == RANKS[name]


def test_rank_nullity_of_subsets():
    g = fixture("k3")
    assert rank_nullity(g, EdgeSubset.of(3, [])) == (0, 0)
    assert rank_nullity(g, EdgeSubset.of(3, [0])) == (1, 0)
    assert rank_nullity(g, EdgeSubset.of(3, [0, 1])) == (2, 0)
    assert rank_nullity(g, EdgeSubset.of(3, [0, 1, 2])) == (2, 1)


@pytest.mark.parametrize("name", fixture_names())
def test_subset_rank_table_matches_rank_nullity(name):
    g = fixture(name)
    table = subset_rank_table(g)
    assert len(table) == 1 << g.edge_count
    for mask in range(1 << g.edge_count):
        sub = EdgeSubset(mask, g.edge_count)
        assert table[mask] == rank_nullity(g, sub)[0]


def test_components():
    assert components_count(fixture("e2")) == 2
    assert components_count(fixture("k3")) == 1
    assert components_count(MultiGraph(5, ((0, 1), (2, 3)))) == 3


def test_constructor_validates_endpoints():
    with pytest.raises(ValueError):
        MultiGraph(2, ((0, 2),))


# -- minors ----------------------------------------------------------------


def test_delete_keeps_vertices():
    g, emap = delete(fixture("k3"), 1)
    assert g.vertex_count == 3
    assert g.edges == ((0, 1), (0, 2))
    assert emap == {0: 0, 2: 1}


def test_contract_merges_endpoints():
    g, emap = contract(fixture("k3"), 0)
    assert g.vertex_count == 2
    assert g.edge_count == 2
    assert emap == {1: 0, 2: 1}
    # the two remaining triangle sides become parallel edges
    assert rank_nullity(g) == (1, 1)


def test_contract_loop_is_delete():
    g = fixture("k3_loop")
    loop = g.loop_ids()[0]
    assert contract(g, loop)[0] == delete(g, loop)[0]


def test_contract_parallel_edge_makes_loop():
    g, _ = contract(fixture("digon"), 0)
    assert g.edge_count == 1 and g.is_loop(0)


@pytest.mark.parametrize("name", ["k3", "k4me", "digon", "k3_loop"])
def test_deletion_contraction_rank_arithmetic(name):
    g = fixture(name)
    r, _ = rank_nullity(g)
    for e in range(g.edge_count):
        rd, _ = rank_nullity(delete(g, e)[0])
        rc, _ = rank_nullity(contract(g, e)[0])
        if g.is_loop(e):
            assert rd == r and rc == r
        else:
            assert rc == r - 1 and rd in (r, r - 1)


# -- cuts and circuits ---------------------------------------------------------


def test_bonds_of_triangle():
    bs = bonds(fixture("k3"))
    assert sorted(b.members() for b in bs) == [(0, 1), (0, 2), (1, 2)]


def test_bridges_are_singleton_bonds():
    assert sorted(b.members() for b in bonds(fixture("p3"))) == [(0,), (1,)]


def test_loops_have_no_bonds():
    assert bonds(fixture("loop")) == []
    assert [b.members() for b in bonds(fixture("digon"))] == [(0, 1)]


def test_directed_structures_on_reference_k3():
    # reference arcs: 0->1, 1->2, 0->2; acyclic, so no directed circuit
    g = fixture("k3")
    o = Orientation.reference(g)
    assert is_acyclic(g, o)
    assert not is_totally_cyclic(g, o)
    assert directed_circuits(g, o) == []
    assert sorted(b.members() for b in directed_bonds(g, o)) == [(0, 2), (1, 2)]


def test_directed_circuit_appears_after_one_flip():
    g = fixture("k3")
    o = Orientation.for_graph(g, [False, False, True])  # 0->1, 1->2, 2->0
    assert [c.members() for c in directed_circuits(g, o)] == [(0, 1, 2)]
    assert is_totally_cyclic(g, o)


def test_loop_is_a_directed_circuit():
    g = fixture("loop")
    o = Orientation.reference(g)
    assert [c.members() for c in directed_circuits(g, o)] == [(0,)]
    assert is_totally_cyclic(g, o)


def test_arc_respects_flips():
    g = fixture("edge")
    assert arc(g, Orientation.reference(g), 0) == (0, 1)
    assert arc(g, Orientation.for_graph(g, [True]), 0) == (1, 0)


# -- incidence ------------------------------------------------------------------


@pytest.mark.parametrize("name", ["k3", "k4", "digon", "k3_loop", "p3"])
def test_incidence_rank_is_graph_rank(name):
    g = fixture(name)
    m = incidence_matrix(g, Orientation.reference(g))
    assert rational_rank(RationalMatrix.from_rows(m)) == rank_nullity(g)[0]


def test_incidence_loop_column_is_zero():
    g = fixture("k3_loop")
    m = incidence_matrix(g, Orientation.reference(g))
    loop = g.loop_ids()[0]
    assert all(row[loop] == 0 for row in m)


def test_coupling_signs():
    g = fixture("k3")
    ref = Orientation.reference(g)
    flipped = Orientation.for_graph(g, [True, False, False])
    assert coupling(g, ref, ref) == (1, 1, 1)
    assert coupling(g, ref, flipped) == (-1, 1, 1)


def test_restriction():
    g = fixture("k3")
    o = Orientation.for_graph(g, [False, True, False])
    sub, so, emap = restriction(g, o, EdgeSubset.of(3, [1, 2]))
    assert sub.edge_count == 2
    assert emap == {1: 0, 2: 1}
    assert so.flips == (True, False)


# -- edge subsets ----------------------------------------------------------------


def test_edge_subset_operations():
    a = EdgeSubset.of(4, [0, 2])
    b = EdgeSubset.of(4, [2, 3])
    assert a.union(b).members() == (0, 2, 3)
    assert a.intersection(b).members() == (2,)
    assert a.difference(b).members() == (0,)
    assert a.complement().members() == (1, 3)
    assert a.is_subset_of(EdgeSubset.full(4))
    assert EdgeSubset.empty(4).is_subset_of(a)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15))
def test_edge_subset_set_laws(ma, mb):
    a, b = EdgeSubset(ma, 4), EdgeSubset(mb, 4)
    assert a.union(b).complement() == a.complement().intersection(b.complement())
    assert a.difference(b) == a.intersection(b.complement())
