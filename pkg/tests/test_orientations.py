"""Orientation space and its cut-Eulerian equivalence classes."""

import pytest

from tfpoly.fixtures import fixture, fixture_names
from tfpoly.graph import Orientation, is_acyclic, is_totally_cyclic, restriction
from tfpoly.invariants import tutte
from tfpoly.orientations import (
    all_orientations,
    class_bc_profile,
    class_size_check,
    classify_edges,
    cut_eulerian_classes,
    zero_one_pair_count,
)

# class size multisets, one entry per class
CLASS_SIZES = {
    "e2": [1],
    "edge": [2],
    "loop": [1],
    "p3": [4],
    "digon": [2, 2],
    "k3": [2, 3, 3],
    "theta": [2, 3, 3],
    "k3_loop": [2, 3, 3],
    "k4me": [3, 3, 4, 4, 4, 4, 5, 5],
    "k4": [4] * 16,
}


@pytest.mark.parametrize("name", fixture_names())
def test_orientation_space_size(name):
    g = fixture(name)
    oris = all_orientations(g)
    assert len(oris) == 2 ** len(g.non_loop_ids())
    assert len(set(oris)) == len(oris)
    for o in oris:
        for e in g.loop_ids():
            assert not o.flips[e]  # loops carry a single orientation


@pytest.mark.parametrize("name", fixture_names())
def test_edge_classification_partitions(name):
    g = fixture(name)
    for o in all_orientations(g):
        b, c = classify_edges(g, o)
        assert b.intersection(c).mask == 0
        assert b.union(c).mask == (1 << g.edge_count) - 1
        # bond part restricts acyclically, circuit part totally cyclically
        bg, bo, _ = restriction(g, o, b)
        cg, co, _ = restriction(g, o, c)
        assert is_acyclic(bg, bo)
        assert is_totally_cyclic(cg, co)


@pytest.mark.parametrize("name", sorted(CLASS_SIZES))
def test_class_size_multisets(name):
    g = fixture(name)
    classes = cut_eulerian_classes(g)
    assert sorted(len(c.members) for c in classes) == CLASS_SIZES[name]


@pytest.mark.parametrize("name", fixture_names())
def test_classes_partition_and_count_forests(name):
    g = fixture(name)
    classes = cut_eulerian_classes(g)
    seen = [o for cls in classes for o in cls.members]
    assert len(seen) == len(set(seen)) == 2 ** len(g.non_loop_ids())
    assert len(classes) == tutte(g).evaluate(x=1, y=1)


@pytest.mark.parametrize("name", fixture_names())
def test_representative_is_lex_least(name):
    g = fixture(name)
    for cls in cut_eulerian_classes(g):
        assert cls.representative == min(cls.members, key=lambda o: o.flips)
        assert cls.representative in cls.members


@pytest.mark.parametrize("name", fixture_names())
def test_class_sizes_equal_pinned_pair_counts(name):
    g = fixture(name)
    for cls in cut_eulerian_classes(g):
        assert class_size_check(g, cls) == len(cls.members)


@pytest.mark.parametrize("name", fixture_names())
def test_bc_sizes_constant_within_class(name):
    g = fixture(name)
    for cls in cut_eulerian_classes(g):
        profile = class_bc_profile(g, cls)
        assert profile == {(cls.b_size, cls.c_size)}


def test_zero_one_pair_count_examples():
    g = fixture("k3")
    # acyclic reference orientation: pairs (f tension in {0,1}, g flow in
    # {0,1}) with disjoint supports; the flow part is forced to zero
    o = Orientation.reference(g)
    assert zero_one_pair_count(g, o) == 3
    cyc = Orientation.for_graph(g, [False, False, True])
    assert zero_one_pair_count(g, cyc) == 2


def test_loop_class_is_singleton():
    g = fixture("loop")
    classes = cut_eulerian_classes(g)
    assert len(classes) == 1 and len(classes[0].members) == 1
    assert classes[0].b_size == 0 and classes[0].c_size == 1
