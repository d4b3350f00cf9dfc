import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.catalog import NAMES, connected_graphs, load_entry
from src.errors import InputError
from src.fourientation import (EdgeState, Fourientation, all_orientations, bfs_equivalent, circuit_classes,
                               class_difference, class_equivalent, class_of, cocircuit_classes, contains,
                               enumerate_classes, four_algebra, parse_orientation, potential_circuits,
                               potential_cocircuits, reverse, vectors_in)
from src.matroid import SignedVector, VectorKind, independent_sets, spanning_sets


def fourientations(n):
    return st.text(alphabet="o+-b", min_size=n, max_size=n).map(Fourientation.parse)


def test_parse_and_format():
    f = Fourientation.parse("o+-b")
    assert f.states == (EdgeState.EMPTY, EdgeState.PLUS, EdgeState.MINUS, EdgeState.BI)
    assert str(f) == "o+-b"
    assert f.arcs() == frozenset({2, -3, 4, -4})


def test_bad_character():
    with pytest.raises(InputError):
        Fourientation.parse("+x")


def test_algebra():
    f = Fourientation.parse("o+-b")
    assert str(f.negate()) == "o-+b"
    assert str(f.complement()) == "b-+o"
    assert str(f.minus_complement()) == "b+-o"
    assert str(f.restrict({1, 3})) == "o+ob"
    assert four_algebra(f)["complement"] == f.complement()


def test_intersect_and_union():
    a, b = Fourientation.parse("b+"), Fourientation.parse("+b")
    assert str(a.intersect(b)) == "++"
    assert str(a.union(b)) == "bb"


def test_from_arcs():
    assert str(Fourientation.from_arcs([1, -1, 2], 2)) == "b+"
    with pytest.raises(InputError):
        Fourientation.from_arcs([3], 2)


def test_orientation_views():
    o = parse_orientation("+-")
    assert o.mask() == 0b10
    assert o.signs() == (1, -1)
    assert Fourientation.from_mask(0b10, 2) == o
    with pytest.raises(InputError):
        parse_orientation("+o")


def test_contains():
    assert contains(Fourientation.parse("+b"), SignedVector((1, -1)))
    assert not contains(Fourientation.parse("+-"), SignedVector((-1, 1)))


def test_potential_vectors_on_theta(theta):
    assert potential_circuits(theta, Fourientation.parse("+-")) == [SignedVector((1, -1))]
    assert potential_cocircuits(theta, Fourientation.parse("+-")) == []
    assert potential_cocircuits(theta, Fourientation.parse("++")) == [SignedVector((1, 1))]


@settings(max_examples=200, deadline=None)
@given(f=fourientations(6))
def test_exclusivity_on_k4(k4, f):
    circuit_edges = frozenset().union(*(c.support for c in potential_circuits(k4, f)))
    cocircuit_edges = frozenset().union(*(d.support for d in potential_cocircuits(k4, f)))
    assert not circuit_edges & cocircuit_edges


@settings(max_examples=200, deadline=None)
@given(f=fourientations(6))
def test_one_way_arcs_are_painted_once(k4, f):
    circuit_edges = frozenset().union(*(c.support for c in potential_circuits(k4, f)))
    cocircuit_edges = frozenset().union(*(d.support for d in potential_cocircuits(k4, f)))
    for e in f.edges_in(EdgeState.PLUS, EdgeState.MINUS):
        assert (e in circuit_edges) != (e in cocircuit_edges)


def test_theta_classes(theta):
    classes = enumerate_classes(theta)
    assert [str(c.canonical_rep) for c in classes] == ["++", "+-"]
    assert {str(o) for o in classes[0].members} == {"++", "--"}
    assert {str(o) for o in classes[1].members} == {"+-", "-+"}


@pytest.mark.parametrize("name", ["single_edge", "theta", "triangle", "path2", "k4", "fig5"])
def test_class_count_equals_basis_count(request, name):
    m = request.getfixturevalue(name)
    assert len(enumerate_classes(m)) == len(m.bases)


def test_partial_class_counts(k4):
    assert len(circuit_classes(k4)) == len(independent_sets(k4))
    assert len(cocircuit_classes(k4)) == len(spanning_sets(k4))


@pytest.mark.parametrize("name", ["theta", "triangle", "path2", "fig5", "square"])
def test_projection_test_matches_bfs(request, name):
    m = request.getfixturevalue(name)
    for o1, o2 in itertools.combinations(all_orientations(m), 2):
        assert class_equivalent(m, o1, o2) == bfs_equivalent(m, o1, o2)


def small_matroids():
    named = [(name, load_entry(name).matroid()) for name in NAMES]
    graphs = [(f"graph{i}", m) for i, m in enumerate(connected_graphs(6))]
    for label, m in named + graphs:
        if m.n <= 8:
            marks = pytest.mark.slow if m.n > 4 else ()
            yield pytest.param(m, id=f"{label}-n{m.n}", marks=marks)


@pytest.mark.parametrize("m", small_matroids())
def test_projection_test_matches_bfs_on_small_matroids(m):
    for o1, o2 in itertools.combinations(all_orientations(m), 2):
        assert class_equivalent(m, o1, o2) == bfs_equivalent(m, o1, o2), (str(o1), str(o2))


def test_class_difference_on_theta(theta):
    circuits, cocircuits = class_difference(theta, parse_orientation("++"), parse_orientation("--"))
    assert circuits == [] and cocircuits == [SignedVector((1, 1))]
    circuits, cocircuits = class_difference(theta, parse_orientation("+-"), parse_orientation("-+"))
    assert circuits == [SignedVector((1, -1))] and cocircuits == []


def test_class_difference_rejects_other_class(theta):
    with pytest.raises(InputError):
        class_difference(theta, parse_orientation("++"), parse_orientation("+-"))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_class_difference_reverses_into_target(k4, data):
    cls = data.draw(st.sampled_from(enumerate_classes(k4)))
    o1 = data.draw(st.sampled_from(cls.members))
    o2 = data.draw(st.sampled_from(cls.members))
    circuits, cocircuits = class_difference(k4, o1, o2)
    vectors = circuits + cocircuits
    for a, b in itertools.combinations(vectors, 2):
        assert not a.support & b.support
    assert all(contains(o1, v) for v in vectors)
    assert reverse(o1, vectors) == o2


def test_class_of_and_vectors_in(theta):
    o = parse_orientation("-+")
    assert class_of(theta, o).canonical_rep == parse_orientation("+-")
    assert vectors_in(theta, o, VectorKind.CIRCUIT) == [SignedVector((-1, 1))]
