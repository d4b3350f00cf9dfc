from fractions import Fraction

import pytest

from src.config import config
from src.errors import CapExceededError, InputError
from src.matroid import (SignedVector, conformal_decompose, count_spanning_trees, dual, enumerate_bases,
                         from_graph, from_matrix, fundamental_circuit, fundamental_cocircuit, independent_sets,
                         is_coloop, is_loop, rank, signed_circuits, signed_cocircuits, spanning_sets, to_graph)


def test_theta_counts(theta):
    assert theta.matrix == ((-1, -1),)
    assert (theta.n, theta.r) == (2, 1)
    assert enumerate_bases(theta) == [frozenset({0}), frozenset({1})]
    assert set(signed_circuits(theta)) == {SignedVector((1, -1)), SignedVector((-1, 1))}
    assert set(signed_cocircuits(theta)) == {SignedVector((1, 1)), SignedVector((-1, -1))}


def test_dual_of_theta(theta):
    assert dual(theta).matrix == ((-1, 1),)


def test_triangle_directed_cycle(triangle):
    assert set(triangle.circuits) == {SignedVector((1, 1, 1)), SignedVector((-1, -1, -1))}
    assert len(triangle.cocircuits) == 6


@pytest.mark.parametrize("name,bases,circuits,cocircuits", [
    ("single_edge", 1, 0, 2),
    ("path2", 1, 0, 4),
    ("k4", 16, 14, 14),
    ("fig5", 2, 4, 2),
])
def test_catalog_counts(request, name, bases, circuits, cocircuits):
    m = request.getfixturevalue(name)
    assert (len(m.bases), len(m.circuits), len(m.cocircuits)) == (bases, circuits, cocircuits)


def test_k5me_spanning_trees(k5me):
    assert len(k5me.bases) == 75
    assert count_spanning_trees(k5me) == 75
    assert len(k5me.circuits) == 44


def test_matrix_tree_agrees_with_bases(k4, fig5):
    assert count_spanning_trees(k4) == len(k4.bases)
    assert count_spanning_trees(fig5) == len(fig5.bases)


def test_duality_swaps_circuits_and_cocircuits(k4, triangle):
    for m in (k4, triangle):
        assert set(dual(m).circuits) == set(m.cocircuits)
        assert set(dual(m).cocircuits) == set(m.circuits)


def test_orthogonality(k4):
    for c in k4.circuits:
        for d in k4.cocircuits:
            assert c.dot(d.entries) == 0
            shared = c.support & d.support
            if shared:
                products = {c.entries[e] * d.entries[e] for e in shared}
                assert products == {1, -1}


def test_fundamental_circuit_orientation(theta):
    assert fundamental_circuit(theta, {0}, 2) == SignedVector((-1, 1))
    assert fundamental_circuit(theta, {0}, -2) == SignedVector((1, -1))
    assert fundamental_cocircuit(theta, {0}, 1) == SignedVector((1, 1))


def test_fundamental_circuit_rejects_basis_edge(theta):
    with pytest.raises(InputError):
        fundamental_circuit(theta, {0}, 1)
    with pytest.raises(InputError):
        fundamental_cocircuit(theta, {0}, 2)


def test_fundamental_decomposition(k4):
    for b in k4.bases:
        for c in k4.circuits:
            parts = [fundamental_circuit(k4, b, (e + 1) * c.entries[e]) for e in c.support - b]
            assert tuple(sum(p.entries[e] for p in parts) for e in k4.edges) == c.entries


def test_every_circuit_is_fundamental(k4):
    fundamentals = {fundamental_circuit(k4, b, arc) for b in k4.bases
                    for e in k4.edges if e not in b for arc in (e + 1, -(e + 1))}
    assert fundamentals == set(k4.circuits)


def test_conformal_decompose_kernel_vector(k4):
    c = k4.circuits[0]
    assert conformal_decompose(k4, [2 * x for x in c.entries]) == [(Fraction(2), c)]


def test_conformal_decompose_two_disjoint_cycles():
    m = from_matrix([[-1, 0, 1, 0, 0, 0],
                     [1, -1, 0, 0, 0, 0],
                     [0, 0, 0, -1, 0, 1],
                     [0, 0, 0, 1, -1, 0]])
    assert len(m.circuits) == 4
    parts = conformal_decompose(m, [2, 2, 2, -1, -1, -1])
    assert len(parts) == 2
    assert set(parts) == {(Fraction(2), SignedVector((1, 1, 1, 0, 0, 0))),
                          (Fraction(1), SignedVector((0, 0, 0, -1, -1, -1)))}


def test_conformal_decompose_row_space_vector(triangle):
    u = [1, -1, 0]
    assert conformal_decompose(triangle, u) == [(Fraction(1), SignedVector((1, -1, 0)))]


def test_conformal_decompose_rejects_mixed_vector(triangle):
    with pytest.raises(InputError):
        conformal_decompose(triangle, [1, 0, 0])


def test_rank_and_loops(fig5, path2):
    assert rank(fig5, [2]) == 0
    assert is_loop(fig5, 2)
    assert not is_loop(fig5, 0)
    assert is_coloop(path2, 0) and is_coloop(path2, 1)


def test_independent_and_spanning_sets(theta):
    assert set(independent_sets(theta)) == {frozenset(), frozenset({0}), frozenset({1})}
    assert set(spanning_sets(theta)) == {frozenset({0}), frozenset({1}), frozenset({0, 1})}


def test_to_graph(k4):
    g = to_graph(k4)
    assert g.number_of_nodes() == 4
    assert g.number_of_edges() == 6
    assert to_graph(dual(k4)) is None


def test_from_matrix_rejects_non_unimodular():
    with pytest.raises(InputError) as info:
        from_matrix([[1, 1], [1, -1]])
    assert info.value.witness == {"rows": [1, 2], "columns": [1, 2], "determinant": -2}


def test_from_matrix_rejects_bad_entries_and_rank():
    with pytest.raises(InputError):
        from_matrix([[2, 0]])
    with pytest.raises(InputError):
        from_matrix([[1, 0], [1, 0]])
    with pytest.raises(InputError):
        from_matrix([[1, 0], [1]])


def test_from_matrix_tu_cap():
    saved = config.tu_cap
    object.__setattr__(config, "tu_cap", 2)
    try:
        with pytest.raises(CapExceededError) as info:
            from_matrix([[1, 0, 1]])
        assert info.value.witness["cap"] == "TU_CAP"
    finally:
        object.__setattr__(config, "tu_cap", saved)


def test_from_graph_rejects_disconnected():
    with pytest.raises(InputError) as info:
        from_graph(4, [(1, 2), (3, 4)])
    assert info.value.witness["components"] == [[1, 2], [3, 4]]


def test_from_graph_rejects_single_vertex():
    with pytest.raises(InputError):
        from_graph(1, [(1, 1)])


def test_signed_vector_rejects_large_entries():
    with pytest.raises(InputError):
        SignedVector((2, 0))
