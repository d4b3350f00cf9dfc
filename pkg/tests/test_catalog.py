import pytest

from src.catalog import NAMES, connected_graphs, load_catalog, load_entry
from src.errors import InputError
from src.fourientation import enumerate_classes
from src.matroid import SignedVector, count_spanning_trees


def test_catalog_loads():
    entries = load_catalog()
    assert [e.name for e in entries] == list(NAMES)
    assert all(e.provenance for e in entries)


def test_load_entry_from_path(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"name": "bad", "vertices": 2, "edges": [[1, 2]]}')
    with pytest.raises(InputError) as info:
        load_entry(str(path))
    assert info.value.witness["errors"]
    with pytest.raises(InputError):
        load_entry("no_such_entry")


def test_term_vector(k5me_entry):
    assert k5me_entry.term_vector("2") == SignedVector((-1, 0, 1, 0, 0, -1, 0, 0, 0))
    assert k5me_entry.term_vector("-2") == -k5me_entry.term_vector("2")
    assert k5me_entry.term_vector("12") == SignedVector((-1, 1, 0, 0, 0, -1, 0, 1, 0))
    with pytest.raises(InputError):
        k5me_entry.term_vector("Z")


def test_connected_graph_counts():
    assert sum(1 for _ in connected_graphs(3)) == 5
    with pytest.raises(InputError):
        list(connected_graphs(7))


def test_gioan_count_on_small_graphs():
    for m in connected_graphs(5):
        assert len(enumerate_classes(m)) == len(m.bases) == count_spanning_trees(m)


@pytest.mark.slow
def test_all_graphs_up_to_six_edges():
    graphs = list(connected_graphs(6))
    assert len(graphs) == 52
    for m in graphs:
        assert len(enumerate_classes(m)) == len(m.bases)
