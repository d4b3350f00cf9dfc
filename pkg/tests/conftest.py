import pytest

from src.catalog import load_entry
from src.matroid import from_graph


@pytest.fixture(scope="session")
def theta_entry():
    return load_entry("theta")


@pytest.fixture(scope="session")
def theta(theta_entry):
    return theta_entry.matroid()


@pytest.fixture(scope="session")
def triangle():
    return load_entry("triangle").matroid()


@pytest.fixture(scope="session")
def path2():
    return load_entry("path2").matroid()


@pytest.fixture(scope="session")
def single_edge():
    return load_entry("single_edge").matroid()


@pytest.fixture(scope="session")
def k4_entry():
    return load_entry("k4")


@pytest.fixture(scope="session")
def k4(k4_entry):
    return k4_entry.matroid()


@pytest.fixture(scope="session")
def fig5_entry():
    return load_entry("fig5")


@pytest.fixture(scope="session")
def fig5(fig5_entry):
    return fig5_entry.matroid()


@pytest.fixture(scope="session")
def k5me_entry():
    return load_entry("k5me")


@pytest.fixture(scope="session")
def k5me(k5me_entry):
    return k5me_entry.matroid()


@pytest.fixture(scope="session")
def square():
    """4-cycle: one circuit, four bases."""
    return from_graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
