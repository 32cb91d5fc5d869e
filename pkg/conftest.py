import pytest

from src.algebra import algebra_am
from src.corpus import complete_graph, cycle_graph, named_graph, path_graph, star_graph
from src.graph import EdgeSubset


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long corpus runs (deselect with -m 'not slow')")


def subset(g, *indices):
    return EdgeSubset.from_indices(g.n_edges, indices)


@pytest.fixture
def k2():
    return complete_graph(2)


@pytest.fixture
def k3():
    return complete_graph(3)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def star3():
    return star_graph(3)


@pytest.fixture
def diamond():
    return named_graph("diamond")


@pytest.fixture
def a1():
    return algebra_am(1)


@pytest.fixture
def a2():
    return algebra_am(2)


@pytest.fixture
def a3():
    return algebra_am(3)
