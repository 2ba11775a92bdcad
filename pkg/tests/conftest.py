import pathlib

import pytest

from flowalg.cli import parse_graph
from flowalg.corpus import connected_multigraphs

GRAPH_DIR = pathlib.Path(__file__).resolve().parent.parent / "graphs"


@pytest.fixture(scope="session")
def corpus4():
    return connected_multigraphs(4)


@pytest.fixture(scope="session")
def corpus5():
    return connected_multigraphs(5)


@pytest.fixture(scope="session")
def corpus7():
    return connected_multigraphs(7)


@pytest.fixture(scope="session")
def fig1_left():
    return parse_graph(str(GRAPH_DIR / "fig1_left.g"))


@pytest.fixture(scope="session")
def fig1_right():
    return parse_graph(str(GRAPH_DIR / "fig1_right.g"))


@pytest.fixture(scope="session")
def graph_dir():
    return GRAPH_DIR
