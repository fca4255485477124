import pytest

from tropgenus.graph import parse_graph

# a..f -> 0..5: ab ac ad be bf ce df ef
HEX = "0 1\n0 2\n0 3\n1 4\n1 5\n2 4\n3 5\n4 5\n"
C4 = "0 1\n1 2\n2 3\n3 0\n"
TWO_TRIANGLES = "0 1\n1 2\n2 0\n2 3\n3 4\n4 2\n"
TRIANGLE = "0 1\n1 2\n2 0\n"
K4 = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"


@pytest.fixture
def hex_graph():
    return parse_graph(HEX)


@pytest.fixture
def c4():
    return parse_graph(C4)


@pytest.fixture
def two_triangles():
    return parse_graph(TWO_TRIANGLES)
