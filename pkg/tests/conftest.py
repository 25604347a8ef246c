import pytest

from cubeaut import DefiningGraph, build_alphabet

GRAPH_DATA = {
    "z": (("a",), ()),
    "z2": (("a", "b"), (("a", "b"),)),
    "f2": (("a", "b"), ()),
    "c5": (("a", "b", "c", "d", "e"),
           (("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"))),
    "ck": (("a", "b", "c", "d"),
           (("a", "b"), ("b", "c"), ("c", "d"))),
}


def make_alphabet(name):
    gens, edges = GRAPH_DATA[name]
    return build_alphabet(DefiningGraph(name, list(gens), [list(e) for e in edges]))


@pytest.fixture(scope="session")
def z():
    return make_alphabet("z")


@pytest.fixture(scope="session")
def z2():
    return make_alphabet("z2")


@pytest.fixture(scope="session")
def f2():
    return make_alphabet("f2")


@pytest.fixture(scope="session")
def c5():
    return make_alphabet("c5")


@pytest.fixture(scope="session")
def ck():
    return make_alphabet("ck")


@pytest.fixture(scope="session")
def all_alphabets(z, z2, f2, c5, ck):
    return {"z": z, "z2": z2, "f2": f2, "c5": c5, "ck": ck}
