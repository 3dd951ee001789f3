import pathlib

import pytest

from tokenbound.graph_core import enumerate_nonisomorphic, read_graph6_stream

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def graphs_upto7():
    return {n: list(enumerate_nonisomorphic(n)) for n in range(1, 8)}


@pytest.fixture(scope="session")
def all_small_graphs(graphs_upto7):
    return [g for n in range(1, 8) for g in graphs_upto7[n]]


def load_g6(name: str):
    with open(DATA / name) as fh:
        return [g for _, g in read_graph6_stream(fh)]


@pytest.fixture(scope="session")
def order8():
    return load_g6("order8.g6")


@pytest.fixture(scope="session")
def fc9():
    return load_g6("fc9_sample.g6")
