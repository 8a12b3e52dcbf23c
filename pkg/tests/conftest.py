import pathlib

import pytest

from crncert import parse_network_file

NETWORKS = pathlib.Path(__file__).resolve().parent.parent / "networks"


@pytest.fixture(scope="session")
def ex1():
    return parse_network_file(NETWORKS / "ex1.crn")


@pytest.fixture(scope="session")
def ex2():
    return parse_network_file(NETWORKS / "ex2.crn")


@pytest.fixture(scope="session")
def ex3():
    return parse_network_file(NETWORKS / "ex3.crn")


def species_set(net, *names):
    index = {s.name: s.index for s in net.species}
    return frozenset(index[n] for n in names)


def vec_by_name(net, mapping):
    """Dense tuple in the network's species order from a name -> value dict."""
    return tuple(mapping.get(s.name, 0) for s in net.species)


def names_of(net, members):
    return frozenset(net.species_names[i] for i in members)
