import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crncert import (
    EnumerationCapError,
    all_semi_locking_sets,
    catalog_with_count,
    is_locking,
    is_semi_locking,
    minimal_semi_locking_sets,
    parse_network,
)
from crncert.randomnet import random_cycle_network, random_network

from conftest import names_of, species_set


def brute_force_minimal(net):
    m = net.num_species
    semi = [
        frozenset(i for i in range(m) if w >> i & 1)
        for w in range(1, 1 << m)
        if is_semi_locking(net, [i for i in range(m) if w >> i & 1])
    ]
    return {s for s in semi if not any(o < s for o in semi)}


def test_is_semi_locking_examples(ex1):
    assert is_semi_locking(ex1, species_set(ex1, "A", "B", "E"))
    # B + C -> E produces E but consumes neither B nor C from {E}
    assert not is_semi_locking(ex1, species_set(ex1, "E"))
    assert is_semi_locking(ex1, range(ex1.num_species))


def test_is_locking_examples(ex2, ex3):
    assert is_locking(ex3, species_set(ex3, "A", "B"))
    assert is_locking(ex2, species_set(ex2, "A", "C"))
    assert is_locking(ex2, range(ex2.num_species))
    assert not is_locking(ex2, species_set(ex2, "C"))


def test_nonempty_required(ex1):
    with pytest.raises(ValueError):
        is_semi_locking(ex1, [])
    with pytest.raises(ValueError):
        is_locking(ex1, [])


def test_minimal_sets_golden(ex1, ex2, ex3):
    got1 = {names_of(ex1, e.species) for e in minimal_semi_locking_sets(ex1).entries}
    assert got1 == {
        frozenset("ABE"), frozenset("ACE"), frozenset("CDE"),
    }
    got2 = {names_of(ex2, e.species) for e in minimal_semi_locking_sets(ex2).entries}
    assert got2 == {frozenset("AB"), frozenset("AC")}
    cat3 = minimal_semi_locking_sets(ex3)
    assert [names_of(ex3, e.species) for e in cat3.entries] == [frozenset("AB")]
    assert cat3.entries[0].locking


def test_deterministic_order(ex1):
    entries = minimal_semi_locking_sets(ex1).entries
    keys = [(len(e.species), tuple(sorted(e.species))) for e in entries]
    assert keys == sorted(keys)


def test_cap_exceeded():
    lines = [f"X{i} <-> X{i+1} ; kf=1, kr=1" for i in range(21)]
    net = parse_network("\n".join(lines))
    with pytest.raises(EnumerationCapError, match="too large for exhaustive enumeration"):
        minimal_semi_locking_sets(net)
    with pytest.raises(EnumerationCapError):
        all_semi_locking_sets(net)


def test_catalog_with_count(ex2):
    cat = catalog_with_count(ex2)
    # {A,B}, {A,C}, {A,B,C} are all the semi-locking sets of the chain
    assert cat.all_semi_locking_count == 3
    assert len(cat.entries) == 2


def test_catalog_json(ex3):
    doc = minimal_semi_locking_sets(ex3).to_json_list(ex3.species_names)
    assert doc == [{"species": ["A", "B"], "locking": True}]


@given(st.integers(0, 10_000))
@settings(max_examples=80, deadline=None)
def test_minimal_sets_match_brute_force(seed):
    net = random_network(np.random.default_rng(seed))
    got = set(minimal_semi_locking_sets(net).minimal_sets)
    assert got == brute_force_minimal(net)


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_every_semi_locking_set_contains_a_minimal_one(seed):
    net = random_network(np.random.default_rng(seed))
    minimal = set(minimal_semi_locking_sets(net).minimal_sets)
    for w in all_semi_locking_sets(net):
        assert any(s <= w for s in minimal)


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_union_of_semi_locking_is_semi_locking(seed):
    rng = np.random.default_rng(seed)
    net = random_network(rng)
    catalog = all_semi_locking_sets(net)
    if len(catalog) < 2:
        return
    a, b = (catalog[i] for i in rng.choice(len(catalog), size=2))
    assert is_semi_locking(net, a | b)


@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_weakly_reversible_single_class_siphons_are_locking(seed):
    net = random_cycle_network(np.random.default_rng(seed))
    for entry in minimal_semi_locking_sets(net).entries:
        assert entry.locking
