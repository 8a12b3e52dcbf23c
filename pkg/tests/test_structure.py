from fractions import Fraction

import numpy as np

from hypothesis import given, settings
from hypothesis import strategies as st

from crncert import (
    ReactionNetwork,
    conservation_basis,
    is_weakly_reversible,
    linkage_classes,
    parse_network,
    reaction_vector,
    stoichiometric_basis,
    structure_report,
)
from crncert.randomnet import random_network
from crncert.ratlin import canonical_basis, dot

from conftest import vec_by_name

def test_linkage_classes_counts(ex1, ex3):
    assert [len(b) for b in linkage_classes(ex1)] == [4]
    assert [len(b) for b in linkage_classes(ex3)] == [2, 2]
    assert [len(b) for b in linkage_classes(parse_network("A -> B ; k=1"))] == [2]

def test_weak_reversibility(ex2):
    assert is_weakly_reversible(ex2)
    assert not is_weakly_reversible(parse_network("A -> B ; k=1"))
    cycle = parse_network("A -> B ; k=1\nB -> C ; k=1\nC -> A ; k=1")
    assert is_weakly_reversible(cycle)
    # one irreversible edge hanging off a cycle breaks it
    tail = parse_network("A -> B ; k=1\nB -> A ; k=1\nB -> C ; k=1")
    assert not is_weakly_reversible(tail)

def test_stoichiometric_basis_golden(ex1, ex2):
    basis = stoichiometric_basis(ex1)
    assert len(basis) == 3
    expected_rows = [
        vec_by_name(ex1, {"A": 1, "D": 1, "E": -1}),
        vec_by_name(ex1, {"B": 1, "D": 2, "E": -2}),
        vec_by_name(ex1, {"C": 1, "D": -2, "E": 1}),
    ]
    assert canonical_basis(expected_rows) == basis.vectors
    assert len(stoichiometric_basis(ex2)) == 2

def test_stoichiometric_basis_trivial():
    net = parse_network("A <-> B ; kf=1, kr=1")
    basis = stoichiometric_basis(net)
    assert basis.vectors == ((1, -1),)

def test_conservation_basis_golden(ex2, ex3):
    assert conservation_basis(ex2).vectors == ((1, 1, 1),)
    assert conservation_basis(ex3).vectors == ((1, 1, 1),)
    net = parse_network("A <-> B ; kf=1, kr=1")
    assert conservation_basis(net).vectors == ((1, 1),)

def test_structure_report_golden(ex1, ex2, ex3):
    for net, expected in ((ex1, (4, 1, 3)), (ex2, (3, 1, 2)), (ex3, (4, 2, 2))):
        rep = structure_report(net)
        assert (rep.n, rep.l, rep.s) == expected
        assert rep.deficiency == 0
        assert rep.weakly_reversible
        assert rep.deficiency_nonnegative

def test_report_json_fields(ex1):
    doc = structure_report(ex1).to_json_dict()
    assert set(doc) == {
        "n", "l", "s", "deficiency", "weakly_reversible",
        "linkage_classes", "s_basis", "conservation_basis",
    }
    assert doc["linkage_classes"] == [["2A + C", "A + D", "C + B", "E"]]

@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_basis_orthogonality_and_dimension(seed):
    net = random_network(np.random.default_rng(seed))
    m = net.num_species
    s_basis = stoichiometric_basis(net)
    cons = conservation_basis(net)
    assert len(s_basis) + len(cons) == m
    for u in s_basis.vectors:
        for w in cons.vectors:
            assert dot(u, w) == Fraction(0)

@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_deficiency_nonnegative(seed):
    net = random_network(np.random.default_rng(seed), allow_empty_complex=True)
    assert structure_report(net).deficiency >= 0

@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_exact_rank_matches_svd_oracle(seed):
    net = random_network(np.random.default_rng(seed))
    vectors = np.array(
        [reaction_vector(r, net.num_species) for r in net.reactions], dtype=float
    )
    svals = np.linalg.svd(vectors, compute_uv=False)
    float_rank = int(np.sum(svals > 1e-9))
    assert len(stoichiometric_basis(net)) == float_rank

@given(st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_graph_structure_matches_networkx(seed):
    import networkx as nx

    net = random_network(np.random.default_rng(seed), max_species=6, max_reactions=8)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(net.complexes)))
    idx = net.complex_index
    for r in net.reactions:
        graph.add_edge(idx[r.source], idx[r.product])

    expected_classes = {
        frozenset(c) for c in nx.connected_components(graph.to_undirected())
    }
    assert {frozenset(b) for b in linkage_classes(net)} == expected_classes

    comp_of = {}
    for cid, comp in enumerate(nx.strongly_connected_components(graph)):
        for node in comp:
            comp_of[node] = cid
    expected_wr = all(comp_of[u] == comp_of[v] for u, v in graph.edges)
    assert is_weakly_reversible(net) == expected_wr


@given(st.integers(0, 10_000), st.randoms())
@settings(max_examples=40, deadline=None)
def test_linkage_classes_invariant_under_reaction_permutation(seed, rnd):
    net = random_network(np.random.default_rng(seed))
    shuffled = list(net.reactions)
    rnd.shuffle(shuffled)
    permuted = ReactionNetwork(net.species, tuple(shuffled))
    original = {frozenset(net.complexes[i] for i in block) for block in linkage_classes(net)}
    after = {
        frozenset(permuted.complexes[i] for i in block) for block in linkage_classes(permuted)
    }
    assert original == after

def test_negative_deficiency_is_impossible_on_fixtures(ex1, ex2, ex3):
    for net in (ex1, ex2, ex3):
        assert structure_report(net).deficiency_nonnegative
