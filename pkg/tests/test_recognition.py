import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graph_of
from oracles import brute_is_tp, random_graph
from test_graph import graphs
from tpkernel.generate import GenSpec, gen_tp_graph
from tpkernel.graph import Graph, InvalidInputError, connected_components, induced_subgraph, maximal_cliques
from tpkernel.recognition import (
    UCD,
    NotTriviallyPerfectError,
    build_ucd,
    check_nested_family,
    find_obstruction,
    is_trivially_perfect,
    tp_characterization_check,
    universal_clique,
    validate_ucd,
)

C4 = graph_of(4, "01 12 23 03")
P4 = graph_of(4, "01 12 23")
P3 = graph_of(3, "01 12")
K13 = graph_of(4, "01 02 03")
C5 = graph_of(5, "01 12 23 34 04")


def test_obstruction_examples():
    obs = find_obstruction(P4)
    assert obs is not None and obs.kind == "P4" and sorted(obs.vertices) == [0, 1, 2, 3]
    assert find_obstruction(Graph.complete(5)) is None
    obs = find_obstruction(C5)
    assert obs is not None and obs.holds_in(C5)


def test_recognition_examples():
    assert not is_trivially_perfect(C4)
    assert is_trivially_perfect(K13)
    assert is_trivially_perfect(Graph.empty(0))
    assert is_trivially_perfect(Graph.empty(5))


def test_universal_clique_examples():
    assert universal_clique(K13) == [0]
    assert universal_clique(Graph.complete(4)) == [0, 1, 2, 3]
    assert universal_clique(graph_of(4, "01 23")) == []


def test_ucd_examples():
    d = build_ucd(Graph.complete(3))
    assert d.bags == ((0, 1, 2),)
    d = build_ucd(P3)
    assert d.bags[d.roots[0]] == (1,) and sorted(d.bags[c] for c in d.children[d.roots[0]]) == [(0,), (2,)]
    d = build_ucd(K13)
    root = d.roots[0]
    assert d.bags[root] == (0,) and sorted(d.bags[c] for c in d.children[root]) == [(1,), (2,), (3,)]


def test_validate_ucd_rejects_leaf_as_root():
    assert validate_ucd(Graph.complete(3), build_ucd(Graph.complete(3)))
    bad = UCD(bags=((0,), (1,), (2,)), parent=(-1, 0, 1), children=((1,), (2,), ()), roots=(0,))
    assert not validate_ucd(P3, bad)


def test_build_ucd_rejects_non_tp_graph():
    with pytest.raises(NotTriviallyPerfectError):
        build_ucd(C4)


def test_ucd_format_lines():
    assert build_ucd(K13).format().splitlines()[0] == "0 -1 : 0"


def test_nested_family_examples():
    assert check_nested_family([set(), {1}, {1, 2}])
    assert not check_nested_family([{1}, {2}])
    assert check_nested_family([{1, 2}, {1, 2}])


def test_characterization_examples():
    k4 = Graph.complete(4)
    assert tp_characterization_check(k4, range(4))
    assert not tp_characterization_check(C4, [0, 1])


def test_characterization_rejects_non_maximal_clique():
    with pytest.raises(InvalidInputError):
        tp_characterization_check(Graph.complete(4), [0, 1])


def test_obstruction_is_induced_and_correctly_labeled():
    rng = random.Random(11)
    for _ in range(500):
        g = random_graph(rng, rng.randint(4, 10))
        obs = find_obstruction(g)
        assert (obs is None) == brute_is_tp(g)
        if obs is not None:
            assert obs.holds_in(g)


@given(graphs(max_n=8))
def test_recognition_matches_four_subset_scan(g):
    assert is_trivially_perfect(g) == brute_is_tp(g)


@given(graphs(max_n=8))
def test_characterization_matches_recognition(g):
    expected = is_trivially_perfect(g)
    assert all(tp_characterization_check(g, s) == expected for s in maximal_cliques(g))


@given(st.integers(0, 2**32), st.integers(1, 60))
def test_ucd_round_trip_on_generated_graphs(seed, n):
    g = gen_tp_graph(GenSpec(seed=seed, n=n, root_prob=0.1, parent_window=4))
    d = build_ucd(g)
    assert validate_ucd(g, d)
    assert sorted(v for bag in d.bags for v in bag) == list(range(n))


@given(graphs(max_n=9))
def test_connected_tp_graph_has_universal_vertex(g):
    for comp in connected_components(g):
        sub, _ = induced_subgraph(g, comp)
        if is_trivially_perfect(sub):
            assert universal_clique(sub)
