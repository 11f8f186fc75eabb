import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graph_of
from oracles import brute_max_anti_matching, brute_max_matching, random_graph
from test_graph import graphs
from tpkernel.graph import Graph, InvalidInputError, complement
from tpkernel.matching import build_packing, max_anti_matching, maximum_matching

C4 = graph_of(4, "01 12 23 03")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def test_matching_examples():
    assert len(maximum_matching(C4)) == 2
    assert len(maximum_matching(graph_of(4, "01 02 03"))) == 1
    assert len(maximum_matching(petersen())) == 5 == brute_max_matching(petersen())


def test_matching_early_exit():
    assert len(maximum_matching(petersen(), limit=2)) == 2


def test_odd_cycles_need_blossoms():
    # two triangles joined by a path: augmenting paths must pass through odd cycles
    g = graph_of(8, "01 12 02 23 34 45 56 67 57")
    assert len(maximum_matching(g)) == brute_max_matching(g) == 4


def test_anti_matching_examples():
    assert len(max_anti_matching(Graph.complete(5), range(5))) == 0
    assert len(max_anti_matching(C4, range(4))) == 2
    assert len(max_anti_matching(Graph.empty(5), range(5))) == 2


def test_packing_examples():
    p = build_packing([{0, 1, 2}, {3, 4, 5}, {6, 7, 8}], 5)
    assert p is not None and p.length == 2 and len(p.vertices()) == 6
    assert build_packing([{0, 1, 2}, {3, 4, 5}, {6, 7, 8}], 10) is None
    p = build_packing([{0}, {1}, {2}, {3}], 2)
    assert p is not None and p.length == 2 and len(p.vertices()) == 2


def test_packing_rejects_overlapping_sets():
    with pytest.raises(InvalidInputError):
        build_packing([{0, 1}, {1, 2}], 3)


@given(graphs(max_n=10))
def test_matching_is_valid_and_maximum(g):
    m = maximum_matching(g)
    used = [v for pair in m.pairs for v in pair]
    assert len(used) == len(set(used))
    assert all(g.is_edge(u, v) for u, v in m.pairs)
    assert len(m) == brute_max_matching(g)


@given(graphs(max_n=9), st.data())
def test_anti_matching_is_valid_and_maximum(g, data):
    within = sorted(data.draw(st.sets(st.integers(0, max(g.n - 1, 0)), max_size=g.n))) if g.n else []
    d = max_anti_matching(g, within)
    used = [v for pair in d.pairs for v in pair]
    assert len(used) == len(set(used)) and set(used) <= set(within)
    assert all(not g.is_edge(u, v) for u, v in d.pairs)
    assert len(d) == brute_max_anti_matching(g, within)


def test_anti_matching_equals_matching_of_complement():
    rng = random.Random(5)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 14))
        assert len(max_anti_matching(g)) == len(maximum_matching(complement(g)))


@given(st.integers(1, 10), st.integers(1, 60), st.randoms(use_true_random=False))
def test_packing_total_stays_below_r_plus_c(c, r, rnd):
    sizes = [rnd.randint(1, c) for _ in range(rnd.randint(0, 15))]
    sets, nxt = [], 0
    for s in sizes:
        sets.append(set(range(nxt, nxt + s)))
        nxt += s
    p = build_packing(sets, r)
    if p is None:
        assert sum(sizes) < r
    else:
        total = len(p.vertices())
        assert r <= total <= r + c - 1
        assert total == sum(sizes[: p.length])
        assert sum(sizes[: p.length - 1]) < r


def test_anti_matching_pairs_are_disjoint_non_edges():
    rng = random.Random(9)
    for _ in range(100):
        g = random_graph(rng, 12)
        d = max_anti_matching(g)
        flat = [v for p in d.pairs for v in p]
        assert len(flat) == len(set(flat))
        assert all(not g.is_edge(*p) for p in d.pairs)
        assert all(p in set(combinations(range(12), 2)) for p in map(tuple, map(sorted, d.pairs)))
