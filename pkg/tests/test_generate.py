import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpkernel.generate import GenSpec, gen_tp_graph, graph_from_forest, plant_instance
from tpkernel.graph import Graph, InvalidInputError, apply_edits
from tpkernel.kernel import MODES
from tpkernel.recognition import is_trivially_perfect
from tpkernel.solver import solve


def test_single_bag_is_clique():
    assert graph_from_forest([-1], [[0, 1, 2, 3]], 4) == Graph.complete(4)


def test_root_with_three_leaves_is_star():
    g = graph_from_forest([-1, 0, 0, 0], [[0], [1], [2], [3]], 4)
    assert set(g.edges()) == {(0, 1), (0, 2), (0, 3)}


@pytest.mark.parametrize("seed", range(5))
def test_generated_chain_of_bags_is_clique(seed):
    assert gen_tp_graph(GenSpec(seed=seed, n=4, bag_max=4, root_prob=0.0, parent_window=1)) == Graph.complete(4)


def test_zero_edits_gives_tp_graph_with_k_zero():
    pi = plant_instance(GenSpec(seed=5, n=30))
    assert pi.instance.k == 0 and is_trivially_perfect(pi.instance.graph)
    assert solve(pi.instance).decision


def test_one_edit_on_k4_stays_solvable():
    pi = plant_instance(GenSpec(seed=2, n=4, root_prob=0.0, parent_window=1, r=1))
    assert pi.base == Graph.complete(4) and pi.instance.graph.edge_count == 5
    assert pi.instance.k == 1 and solve(pi.instance).decision
    assert is_trivially_perfect(pi.instance.graph)


def test_two_edits_on_ten_vertices_is_yes():
    pi = plant_instance(GenSpec(seed=7, n=10, r=2))
    assert solve(pi.instance).decision


def test_spec_validation():
    with pytest.raises(InvalidInputError):
        GenSpec(seed=0, n=3, r=4)
    with pytest.raises(InvalidInputError):
        GenSpec(seed=0, n=3, mode="flip")
    with pytest.raises(InvalidInputError):
        GenSpec(seed=0, n=3, root_prob=2.0)


def test_too_few_eligible_pairs():
    with pytest.raises(InvalidInputError):
        plant_instance(GenSpec(seed=0, n=3, root_prob=0.0, parent_window=1, r=1, mode="deletion"))


def test_edge_list_lists_planted_pairs():
    pi = plant_instance(GenSpec(seed=3, n=12, r=2))
    text = pi.to_edge_list()
    assert sum(line.startswith("# planted: ") for line in text.splitlines()) == 2
    assert "# mode editing" in text


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**64 - 1), st.integers(0, 120), st.integers(1, 10), st.integers(1, 4), st.floats(0, 1))
def test_generated_graphs_are_tp_and_deterministic(seed, n, window, bag_max, root_prob):
    spec = GenSpec(seed=seed, n=n, root_prob=root_prob, parent_window=window, bag_max=bag_max)
    g = gen_tp_graph(spec)
    assert g.n == n and is_trivially_perfect(g)
    assert gen_tp_graph(spec) == g


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.integers(4, 40), st.integers(0, 4), st.sampled_from(MODES))
def test_planted_set_repairs_the_graph(seed, n, r, mode):
    try:
        pi = plant_instance(GenSpec(seed=seed, n=n, r=r, mode=mode))
    except InvalidInputError:
        return
    g = pi.instance.graph
    assert len(pi.planted) == r == pi.instance.k
    assert apply_edits(g, pi.planted) == pi.base
    assert pi.planted.respects_mode(g, mode)
    assert plant_instance(GenSpec(seed=seed, n=n, r=r, mode=mode)) == pi
