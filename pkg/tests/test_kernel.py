import random

import pytest

from conftest import graph_of
from oracles import brute_solve, random_graph
from tpkernel.comb import Comb, canonical_comb, enumerate_reducible_combs
from tpkernel.decomposition import is_module
from tpkernel.generate import GenSpec, plant_instance
from tpkernel.graph import Graph, InvalidInputError
from tpkernel.kernel import (
    MODES,
    Instance,
    audit_bounds,
    reduce_exhaustively,
    rule1_remove_tp_components,
    rule2_trim_critical_cliques,
    rule3_antimatching_module,
    rule4_shaft,
    rule5_teeth,
)

C4_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3)]


def c4_plus(h: Graph) -> Graph:
    """C4 on 0..3 disjoint from a copy of ``h`` on 4.."""
    return Graph.from_edges(4 + h.n, C4_EDGES + [(4 + u, 4 + v) for u, v in h.edges()])


def staircase(length: int) -> tuple[Graph, Comb]:
    """Comb with singleton cells 0..length-1 and singleton teeth; tooth i sees cells 0..i."""
    edges = [(i, j) for i in range(length) for j in range(i + 1, length)]
    edges += [(c, length + i) for i in range(length) for c in range(i + 1)]
    g = Graph.from_edges(2 * length, edges)
    cb = canonical_comb(g, range(length), range(length, 2 * length))
    assert cb is not None
    return g, cb


def test_rule1_removes_tp_components():
    inst = Instance(c4_plus(Graph.complete(3)), 1)
    out = rule1_remove_tp_components(inst)
    assert out is not None and out.n == 4 and set(out.graph.edges()) == set(C4_EDGES)
    assert out.original_ids() == (0, 1, 2, 3)


def test_rule1_empties_tp_graph():
    out = rule1_remove_tp_components(Instance(graph_of(4, "01 02 03"), 2))
    assert out is not None and out.n == 0


def test_rule1_leaves_p4():
    assert rule1_remove_tp_components(Instance(graph_of(4, "01 12 23"), 1)) is None


def test_rule2_trims_to_k_plus_one():
    out = rule2_trim_critical_cliques(Instance(c4_plus(Graph.complete(4)), 1))
    assert out is not None and out.n == 6 and out.original_ids() == (0, 1, 2, 3, 4, 5)


def test_rule2_unchanged_when_classes_small():
    assert rule2_trim_critical_cliques(Instance(graph_of(4, "01 12 23"), 0)) is None


def test_rule2_on_k10():
    out = rule2_trim_critical_cliques(Instance(Graph.complete(10), 2))
    assert out is not None and out.graph == Graph.complete(3)
    assert rule1_remove_tp_components(out).n == 0


def test_rule3_keeps_anti_matching_endpoints():
    # independent module 4..9 hangs below vertex 3 of a P4
    edges = [(0, 1), (1, 2), (2, 3)] + [(3, v) for v in range(4, 10)]
    g = Graph.from_edges(10, edges)
    module = range(4, 10)
    assert is_module(g, module)
    out = rule3_antimatching_module(Instance(g, 1), module)
    assert out is not None and out.n == 8
    assert sum(1 for v in out.original_ids() if v >= 4) == 4


def test_rule3_unchanged_for_small_anti_matching():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6)])
    assert rule3_antimatching_module(Instance(g, 1), [4, 5, 6]) is None
    k = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)])
    assert rule3_antimatching_module(Instance(k, 0), [4, 5, 6]) is None


def test_rule3_rejects_non_module():
    with pytest.raises(InvalidInputError):
        rule3_antimatching_module(Instance(graph_of(4, "01 12 23"), 0), [0, 3])


def test_rule4_removes_middle_of_long_shaft():
    g, cb = staircase(10)
    out = rule4_shaft(Instance(g, 1), cb)
    assert out is not None
    assert set(range(g.n)) - set(out.original_ids()) == {3, 4, 5, 6}


def test_rule4_unchanged_when_packings_meet():
    g, cb = staircase(6)
    assert rule4_shaft(Instance(g, 1), cb) is None


def test_rule4_unchanged_for_single_cell():
    g = graph_of(4, "01 02 03")
    cb = canonical_comb(g, [0], [1, 2, 3])
    assert rule4_shaft(Instance(g, 1), cb) is None


def test_rule4_rejects_invalid_comb():
    g, _ = staircase(4)
    with pytest.raises(InvalidInputError):
        rule4_shaft(Instance(g, 1), Comb(((0,), (1,)), ((5,), (4,))))


def test_rule5_removes_teeth_between_packings():
    g, cb = staircase(12)
    out = rule5_teeth(Instance(g, 1), cb)
    assert out is not None
    assert set(range(g.n)) - set(out.original_ids()) == {12 + 3, 12 + 4, 12 + 5}


def test_rule5_unchanged_for_short_combs():
    for length in (2, 9):
        g, cb = staircase(length)
        assert rule5_teeth(Instance(g, 1), cb) is None


def test_driver_removes_clique_next_to_c4():
    k = 1
    inst = Instance(c4_plus(Graph.complete(k + 5)), k)
    reduced, trace = reduce_exhaustively(inst)
    assert [s.rule for s in trace.steps] == [1]
    assert reduced.original_ids() == (0, 1, 2, 3) and set(reduced.graph.edges()) == set(C4_EDGES)
    trimmed = rule2_trim_critical_cliques(inst)
    assert trimmed is not None and trimmed.n == 4 + k + 1
    assert rule1_remove_tp_components(trimmed).graph == reduced.graph


def test_driver_identity_on_reduced_instance():
    inst = Instance(graph_of(4, "01 12 23 03"), 1)
    reduced, trace = reduce_exhaustively(inst)
    assert not trace.steps and reduced.graph == inst.graph


def test_trace_format_and_replay():
    # C4 with a pendant twin class {5,6,7} on vertex 0: Rule 2 trims it to two
    g = Graph.from_edges(8, C4_EDGES + [(0, 4), (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)])
    inst = Instance(g, 1)
    reduced, trace = reduce_exhaustively(inst)
    assert trace.format().splitlines()[0] == "RULE2 removed={7} map=[0->0,1->1,2->2,3->3,4->4,5->5,6->6]"
    assert trace.replay(inst) == reduced


def test_kernel_edge_list_records_origin():
    inst = Instance(c4_plus(Graph.complete(3)), 1, "deletion")
    reduced, _ = reduce_exhaustively(inst)
    text = reduced.to_edge_list()
    assert "# mode deletion" in text and "# origin 0 1 2 3" in text


def test_instance_validation():
    with pytest.raises(InvalidInputError):
        Instance(Graph.empty(1), -1)
    with pytest.raises(InvalidInputError):
        Instance(Graph.empty(1), 0, "flipping")


def test_audit_flags_unreduced_clique_class():
    rep = audit_bounds(Instance(c4_plus(Graph.complete(3)), 1))
    assert not rep.clean and "critical clique" in rep.violations[0]


def test_audit_of_empty_graph_is_clean():
    rep = audit_bounds(Instance(Graph.empty(0), 0))
    assert rep.clean and rep.combs_checked == 0


def _random_instance(rng: random.Random) -> Instance:
    n, k, mode = rng.randint(4, 11), rng.randint(0, 3), rng.choice(MODES)
    if rng.random() < 0.5:
        try:
            spec = GenSpec(rng.randrange(2**32), n, root_prob=0.2, parent_window=rng.randint(1, 5), bag_max=rng.randint(1, 4), r=min(k + rng.randint(0, 1), 3), mode=mode)
            return Instance(plant_instance(spec).instance.graph, k, mode)
        except InvalidInputError:
            pass
    return Instance(random_graph(rng, n), k, mode)


def test_reduction_is_safe_monotone_replayable_and_idempotent():
    rng = random.Random(101)
    for _ in range(150):
        inst = _random_instance(rng)
        reduced, trace = reduce_exhaustively(inst)
        assert reduced.k == inst.k and reduced.mode == inst.mode and reduced.n <= inst.n
        assert len(trace.steps) <= inst.n
        assert trace.replay(inst) == reduced
        assert not reduce_exhaustively(reduced)[1].steps
        assert brute_solve(inst.graph, inst.k, inst.mode) == brute_solve(reduced.graph, reduced.k, reduced.mode)


def test_individual_rules_are_safe():
    rng = random.Random(202)
    for _ in range(150):
        inst = _random_instance(rng)
        expected = brute_solve(inst.graph, inst.k, inst.mode)
        outs = [rule1_remove_tp_components(inst), rule2_trim_critical_cliques(inst)]
        for cb in enumerate_reducible_combs(inst.graph):
            outs += [rule4_shaft(inst, cb), rule5_teeth(inst, cb)]
        for out in outs:
            if out is not None:
                assert out.n < inst.n
                assert brute_solve(out.graph, out.k, out.mode) == expected
