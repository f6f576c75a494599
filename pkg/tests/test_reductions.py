from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satpoly.errors import SatPolyError
from satpoly.formulas import count_sat
from satpoly.graphs import two_coloring, vcp, weighted_graph
from satpoly.posets import poset
from satpoly.reductions import (
    ReductionInstance,
    UnweightedGraph,
    brute_count_vertex_covers,
    count_vertex_covers,
    eliminate_zero_weights,
    emit_instance,
    format_instance_file,
    ideal_to_implicative2sat,
    is_to_negative2sat,
    parse_instance_file,
    parse_matrix_file,
    partial_perm_to_vc,
    perm_to_partial_perm,
    perm_via_vc,
    replay_provenance,
    resolve_forced_loops,
    simulate_neg_weights,
    to_bipartite_vc,
    vc_to_positive2sat,
)
from satpoly.graphs import partial_permanent, permanent

F = Fraction


def test_block_gadget_small():
    assert perm_to_partial_perm([[1]]) == [[1, -1], [-1, 0]]
    assert partial_permanent(perm_to_partial_perm([[1]])).as_fraction() == 1
    assert partial_permanent(perm_to_partial_perm([[0]])).as_fraction() == 0


@given(st.integers(min_value=0, max_value=15))
def test_block_gadget_all_2x2(bits):
    a = [[(bits >> (2 * i + j)) & 1 for j in range(2)] for i in range(2)]
    assert (
        partial_permanent(perm_to_partial_perm(a)).as_fraction()
        == permanent(a).as_fraction()
    )


def test_partial_perm_to_vc_values():
    g = partial_perm_to_vc([[1]])
    assert vcp(g).as_fraction() == 2  # 1 + 1, the one-by-one partial permanent
    g2 = partial_perm_to_vc([[1, 1], [1, 1]])
    assert vcp(g2).as_fraction() == 7
    g3 = partial_perm_to_vc([[1, -1], [-1, 0]])
    assert vcp(g3).as_fraction() == 1


def test_eliminate_zero_weights_path():
    g = weighted_graph({0: F(2), 1: F(0), 2: F(3)}, [(0, 1), (1, 2)])
    out = eliminate_zero_weights(g)
    assert set(out.vertices) == {0, 2}
    assert out.loops() == frozenset({0, 2})
    assert vcp(out).as_fraction() == vcp(g).as_fraction() == 6


def test_eliminate_zero_weights_no_op_and_isolated():
    g = weighted_graph({0: F(1)}, [])
    assert eliminate_zero_weights(g) is g
    iso = weighted_graph({0: F(1), 1: F(0)}, [])
    out = eliminate_zero_weights(iso)
    assert set(out.vertices) == {0}
    assert vcp(out).as_fraction() == vcp(iso).as_fraction()


def test_eliminate_zero_weights_degenerate_zero():
    adjacent = weighted_graph({0: F(0), 1: F(0), 2: F(1)}, [(0, 1), (1, 2)])
    out = eliminate_zero_weights(adjacent)
    assert vcp(out).as_fraction() == 0 == vcp(adjacent).as_fraction()
    looped_zero = weighted_graph({0: F(0), 1: F(1)}, [(0, 0), (0, 1)])
    out2 = eliminate_zero_weights(looped_zero)
    assert vcp(out2).as_fraction() == 0 == vcp(looped_zero).as_fraction()


def test_resolve_forced_loops():
    g = weighted_graph({0: F(-1), 1: F(1), 2: F(-1)}, [(0, 0), (0, 1), (1, 2)])
    out, sign = resolve_forced_loops(g)
    assert sign == -1
    assert set(out.vertices) == {1, 2} and out.edges == frozenset({(1, 2)})
    # weighted covers match: forced vertex contributes its weight
    assert vcp(g).as_fraction() == sign * vcp(out).as_fraction()


def test_simulate_neg_weights_single_negative_vertex():
    g = weighted_graph({0: F(-1)}, [])
    inst = simulate_neg_weights(g)
    assert inst.modulus == 3
    assert inst.graph.leaf_counts == {0: 1}
    count = count_vertex_covers(inst.graph)
    assert count == 3  # covers of a single edge
    assert count % 3 == 0 == vcp(g).as_fraction() % 3


def test_simulate_neg_weights_requires_unit_weights():
    with pytest.raises(SatPolyError):
        simulate_neg_weights(weighted_graph({0: F(2)}, []))


def test_simulate_all_positive_weights_adds_no_leaves():
    g = weighted_graph({0: F(1), 1: F(1)}, [(0, 1)])
    inst = simulate_neg_weights(g)
    assert inst.graph.leaf_counts == {}
    assert inst.modulus == 5
    assert count_vertex_covers(inst.graph) == 3 == vcp(g).as_fraction()


def test_leaf_block_simulates_weight_two():
    # one leaf doubles the in-cover weight: covers of a single edge number 3 = 1 + 2
    star = UnweightedGraph([0], [], leaf_counts={0: 1})
    assert count_vertex_covers(star) == 3
    assert brute_count_vertex_covers(star) == 3


def test_count_vertex_covers_examples():
    assert count_vertex_covers(UnweightedGraph([0, 1], [(0, 1)])) == 3
    triangle = UnweightedGraph([0, 1, 2], [(0, 1), (1, 2), (0, 2)])
    assert count_vertex_covers(triangle) == 4
    assert count_vertex_covers(UnweightedGraph([0], [], loops=[0])) == 1


@given(st.data())
@settings(max_examples=40)
def test_count_vertex_covers_against_enumeration(data):
    n = data.draw(st.integers(min_value=1, max_value=10))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), max_size=14, unique=True)) if pairs else []
    loops = data.draw(st.sets(st.integers(0, n - 1), max_size=2))
    leaves = {}
    if data.draw(st.booleans()):
        leaves[data.draw(st.integers(0, n - 1))] = data.draw(st.integers(1, 4))
    g = UnweightedGraph(range(n), edges, loops, leaves)
    assert count_vertex_covers(g) == brute_count_vertex_covers(g)


def test_perm_via_vc_examples():
    assert perm_via_vc([[1, 1], [1, 1]]) == 2
    assert perm_via_vc([[1, 0], [0, 1]]) == 1
    assert perm_via_vc([[0, 0], [0, 0]]) == 0


def test_perm_via_vc_bipartite_variant():
    for a in ([[1]], [[1, 1], [1, 1]], [[1, 0], [1, 1]]):
        want = int(permanent(a).as_fraction())
        assert perm_via_vc(a, bipartite=True) == want


def test_bipartite_instance_is_two_colorable():
    inst = emit_instance([[1, 1], [1, 1]], bipartite=True)
    expanded = inst.graph.expand()
    assert not expanded.loops
    g = weighted_graph(
        {v: F(1) for v in expanded.vertices}, expanded.edges
    )
    assert two_coloring(g) is not None
    assert "bipartition" in inst.provenance


def test_to_bipartite_vc_from_weighted_stage():
    weighted = partial_perm_to_vc(perm_to_partial_perm([[1, 1], [1, 1]]))
    inst = to_bipartite_vc(weighted)
    assert count_vertex_covers(inst.graph) % inst.modulus == 2


def test_nonbipartite_instance_keeps_loops():
    inst = emit_instance([[1, 0], [0, 1]])
    assert inst.graph.loops  # zero elimination leaves forced vertices
    assert inst.modulus == (1 << len(inst.graph.vertices)) + 1


def test_instance_file_roundtrip():
    inst = emit_instance([[1, 1], [1, 1]])
    text = format_instance_file(inst)
    again = parse_instance_file(text)
    assert again.modulus == inst.modulus
    assert again.provenance == inst.provenance
    assert count_vertex_covers(again.graph) == count_vertex_covers(inst.graph)
    assert format_instance_file(again) == text


def test_provenance_replay_identical():
    for a, bip in (([[1, 0], [1, 1]], False), ([[1, 1], [0, 1]], True)):
        inst = emit_instance(a, bipartite=bip)
        again = replay_provenance(inst.provenance)
        assert format_instance_file(inst) == format_instance_file(again)


def test_vc_to_positive2sat():
    g = UnweightedGraph([0, 1], [(0, 1)])
    assert count_sat(vc_to_positive2sat(g)) == 3
    loops = UnweightedGraph([0, 1, 2], [(0, 1), (1, 2)], loops=[2])
    assert count_sat(vc_to_positive2sat(loops)) == brute_count_vertex_covers(loops)


def test_is_to_negative2sat():
    g = UnweightedGraph([0, 1], [(0, 1)])
    assert count_sat(is_to_negative2sat(g)) == 3
    looped = UnweightedGraph([0], [], loops=[0])
    assert count_sat(is_to_negative2sat(looped)) == 1  # only the empty set


def test_ideal_to_implicative2sat():
    p = poset({0: 1, 1: 1}, [(0, 1)])
    assert count_sat(ideal_to_implicative2sat(p)) == 3


@given(st.data())
def test_cover_and_independent_counts_agree(data):
    # complementation is a bijection between the two families, loops included
    n = data.draw(st.integers(min_value=1, max_value=8))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = data.draw(st.lists(st.sampled_from(pairs), max_size=10, unique=True)) if pairs else []
    loops = data.draw(st.sets(st.integers(0, n - 1), max_size=2))
    g = UnweightedGraph(range(n), edges, loops)
    assert count_sat(vc_to_positive2sat(g)) == count_sat(is_to_negative2sat(g))


def test_weighted_graph_accepts_2sat_encodings():
    g = weighted_graph({5: F(1), 9: F(1)}, [(5, 9)])
    assert count_sat(vc_to_positive2sat(g)) == 3
    assert count_sat(is_to_negative2sat(g)) == 3


def test_parse_matrix_file():
    assert parse_matrix_file("1 0\n0 1\n") == [[1, 0], [0, 1]]
    assert parse_matrix_file("# c\n1\n") == [[1]]


def test_instance_invariants():
    inst = emit_instance([[1]])
    assert isinstance(inst, ReductionInstance)
    v = len(inst.graph.vertices)
    assert inst.modulus == (1 << v) + 1
    neg_leaf_total = sum(inst.graph.leaf_counts.values())
    assert inst.graph.vertex_count() == v + neg_leaf_total
