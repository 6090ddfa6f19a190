import pytest

from conftest import graph
from signedflow import fixtures
from signedflow.core import IntFlow, Orientation, is_flow
from signedflow.fra import fra_run
from signedflow.oracle import (SizeGuard, brute_force_indecomposable, brute_force_minimal_walk,
                               cycle_tree_family, cycle_tree_shapes, enumerate_directions,
                               enumerate_eulerian_cycle_trees, enumerate_flows, find_split,
                               graph_family, graph_key, min_closed_walk_length, random_closed_walks)


def test_negative_loop_has_only_zero_flow():
    g = graph(("a", "v", "v", -1))
    box = enumerate_flows(g, Orientation.default(g), 2)
    assert [f.values for f in box] == [(0,)]
    assert box.nontrivial() == []


def test_triangle_flows():
    d = fixtures.triangle()
    assert sorted(f.values for f in enumerate_flows(d.graph, d.orientation, 1)) == [
        (-1, -1, -1), (0, 0, 0), (1, 1, 1)]


def test_positive_loop_flows():
    g = graph(("a", "v", "v", 1))
    assert sorted(f.values for f in enumerate_flows(g, Orientation.default(g), 1)) == [(-1,), (0,), (1,)]


def test_flow_box_is_closed_under_negation():
    for d in (fixtures.g3(), fixtures.g5()):
        box = {f.values for f in enumerate_flows(d.graph, d.orientation, 2)}
        assert all(tuple(-x for x in v) in box for v in box)
        assert all(is_flow(IntFlow(d.graph, v), d.orientation) for v in box)


def test_flow_box_respects_bound():
    d = fixtures.g3()
    for f in enumerate_flows(d.graph, d.orientation, 2):
        assert max(abs(x) for x in f.values) <= 2
    with pytest.raises(ValueError):
        enumerate_flows(d.graph, d.orientation, -1)


def test_brute_force_examples():
    assert brute_force_indecomposable(fixtures.g3().flow, fixtures.g3().orientation)
    assert brute_force_indecomposable(fixtures.g5().flow, fixtures.g5().orientation)
    assert not brute_force_indecomposable(fixtures.triangle(2).flow, fixtures.triangle().orientation)
    f1, f2 = find_split(fixtures.triangle(2).flow, fixtures.triangle().orientation)
    assert f1.values == f2.values == (1, 1, 1)
    with pytest.raises(ValueError):
        brute_force_indecomposable(IntFlow(fixtures.g3().graph), fixtures.g3().orientation)


def test_guards():
    g = graph(*[(f"e{i}", "u", "v", 1) for i in range(11)])
    with pytest.raises(SizeGuard):
        enumerate_flows(g, Orientation.default(g), 1)
    d = fixtures.g3(4)
    with pytest.raises(SizeGuard):
        find_split(d.flow, d.orientation)


def test_walk_guard():
    d = fixtures.triangle(5)
    w = fra_run(d.flow, d.orientation)
    assert brute_force_minimal_walk(w)
    long = graph(*[(f"e{i}", str(i), str((i + 1) % 13), 1) for i in range(13)])
    w = fra_run(IntFlow(long, [1] * 13), Orientation.default(long))
    with pytest.raises(SizeGuard):
        brute_force_minimal_walk(w)


def test_minimal_walk_examples():
    for d in (fixtures.g3(), fixtures.g5(), fixtures.g2()):
        assert brute_force_minimal_walk(fra_run(d.flow, d.orientation))


def test_eulerian_cycle_trees():
    assert len(enumerate_eulerian_cycle_trees(fixtures.triangle().graph)) == 1
    assert len(enumerate_eulerian_cycle_trees(fixtures.g5().graph)) == 4
    assert enumerate_eulerian_cycle_trees(fixtures.unbalanced_cycle().graph) == []


def test_directions_come_in_pairs():
    for t in enumerate_eulerian_cycle_trees(fixtures.g5().graph):
        dirs = enumerate_directions(t)
        assert len(dirs) == 2
        assert dirs[0].negated().to_dict() == dirs[1].to_dict()


def test_min_closed_walk_length():
    g = fixtures.g3().graph
    assert min_closed_walk_length(g, g.edge_ids()) == 4
    assert min_closed_walk_length(fixtures.g5().graph, fixtures.g5().graph.edge_ids()) == 6


def test_graph_family_small():
    fam = list(graph_family(2, 2))
    assert graph_key(fam[0]) == "n1:0-0+"
    assert len({graph_key(g) for g in fam}) == len(fam)
    assert all(g.is_connected() for g in fam)


@pytest.mark.slow
def test_graph_family_counts():
    assert sum(1 for _ in graph_family(4, 5)) == 19975
    assert sum(1 for _ in graph_family(4, 5, up_to_isomorphism=True)) == 1619


def test_cycle_tree_shapes():
    shapes = cycle_tree_shapes(5)
    assert [sum(1 for s in shapes if len(s) == m) for m in range(1, 6)] == [1, 2, 3, 6, 10]


def test_cycle_tree_family_deterministic():
    a = [graph_key(g) for g in cycle_tree_family(7)]
    b = [graph_key(g) for g in cycle_tree_family(7)]
    assert a == b


def test_random_closed_walks():
    graphs = [fixtures.g3().graph, fixtures.g5().graph]
    ws = random_closed_walks(graphs, 50, seed=3)
    assert len(ws) == 50 and all(w.is_closed for w in ws)
    assert [w.to_dict() for w in ws] == [w.to_dict() for w in random_closed_walks(graphs, 50, seed=3)]


def _all_closed_walks(g, length):
    from signedflow.walk import DirectedWalk, WalkStep
    out = []
    for eid, end in g.slots():
        v = g.slot_vertex((eid, end))
        for d in (1, -1):
            stack = [[WalkStep(eid, end, d, -g.sign(eid) * d)]]
            while stack:
                s = stack.pop()
                w = DirectedWalk(g, v, s)
                if w.is_closed:
                    out.append(w)
                if len(s) < length:
                    dd = -s[-1].dir_to
                    for e2, end2 in g.slots_at(w.vertices()[-1]):
                        stack.append(s + [WalkStep(e2, end2, dd, -g.sign(e2) * dd)])
    return out


def test_avoided_walk_enumeration_is_complete():
    from signedflow.oracle import enumerate_avoided_walks
    from signedflow.walk import is_midway_back_avoided
    for g in list(graph_family(3, 3))[::7]:
        want = {(w.start, tuple(w.steps)) for w in _all_closed_walks(g, 5) if is_midway_back_avoided(w)}
        got = [(w.start, tuple(w.steps)) for w in enumerate_avoided_walks(g, 5)]
        assert len(got) == len(set(got)) and set(got) == want
