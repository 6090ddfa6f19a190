import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph
from signedflow.core import (Edge, GraphError, IntFlow, Orientation, OrientationError, SignedGraph,
                             boundary, coupling, derived_orientation, incidence_coefficient, is_flow,
                             sign_of_edge_set, support, validate_graph)
from signedflow.oracle import graph_family


def test_validate_graph_ok():
    g = SignedGraph(["x", "y", "z"], [Edge("t1", ("x", "y"), 1), Edge("t2", ("y", "z"), 1),
                                      Edge("t3", ("z", "x"), 1)])
    assert validate_graph(g) == []


def test_validate_graph_dangling_end():
    g = SignedGraph(["x"], [Edge("e", ("x", "q"), 1)])
    assert any("dangling end" in p for p in validate_graph(g))


def test_validate_graph_duplicate_id():
    g = SignedGraph(["x", "y"], [Edge("e", ("x", "y"), 1), Edge("e", ("y", "x"), -1)])
    assert any("duplicate edge id" in p for p in validate_graph(g))


def test_validate_graph_bad_sign():
    g = SignedGraph(["x"], [Edge("e", ("x", "x"), 2)])
    assert validate_graph(g)
    with pytest.raises(GraphError):
        SignedGraph.build(["x"], [("e", "x", "x", 0)])


def test_orientation_rejects_slot_product_violation():
    g = graph(("p", "u", "v", 1))
    with pytest.raises(OrientationError, match="'p'"):
        Orientation(g, {"p": (1, 1)})


def test_coupling_cases(g3):
    eps = g3.orientation
    assert coupling(eps, eps, "p") == 1
    assert coupling(eps, eps.negated(), "p") == -1
    assert coupling(eps, eps.restrict(["a"]), "p") == 0


def test_boundary_examples(tri):
    assert set(boundary(tri.flow, tri.orientation).values()) == {0}
    g = graph(("a", "v", "v", -1))
    assert boundary(IntFlow(g, [3]), Orientation(g, {"a": (1, 1)})) == {"v": 6}
    g = graph(("l", "v", "v", 1))
    for x in (-2, 5):
        assert boundary(IntFlow(g, [x]), Orientation.default(g)) == {"v": 0}


def test_is_flow_examples(g2):
    g = graph(("a", "v", "v", -1))
    assert is_flow(IntFlow(g), Orientation.default(g))
    assert not is_flow(IntFlow(g, [1]), Orientation.default(g))
    assert is_flow(g2.flow, g2.orientation)


def test_support_examples():
    g = graph(("a", "u", "v", 1), ("b", "v", "w", 1), ("c", "w", "u", 1))
    assert support(IntFlow(g)) == frozenset()
    assert support(IntFlow(g, {"a": 1, "c": -2})) == {"a", "c"}
    assert support(IntFlow(g, [1, 1, 1])) == {"a", "b", "c"}


def test_derived_orientation_examples(g3):
    eps = g3.orientation
    f = IntFlow(g3.graph, {"a": 1, "p": 2, "b": 1})
    assert derived_orientation(f, eps) == eps
    f = IntFlow(g3.graph, {"a": 0, "p": -2, "b": 0})
    ef = derived_orientation(f, eps)
    assert ef.pair("p") == (1, -1) and ef.pair("a") == eps.pair("a") and ef.pair("b") == eps.pair("b")


def test_sign_of_edge_set():
    g = graph(("a", "u", "v", 1), ("b", "v", "w", 1), ("c", "w", "u", -1), ("d", "u", "u", -1))
    assert sign_of_edge_set(g, []) == 1
    assert sign_of_edge_set(g, ["a", "b", "c"]) == -1
    assert sign_of_edge_set(g, ["c", "d"]) == 1


def test_incidence_coefficients_match_boundary():
    # one representative per incidence class
    g = graph(("n", "u", "v", -1), ("p", "u", "u", 1), ("m", "u", "u", -1))
    eps = Orientation(g, {"n": (1, 1), "p": (1, -1), "m": (-1, -1)})
    assert incidence_coefficient(g, eps, "u", "n") == 1
    assert incidence_coefficient(g, eps, "u", "p") == 0
    assert incidence_coefficient(g, eps, "u", "m") == -2
    for eid in g.edge_ids():
        f = IntFlow(g, {eid: 1})
        for v in g.vertices:
            assert boundary(f, eps)[v] == incidence_coefficient(g, eps, v, eid)


SMALL = list(graph_family(3, 4))


@st.composite
def graph_orientation_flows(draw):
    g = draw(st.sampled_from(SMALL))
    m = len(g.edges)
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=m, max_size=m))
    eps = Orientation(g, {e.id: (s, -e.sign * s) for e, s in zip(g.edges, signs)})
    ints = st.lists(st.integers(-5, 5), min_size=m, max_size=m)
    return g, eps, IntFlow(g, draw(ints)), IntFlow(g, draw(ints))


@settings(max_examples=300, deadline=None)
@given(graph_orientation_flows())
def test_boundary_linearity(data):
    g, eps, f, h = data
    bf, bh, bs = boundary(f, eps), boundary(h, eps), boundary(f + h, eps)
    assert all(bs[v] == bf[v] + bh[v] for v in g.vertices)


@settings(max_examples=300, deadline=None)
@given(graph_orientation_flows())
def test_eps_f_identity_and_flow_equivalence(data):
    g, eps, f, _ = data
    ef = derived_orientation(f, eps)
    assert all(coupling(eps, ef, e) * f[e] == abs(f[e]) for e in g.edge_ids())
    assert is_flow(f, eps) == is_flow(abs(f), ef)


@settings(max_examples=200, deadline=None)
@given(graph_orientation_flows())
def test_slot_product_law_everywhere(data):
    g, eps, f, _ = data
    for o in (eps, eps.negated(), derived_orientation(f, eps), Orientation.default(g)):
        for e in g.edges:
            a, b = o.pair(e.id)
            assert a * b == -e.sign


def test_intflow_arithmetic(g3):
    f = g3.flow
    assert (f + f) == f.scale(2)
    assert (f - f).is_zero()
    assert abs(-f) == f
    assert f.nonzero() == {"a": 1, "p": 2, "b": 1}


def test_end_order_is_irrelevant():
    from signedflow.core import Edge, SignedGraph, boundary
    from signedflow.fra import decompose_flow, is_indecomposable
    from signedflow.oracle import enumerate_flows, graph_family

    for g in list(graph_family(3, 3))[::3]:
        eps = Orientation.default(g)
        h = SignedGraph(g.vertices, [Edge(e.id, e.ends[::-1], e.sign) for e in g.edges])
        eps_h = Orientation(h, {e: eps.pair(e)[::-1] for e in g.edge_ids()})
        for f in enumerate_flows(g, eps, 2).nontrivial():
            fh = IntFlow(h, f.values)
            assert boundary(fh, eps_h) == boundary(f, eps)
            assert bool(is_indecomposable(fh, eps_h)) == bool(is_indecomposable(f, eps))
            assert decompose_flow(fh, eps_h).total() == fh
