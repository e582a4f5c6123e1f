"""Gadget families: counts, caps, layer structure, anchors."""

from __future__ import annotations

import pytest

from planarturan.cycles import longest_cycle_exact
from planarturan.embedding import build_graph, euler_audit, trace_faces
from planarturan.errors import (
    EmptyLayers,
    IndexOutOfRange,
    NotATriangulation,
    TooFewVertices,
    TTooSmall,
)
from planarturan.gadgets import (
    LayeredTriangulation,
    base_triangulation,
    layer_cycle_cap,
    moon_moser,
    octahedron,
    stack_all_faces,
    stacked_gadget,
)


def test_base_triangulation_counts():
    for t in (4, 5, 7, 10):
        g = base_triangulation(t)
        assert g.n == t
        assert g.edge_count == 3 * t - 6
        assert all(length == 3 for length in trace_faces(g).lengths)
        assert euler_audit(g)


def test_base_triangulation_too_small():
    with pytest.raises(TooFewVertices):
        base_triangulation(3)


def test_stack_all_faces_k4():
    g = base_triangulation(4)
    outer = trace_faces(g).faces[0]
    inner_only = stack_all_faces(g, skip_outer=True, outer_face=outer)
    assert inner_only.graph.n == 7
    everything = stack_all_faces(g, skip_outer=False, outer_face=outer)
    assert everything.graph.n == 8


def test_stack_single_triangle_both_faces():
    tri = build_graph(3, ([1, 2], [2, 0], [0, 1]))
    layered = stack_all_faces(tri, skip_outer=False, outer_face=trace_faces(tri).faces[0])
    assert layered.graph.n == 5
    assert layered.graph.edge_count == 9
    new = sorted(layered.layers[1])
    assert len(new) == 2
    assert not layered.graph.has_edge(*new)


def test_stack_rejects_non_triangulation():
    c6 = build_graph(6, ([5, 1], [0, 2], [1, 3], [2, 4], [3, 5], [4, 0]))
    with pytest.raises(NotATriangulation):
        stack_all_faces(c6, skip_outer=False)


def test_stacked_gadget_counts_and_caps():
    g = stacked_gadget(5, False)
    assert (g.n_b, g.e_b, g.cycle_cap) == (11, 27, 10)
    g = stacked_gadget(5, True)
    assert (g.n_b, g.e_b, g.cycle_cap) == (12, 30, 11)
    g = stacked_gadget(7, False)
    assert (g.n_b, g.cycle_cap) == (17, 14)


def test_stacked_gadget_anchors_adjacent_on_outer_face():
    g = stacked_gadget(6, True)
    a, b, c = g.anchors
    assert g.graph.has_edge(a, b) and g.graph.has_edge(b, c) and g.graph.has_edge(c, a)
    assert set(g.anchors) == {d[0] for d in g.outer_face}


def test_stacked_gadget_removable_budget():
    for t in (5, 6, 8):
        g = stacked_gadget(t, False)
        assert len(g.removable) == t - 4
        for v in g.removable:
            assert g.graph.degree(v) == 3
            assert v not in g.anchors


def test_stacked_gadget_t_too_small():
    with pytest.raises(TTooSmall):
        stacked_gadget(4)


def test_moon_moser_orders():
    for i in range(1, 7):
        assert moon_moser(i).n_b == (3**i + 5) // 2


def test_moon_moser_caps():
    assert [moon_moser(i).cycle_cap for i in (1, 2, 3, 4)] == [4, 8, 16, 32]


def test_moon_moser_layers_are_independent_powers_of_three():
    mm = moon_moser(4)
    assert [len(layer) for layer in mm.layers] == [4, 3, 9, 27]
    adj = mm.graph.adjacency
    for layer in mm.layers[1:]:
        for v in layer:
            assert not (adj[v] & layer)


def test_moon_moser_index_guard():
    with pytest.raises(IndexOutOfRange):
        moon_moser(0)
    with pytest.raises(IndexOutOfRange):
        moon_moser(13)


def test_octahedron_shape():
    oc = octahedron()
    assert (oc.n_b, oc.e_b, oc.cycle_cap) == (6, 12, 6)
    assert all(oc.graph.degree(v) == 4 for v in range(6))
    assert euler_audit(oc.graph)


def test_layer_cycle_cap_examples():
    g = base_triangulation(4)
    outer = trace_faces(g).faces[0]
    assert layer_cycle_cap(stack_all_faces(g, skip_outer=False, outer_face=outer)) == 8
    assert layer_cycle_cap(stacked_gadget(5)) == 10
    assert layer_cycle_cap(moon_moser(3)) == 16
    assert layer_cycle_cap(moon_moser(4)) == 32


def test_layer_cycle_cap_empty():
    lt = LayeredTriangulation.__new__(LayeredTriangulation)
    object.__setattr__(lt, "graph", base_triangulation(4))
    object.__setattr__(lt, "layers", ())
    object.__setattr__(lt, "outer_face", ())
    with pytest.raises(EmptyLayers):
        layer_cycle_cap(lt)


def test_exact_longest_at_most_cap_small_gadgets():
    # spot verification of the analytic caps for every gadget up to 20 vertices
    candidates = [stacked_gadget(5), stacked_gadget(5, True), stacked_gadget(6),
                  stacked_gadget(6, True), stacked_gadget(8), moon_moser(2),
                  moon_moser(3), octahedron()]
    for g in candidates:
        if g.n_b <= 20:
            assert longest_cycle_exact(g.graph, max_vertices=20).answer <= g.cycle_cap


def test_gadget_euler_and_triangulation():
    for g in (stacked_gadget(5), moon_moser(3), octahedron()):
        assert euler_audit(g.graph)
        assert g.e_b == 3 * g.n_b - 6
        assert all(length == 3 for length in trace_faces(g.graph).lengths)


def test_gadget_embedding_regression_fixtures():
    import hashlib

    from planarturan.embedding import export_graph

    def digest(graph):
        return hashlib.sha256(export_graph(graph, "json")).hexdigest()[:16]

    assert digest(stacked_gadget(5).graph) == "aa425e88e1643a58"
    assert digest(moon_moser(3).graph) == "268c00d077e6320f"
