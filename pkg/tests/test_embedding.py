"""Rotation-system core: construction, face tracing, subdivision, serialization."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarturan.embedding import (
    build_graph,
    euler_audit,
    export_graph,
    from_dot,
    from_embedded_json,
    from_graph6,
    import_graph,
    subdivide_edge,
    to_dot,
    to_embedded_json,
    to_graph6,
    trace_faces,
)
from planarturan.errors import (
    AsymmetricAdjacency,
    DisconnectedGraph,
    DuplicateNeighbor,
    MalformedInput,
    NoSuchEdge,
    SelfLoop,
    ZeroLength,
)

TRIANGLE = ([1, 2], [2, 0], [0, 1])
K4 = ((1, 3, 2), (2, 3, 0), (0, 3, 1), (2, 0, 1))
C6 = ([5, 1], [0, 2], [1, 3], [2, 4], [3, 5], [4, 0])


def test_triangle_counts():
    g = build_graph(3, TRIANGLE)
    assert g.n == 3
    assert g.edge_count == 3
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_k4_counts_and_faces():
    g = build_graph(4, K4)
    assert g.edge_count == 6
    faces = trace_faces(g)
    assert len(faces) == 4
    assert faces.lengths == (3, 3, 3, 3)


def test_asymmetric_adjacency_names_pair():
    with pytest.raises(AsymmetricAdjacency) as exc:
        build_graph(2, [[1], []])
    assert exc.value.pair == (0, 1)


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        build_graph(2, [[0, 1], [0]])


def test_duplicate_neighbor_rejected():
    with pytest.raises(DuplicateNeighbor):
        build_graph(3, [[1, 2, 1], [0, 0, 2], [0, 1]])


def test_out_of_range_neighbor():
    with pytest.raises(ValueError):
        build_graph(2, [[1], [0, 5]])


def test_six_cycle_two_hexagonal_faces():
    g = build_graph(6, C6)
    faces = trace_faces(g)
    assert faces.lengths == (6, 6)


def test_face_walks_cover_all_darts_once():
    g = build_graph(4, K4)
    faces = trace_faces(g)
    darts = [d for f in faces.faces for d in f]
    assert len(darts) == 2 * g.edge_count
    assert len(set(darts)) == len(darts)


def test_faces_sorted_by_smallest_dart():
    g = build_graph(4, K4)
    faces = trace_faces(g)
    starts = [f[0] for f in faces.faces]
    assert starts == sorted(starts)
    for f in faces.faces:
        assert f[0] == min(f)


def test_trace_requires_connected():
    g = build_graph(4, [[1], [0], [3], [2]])
    with pytest.raises(DisconnectedGraph):
        trace_faces(g)


def test_euler_audit_k4_true():
    assert euler_audit(build_graph(4, K4))


def test_euler_audit_k5_false_for_any_rotation():
    # K_5 is non-planar, so no rotation system can satisfy Euler's formula;
    # spot-check the sorted rotation and a shuffled one
    base = [[v for v in range(5) if v != u] for u in range(5)]
    assert not euler_audit(build_graph(5, base))
    twisted = [list(reversed(r)) if u % 2 else r for u, r in enumerate(base)]
    assert not euler_audit(build_graph(5, twisted))


def test_subdivide_identity():
    g = build_graph(3, TRIANGLE)
    assert subdivide_edge(g, (0, 1), 1) is g


def test_subdivide_triangle_edge():
    g = build_graph(3, TRIANGLE)
    g2 = subdivide_edge(g, (0, 1), 2)
    assert (g2.n, g2.edge_count) == (4, 4)
    assert trace_faces(g2).lengths == (4, 4)
    assert euler_audit(g2)


def test_subdivide_growth_and_euler():
    g = build_graph(4, K4)
    g2 = subdivide_edge(g, (0, 3), 4)
    assert g2.n == g.n + 3
    assert g2.edge_count == g.edge_count + 3
    assert euler_audit(g2)
    assert all(g2.degree(v) == 2 for v in range(4, 7))


def test_subdivide_errors():
    g = build_graph(6, C6)
    with pytest.raises(NoSuchEdge):
        subdivide_edge(g, (0, 3), 2)
    with pytest.raises(ZeroLength):
        subdivide_edge(g, (0, 1), 0)


def test_graph6_triangle_is_Bw():
    g = build_graph(3, TRIANGLE)
    assert to_graph6(g) == b"Bw"


def test_graph6_roundtrip_medium():
    # n = 70 exercises the multi-byte size prefix
    n = 70
    adj = [set() for _ in range(n)]
    for u in range(n):
        for v in (u + 1, u + 7):
            if v < n:
                adj[u].add(v)
                adj[v].add(u)
    g = build_graph(n, [sorted(s) for s in adj])
    back = from_graph6(to_graph6(g))
    assert back.n == g.n
    assert sorted(back.edges()) == sorted(g.edges())


def test_graph6_header_accepted():
    g = from_graph6(b">>graph6<<Bw\n")
    assert g.n == 3 and g.edge_count == 3


def test_graph6_truncated_reports_offset():
    with pytest.raises(MalformedInput) as exc:
        from_graph6(b"D")  # n = 5 needs two body bytes
    assert exc.value.offset == 1


def test_graph6_bad_byte():
    with pytest.raises(MalformedInput) as exc:
        from_graph6(b"B\x07")
    assert exc.value.offset == 1


def test_dot_roundtrip():
    g = build_graph(4, K4)
    back = from_dot(to_dot(g))
    assert back.n == 4
    assert sorted(back.edges()) == sorted(g.edges())


def test_dot_rejects_garbage():
    with pytest.raises(MalformedInput):
        from_dot("graph G { 0 -- x; }")
    with pytest.raises(MalformedInput):
        from_dot("digraph G ")


def test_embedded_json_roundtrip_exact():
    g = build_graph(4, K4, labels=["a", None, "c", "d"])
    assert from_embedded_json(to_embedded_json(g)) == g


def test_embedded_json_malformed():
    with pytest.raises(MalformedInput):
        from_embedded_json(b"{not json")
    with pytest.raises(MalformedInput):
        from_embedded_json(b'{"n": 2}')
    with pytest.raises(MalformedInput):
        from_embedded_json(b'{"n": 2, "rotation": [[1], [0, 0]]}')


def test_export_import_dispatch():
    g = build_graph(3, TRIANGLE)
    for fmt in ("graph6", "dot", "json"):
        h = import_graph(export_graph(g, fmt), fmt)
        assert sorted(h.edges()) == sorted(g.edges())
    with pytest.raises(ValueError):
        export_graph(g, "gml")


def test_permuted_preserves_structure():
    g = build_graph(4, K4)
    perm = [2, 0, 3, 1]
    h = g.permuted(perm)
    assert h.edge_count == g.edge_count
    assert euler_audit(h)
    assert trace_faces(h).lengths == trace_faces(g).lengths


@st.composite
def random_graphs(draw):
    n = draw(st.integers(min_value=2, max_value=10))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.sets(st.sampled_from(pairs)))
    adj = [set() for _ in range(n)]
    for u, v in chosen:
        adj[u].add(v)
        adj[v].add(u)
    return build_graph(n, [sorted(s) for s in adj])


@given(random_graphs())
@settings(max_examples=60)
def test_embedded_json_roundtrip_property(g):
    assert from_embedded_json(to_embedded_json(g)) == g


@given(random_graphs())
@settings(max_examples=60)
def test_graph6_preserves_adjacency_property(g):
    back = from_graph6(to_graph6(g))
    assert sorted(back.edges()) == sorted(g.edges())


@given(random_graphs())
@settings(max_examples=40, deadline=None)
def test_graph6_matches_networkx(g):
    nx = pytest.importorskip("networkx")
    ours = to_graph6(g).decode()
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    theirs = nx.to_graph6_bytes(h, header=False).decode().strip()
    assert ours == theirs


def test_subdivision_invariants_random():
    import random

    from tests_support import random_embedded_graph

    rng = random.Random(99)
    for _ in range(20):
        g = random_embedded_graph(rng, max_n=10)
        edge = rng.choice(list(g.edges()))
        length = rng.randint(2, 5)
        g2 = subdivide_edge(g, edge, length)
        assert g2.n == g.n + length - 1
        assert g2.edge_count == g.edge_count + length - 1
        assert euler_audit(g2) == euler_audit(g)
