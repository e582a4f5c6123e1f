"""Plane triangulations with certified short longest cycles.

Two families serve as substitution gadgets: stacked triangulations (one round
of inserting a degree-3 vertex into every face of a base triangulation, plus
optionally one extra vertex) and the Moon-Moser triangulations (iterated
stacking into all inner faces, starting from K_4).  Each gadget records an
analytic upper bound on its cycle lengths, derived from the layer structure:
every stacking layer is an independent set whose members have their whole
neighborhood on one triangle of the previous graph, so restricting a cycle to
the previous graph yields a cycle again and the longest cycle at most doubles
per layer.

A gadget carries three pairwise-adjacent anchor vertices forming its outer
face; substitution glues copies at these anchors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .embedding import Dart, EmbeddedGraph, euler_audit, trace_faces
from .errors import (
    EmptyLayers,
    IndexOutOfRange,
    NotATriangulation,
    TooFewVertices,
    TTooSmall,
)

MOON_MOSER_MAX_INDEX = 12  # order grows as 3**i; 12 keeps memory in the hundreds of MB


def canonical_walk(walk: tuple[Dart, ...]) -> tuple[Dart, ...]:
    """Rotate a closed dart walk to start at its smallest dart."""
    i = walk.index(min(walk))
    return walk[i:] + walk[:i]


@dataclass(frozen=True)
class LayeredTriangulation:
    """A triangulation together with its stacking history.

    ``layers[0]`` is the base vertex set; each later layer is the independent
    set of vertices added by one stacking round.
    """

    graph: EmbeddedGraph
    layers: tuple[frozenset[int], ...]
    outer_face: tuple[Dart, ...]

    def __post_init__(self):
        total = sum(len(layer) for layer in self.layers)
        assert total == self.graph.n, "layers must partition the vertex set"
        adj = self.graph.adjacency
        for layer in self.layers[1:]:
            for v in layer:
                assert not (adj[v] & layer), "stacking layer must be independent"


@dataclass(frozen=True)
class Gadget:
    """A plane triangulation with anchors and a certified cycle-length cap."""

    graph: EmbeddedGraph
    anchors: tuple[int, int, int]
    cycle_cap: int
    outer_face: tuple[Dart, ...]
    layers: tuple[frozenset[int], ...]
    removable: tuple[int, ...] = field(default=())

    @property
    def n_b(self) -> int:
        return self.graph.n

    @property
    def e_b(self) -> int:
        return self.graph.edge_count

    @cached_property
    def outer_vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.outer_face)


def _validate_gadget(gadget: Gadget) -> None:
    g = gadget.graph
    faces = trace_faces(g)
    if any(length != 3 for length in faces.lengths):
        raise NotATriangulation("gadget has a non-triangular face")
    assert g.edge_count == 3 * g.n - 6
    assert euler_audit(g)
    walks = {canonical_walk(f) for f in faces.faces}
    assert canonical_walk(gadget.outer_face) in walks, "outer face is not a face"
    a, b, c = gadget.anchors
    assert len({a, b, c}) == 3
    assert set(gadget.anchors) == set(gadget.outer_vertices)
    adj = g.adjacency
    assert b in adj[a] and c in adj[b] and a in adj[c], "anchors must be pairwise adjacent"
    for v in gadget.removable:
        assert g.degree(v) == 3 and v not in gadget.anchors


def _stack_vertex(rot: list[list[int]], walk: tuple[Dart, ...], new_id: int) -> None:
    """Insert a new vertex inside the face ``walk``, joined to all its corners.

    For the corner (u -> v -> x) the new vertex lands between u and x in the
    rotation at v; its own rotation is the reversed face walk.  Insertions
    only reference pre-existing neighbor pairs, so several faces can be
    stacked from walks traced before any of the stacking happened.
    """
    for u, v in walk:
        r = rot[v]
        r.insert(r.index(u) + 1, new_id)
    vertices = [d[0] for d in walk]
    rot.append([vertices[0]] + vertices[:0:-1])


def _k4() -> tuple[EmbeddedGraph, tuple[Dart, ...]]:
    """K_4 with outer triangle 0,1,2 and center 3; returns (graph, outer face)."""
    g = EmbeddedGraph(((1, 3, 2), (2, 3, 0), (0, 3, 1), (2, 0, 1)))
    outer = next(f for f in trace_faces(g).faces if {d[0] for d in f} == {0, 1, 2})
    return g, outer


def _stack_faces(
    g: EmbeddedGraph,
    outer_face: tuple[Dart, ...],
    skip_outer: bool,
) -> tuple[EmbeddedGraph, frozenset[int], tuple[Dart, ...]]:
    """One stacking round; returns (new graph, new vertices, new outer face)."""
    faces = trace_faces(g)
    if any(length != 3 for length in faces.lengths):
        raise NotATriangulation("can only stack into triangular faces")
    outer_key = canonical_walk(outer_face)
    targets = [f for f in faces.faces if canonical_walk(f) != outer_key]
    if len(targets) == len(faces.faces):
        raise ValueError("designated outer face is not a face of the graph")
    if not skip_outer:
        targets.append(canonical_walk(outer_face))
    rot = [list(r) for r in g.rotation]
    new_ids = []
    outer_stacker = None
    for walk in targets:
        new_id = len(rot)
        _stack_vertex(rot, walk, new_id)
        new_ids.append(new_id)
        if canonical_walk(walk) == outer_key:
            outer_stacker = new_id
    labels = g.labels + (None,) * len(new_ids) if g.labels is not None else None
    out = EmbeddedGraph(tuple(tuple(r) for r in rot), labels)
    if skip_outer:
        new_outer = outer_face
    else:
        # the old outer triangle is gone; designate the new face on the first
        # outer edge and the vertex stacked outside
        o0, o1 = outer_face[0]
        new_outer = next(
            f for f in trace_faces(out).faces
            if {d[0] for d in f} == {o0, o1, outer_stacker}
        )
    return out, frozenset(new_ids), new_outer


def stack_all_faces(
    g: EmbeddedGraph,
    skip_outer: bool,
    outer_face: tuple[Dart, ...] | None = None,
    layers: tuple[frozenset[int], ...] | None = None,
) -> LayeredTriangulation:
    """Add one degree-3 vertex inside every (inner, if ``skip_outer``) face.

    The new vertices form an independent set and the result is again a
    triangulation.  ``outer_face`` defaults to the first traced face.
    """
    if outer_face is None:
        outer_face = trace_faces(g).faces[0]
    out, new_vertices, new_outer = _stack_faces(g, outer_face, skip_outer)
    if layers is None:
        layers = (frozenset(range(g.n)),)
    return LayeredTriangulation(out, layers + (new_vertices,), new_outer)


def base_triangulation(t: int) -> EmbeddedGraph:
    """Deterministic plane triangulation on t vertices.

    Built from K_4 by repeatedly stacking a vertex into the most recently
    created face (a path-Apollonian).  Any base works for the gadget cycle
    caps; this one is reproducible for fixtures at arbitrary t.
    """
    return _base_triangulation_with_outer(t)[0]


def _base_triangulation_with_outer(t: int) -> tuple[EmbeddedGraph, tuple[Dart, ...]]:
    if t < 4:
        raise TooFewVertices(f"a triangulation needs at least 4 vertices, got {t}")
    g, outer = _k4()
    rot = [list(r) for r in g.rotation]
    # first inner face of K_4 in traced order
    current = next(f for f in trace_faces(g).faces if canonical_walk(f) != canonical_walk(outer))
    for new_id in range(4, t):
        (a, _), (b, _), (c, _) = current
        _stack_vertex(rot, current, new_id)
        # the freshly created face through the walk's second edge
        current = ((b, new_id), (new_id, a), (a, b))
    out = EmbeddedGraph(tuple(tuple(r) for r in rot))
    assert out.edge_count == 3 * t - 6
    return out, outer


def stacked_gadget(t: int, extra: bool = False) -> Gadget:
    """Triangulation on 3t-4 (or 3t-3 with ``extra``) vertices, cycles <= 2t (2t+1).

    Stacks one vertex into every face of a t-vertex base triangulation; on a
    cycle at most half the vertices can be stacked ones, which caps the cycle
    length at 2t.  The extra vertex can add at most one more.  The anchor
    triangle is the outer face of the result: two outer vertices of the base
    plus the vertex stacked into the base's outer face.
    """
    if t < 5:
        raise TTooSmall(f"stacked gadgets need t >= 5, got {t}")
    base, outer = _base_triangulation_with_outer(t)
    layered = stack_all_faces(base, skip_outer=False, outer_face=outer)
    cap = 2 * t
    if extra:
        inner = next(
            f for f in trace_faces(layered.graph).faces
            if canonical_walk(f) != canonical_walk(layered.outer_face)
        )
        rot = [list(r) for r in layered.graph.rotation]
        z = len(rot)
        _stack_vertex(rot, inner, z)
        graph = EmbeddedGraph(tuple(tuple(r) for r in rot))
        layers = layered.layers + (frozenset({z}),)
        extra_ids = [z]
        cap = 2 * t + 1
    else:
        graph = layered.graph
        layers = layered.layers
        extra_ids = []
    outer_face = layered.outer_face
    anchors = tuple(d[0] for d in outer_face)
    # trim candidates: most recently stacked first, never an anchor, still of
    # degree 3 (the extra vertex bumps one second-layer degree), at most t-4
    # per gadget so a trimmed copy keeps at least 2t vertices
    anchor_set = set(anchors)
    pool = [
        v for v in extra_ids + sorted(layers[1] - anchor_set)
        if graph.degree(v) == 3
    ]
    gadget = Gadget(
        graph=graph,
        anchors=anchors,  # type: ignore[arg-type]
        cycle_cap=cap,
        outer_face=outer_face,
        layers=layers,
        removable=tuple(pool[: t - 4]),
    )
    assert gadget.n_b == (3 * t - 3 if extra else 3 * t - 4)
    _validate_gadget(gadget)
    return gadget


def moon_moser(i: int) -> Gadget:
    """The i-th iterated full inner stacking of K_4; order (3**i + 5) / 2.

    The cycle cap doubles per stacking round starting from 4 (K_4 is
    Hamiltonian), giving 4 * 2**(i-1); the cap exceeds the order for i <= 3
    and becomes informative from i = 4 on.
    """
    if not 1 <= i <= MOON_MOSER_MAX_INDEX:
        raise IndexOutOfRange(f"moon_moser index must be in 1..{MOON_MOSER_MAX_INDEX}, got {i}")
    g, outer = _k4()
    layers: tuple[frozenset[int], ...] = (frozenset(range(4)),)
    for _ in range(i - 1):
        layered = stack_all_faces(g, skip_outer=True, outer_face=outer, layers=layers)
        g, layers, outer = layered.graph, layered.layers, layered.outer_face
    gadget = Gadget(
        graph=g,
        anchors=tuple(d[0] for d in outer),  # type: ignore[arg-type]
        cycle_cap=4 * 2 ** (i - 1),
        outer_face=outer,
        layers=layers,
    )
    assert gadget.n_b == (3**i + 5) // 2
    _validate_gadget(gadget)
    return gadget


def octahedron() -> Gadget:
    """The 6-vertex 4-regular triangulation; Hamiltonian, so the cap is 6.

    Substituting it into a host of girth 8 reproduces the exact equality case
    of the conjectured bound at l = 7.
    """
    g = EmbeddedGraph((
        (1, 3, 5, 2),
        (2, 4, 3, 0),
        (0, 5, 4, 1),
        (4, 5, 0, 1),
        (2, 5, 3, 1),
        (4, 2, 0, 3),
    ))
    outer = next(f for f in trace_faces(g).faces if {d[0] for d in f} == {0, 1, 2})
    gadget = Gadget(
        graph=g,
        anchors=tuple(d[0] for d in outer),  # type: ignore[arg-type]
        cycle_cap=6,
        outer_face=outer,
        layers=(frozenset(range(6)),),
    )
    _validate_gadget(gadget)
    return gadget


def layer_cycle_cap(layered: LayeredTriangulation | Gadget) -> int:
    """Analytic cycle-length cap from the stacking history.

    Doubles the cap once per layer beyond the base: on any cycle, vertices of
    the outermost layer are non-adjacent and their neighborhoods are
    triangles one level down, so dropping them leaves a cycle of the previous
    graph of at least half the length.
    """
    layers = layered.layers
    if not layers:
        raise EmptyLayers("no layers recorded")
    cap = len(layers[0])
    for _ in layers[1:]:
        cap *= 2
    return cap
