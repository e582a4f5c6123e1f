"""Gadget substitution into degree-2/3 hosts, with exact count identities.

Substituting a gadget B into a host G replaces every host vertex by a fresh
copy of B and, for every host edge uv, identifies one outer-face anchor of
copy(u) with one of copy(v); the identified vertex plays the role of the
subdivision point of the host edge.  Anchor slots follow the host rotation:
around each copy, the merged anchors appear in the same cyclic order as the
host neighbors, so the copies tile the plane and the Euler audit certifies
the embedding after construction.  Degree-2 host vertices use the first two
anchors in outer-walk order; the third remains an ordinary vertex.

Counts obey exact identities: e' = (n2 + n3) e_B and
n' = n2 (n_B - 1) + n3 (n_B - 3/2), and for a dense host of girth l+1 the
density e' = e_B (l-1) / ((n_B - 1)(l-1) - 2) * (n' - 2(l+1)/(l-1)) holds as
an identity of exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .bounds import conjectured_bound
from .embedding import EmbeddedGraph, build_graph, euler_audit
from .errors import (
    BadHostDegree,
    DegenerateDenominator,
    EllTooSmall,
    EmbeddingMismatch,
    MarginLost,
    NonUniformGadgets,
    OddHalfCount,
    TrimCapacityExceeded,
)
from .gadgets import Gadget
from .hexhost import DenseHost


@dataclass(frozen=True)
class SubstitutionResult:
    """A substituted graph with full per-vertex provenance.

    ``copy_index`` maps each result vertex to its (host vertex, gadget
    vertex) origins; merged anchors carry two origin pairs.  ``merged`` maps
    each host edge to the shared anchor vertex realizing it.
    """

    graph: EmbeddedGraph
    host_graph: EmbeddedGraph
    dense_host: DenseHost | None
    gadget_assignment: dict[int, Gadget]
    copy_index: dict[int, tuple[tuple[int, int], ...]]
    merged: dict[tuple[int, int], int]
    predicted_n: int
    predicted_e: int
    trim_margin: Fraction | None = field(default=None)

    @property
    def uniform_gadget(self) -> Gadget:
        kinds = {(b.n_b, b.e_b) for b in self.gadget_assignment.values()}
        if len(kinds) != 1:
            raise NonUniformGadgets(f"{len(kinds)} distinct gadget shapes present")
        return next(iter(self.gadget_assignment.values()))


def _anchor_corners(gadget: Gadget) -> dict[int, tuple[int, int]]:
    """For each anchor, its outer-walk corner (incoming source, outgoing target)."""
    walk = gadget.outer_face
    corners = {}
    for idx, (u, v) in enumerate(walk):
        corners[v] = (u, walk[(idx + 1) % len(walk)][1])
    return corners


def _anchor_fans(gadget: Gadget) -> dict[int, tuple[int, ...]]:
    """Rotation at each anchor, cut open at the outer face.

    The fan starts at the outgoing outer-walk neighbor and ends at the
    incoming one; splicing two fans end to end is then the rotation of the
    merged vertex.
    """
    corners = _anchor_corners(gadget)
    fans = {}
    for a in gadget.anchors:
        s, t = corners[a]
        rot = gadget.graph.rotation[a]
        i = rot.index(t)
        fan = rot[i:] + rot[:i]
        assert fan[-1] == s, "outer walk disagrees with the rotation at an anchor"
        fans[a] = fan
    return fans


def _normalize_assignment(
    host_graph: EmbeddedGraph,
    assign: Gadget | Mapping[int, Gadget],
) -> dict[int, Gadget]:
    if isinstance(assign, Gadget):
        _check_gadget_size(assign)
        return {v: assign for v in range(host_graph.n)}
    out = dict(assign)
    missing = [v for v in range(host_graph.n) if v not in out]
    if missing:
        raise ValueError(f"no gadget assigned to host vertices {missing[:5]}")
    for b in out.values():
        _check_gadget_size(b)
    return out


def _check_gadget_size(gadget: Gadget) -> None:
    # a triangulation gadget has at least 4 vertices; smaller hand-built
    # Gadget values would break the count identities
    if gadget.n_b < 4:
        raise ValueError(f"gadget must have at least 4 vertices, got {gadget.n_b}")


def predicted_totals(host_graph: EmbeddedGraph, assign: dict[int, Gadget]) -> tuple[int, int]:
    """Exact predicted (n', e') for any, possibly mixed, assignment.

    Every host edge merges two anchors into one vertex, so
    n' = sum n_B(v) - e(host) and e' = sum e_B(v).
    """
    n = sum(assign[v].n_b for v in range(host_graph.n)) - host_graph.edge_count
    e = sum(assign[v].e_b for v in range(host_graph.n))
    return n, e


def substitute(
    host: DenseHost | EmbeddedGraph,
    assign: Gadget | Mapping[int, Gadget],
) -> SubstitutionResult:
    """Substitute gadgets into a host with all degrees 2 or 3.

    The cyclic order of merged anchors around each copy matches the host
    rotation of its vertex; a failed post-construction Euler audit means the
    anchor ordering logic is wrong and raises EmbeddingMismatch.
    """
    dense = host if isinstance(host, DenseHost) else None
    host_graph = host.graph if isinstance(host, DenseHost) else host
    for v in range(host_graph.n):
        if host_graph.degree(v) not in (2, 3):
            raise BadHostDegree(v, host_graph.degree(v))
    gadgets = _normalize_assignment(host_graph, assign)
    fans_cache: dict[int, dict[int, tuple[int, ...]]] = {}
    for b in gadgets.values():
        if id(b) not in fans_cache:
            fans_cache[id(b)] = _anchor_fans(b)

    def host_edge(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    # anchor slots: host neighbor t (in rotation order) uses anchor t in
    # outer-walk order; both walks run counterclockwise, so no reversal
    slot_edge: dict[tuple[int, int], tuple[int, int]] = {}  # (host v, anchor) -> host edge
    for v in range(host_graph.n):
        anchors = gadgets[v].anchors
        for t, u in enumerate(host_graph.rotation[v]):
            slot_edge[(v, anchors[t])] = host_edge(v, u)

    vid: dict[tuple[int, int], int] = {}
    merged: dict[tuple[int, int], int] = {}
    copy_index: dict[int, list[tuple[int, int]]] = {}
    counter = 0
    for v in range(host_graph.n):
        for gv in range(gadgets[v].n_b):
            key = (v, gv)
            e = slot_edge.get(key)
            if e is not None and e in merged:
                vid[key] = merged[e]
            elif e is not None:
                vid[key] = merged[e] = counter
                counter += 1
            else:
                vid[key] = counter
                counter += 1
            copy_index.setdefault(vid[key], []).append(key)

    predicted_n, predicted_e = predicted_totals(host_graph, gadgets)
    assert counter == predicted_n

    rotation: list[tuple[int, ...] | None] = [None] * counter
    labels: list[str | None] = [None] * counter
    for v in range(host_graph.n):
        b = gadgets[v]
        for gv in range(b.n_b):
            rid = vid[(v, gv)]
            if rotation[rid] is not None:
                continue  # merged vertex already done, or to be spliced below
            if (v, gv) in slot_edge:
                continue
            rotation[rid] = tuple(vid[(v, u)] for u in b.graph.rotation[gv])
            labels[rid] = f"h{v}:{gv}"
    for (u, v), rid in merged.items():
        fan = []
        for hv in (u, v):
            b = gadgets[hv]
            anchor = next(a for a in b.anchors if slot_edge.get((hv, a)) == (u, v))
            fan.extend(vid[(hv, g)] for g in fans_cache[id(b)][anchor])
        rotation[rid] = tuple(fan)
        labels[rid] = f"h{u}|h{v}"
    assert all(r is not None for r in rotation)

    graph = build_graph(counter, rotation, labels)  # type: ignore[arg-type]
    if graph.n != predicted_n or graph.edge_count != predicted_e:
        raise EmbeddingMismatch(
            f"counts off: got ({graph.n}, {graph.edge_count}), "
            f"predicted ({predicted_n}, {predicted_e})"
        )
    if not euler_audit(graph):
        raise EmbeddingMismatch("Euler audit failed after substitution")
    for (u, v), rid in merged.items():
        au = next(a for a in gadgets[u].anchors if slot_edge.get((u, a)) == (u, v))
        av = next(a for a in gadgets[v].anchors if slot_edge.get((v, a)) == (u, v))
        expected = gadgets[u].graph.degree(au) + gadgets[v].graph.degree(av)
        assert graph.degree(rid) == expected, "merged degree must be the sum of anchor degrees"

    return SubstitutionResult(
        graph=graph,
        host_graph=host_graph,
        dense_host=dense,
        gadget_assignment=gadgets,
        copy_index={rid: tuple(pairs) for rid, pairs in copy_index.items()},
        merged=merged,
        predicted_n=predicted_n,
        predicted_e=predicted_e,
    )


def predict_counts(host: DenseHost | EmbeddedGraph, gadget: Gadget) -> tuple[int, int]:
    """Exact (n', e') for a uniform substitution: the count identities.

    n' = n2 (n_B - 1) + n3 (n_B - 3/2) and e' = (n2 + n3) e_B; requires an
    even number of degree-3 host vertices so the half-count is integral.
    """
    host_graph = host.graph if isinstance(host, DenseHost) else host
    n2 = sum(1 for v in range(host_graph.n) if host_graph.degree(v) == 2)
    n3 = host_graph.n - n2
    if any(host_graph.degree(v) not in (2, 3) for v in range(host_graph.n)):
        raise BadHostDegree(
            next(v for v in range(host_graph.n) if host_graph.degree(v) not in (2, 3)),
            -1,
        )
    if (n3 * 3) % 2 != 0:
        raise OddHalfCount(f"n3 = {n3} is odd; n3 * 3/2 is not an integer")
    _check_gadget_size(gadget)
    n_b, e_b = gadget.n_b, gadget.e_b
    n_prime = n2 * (n_b - 1) + n3 * (2 * n_b - 3) // 2
    e_prime = (n2 + n3) * e_b
    return n_prime, e_prime


def density_coefficient(ell: int, n_b: int, e_b: int) -> Fraction:
    """The exact edge density slope e_B (l-1) / ((n_B - 1)(l-1) - 2).

    For a triangulation gadget on l-1 vertices this simplifies to
    3 (l-1) / l, the slope of the conjectured bound.
    """
    if ell < 7:
        raise EllTooSmall(f"l must be at least 7, got {ell}")
    den = (n_b - 1) * (ell - 1) - 2
    if den <= 0:
        raise DegenerateDenominator(f"(n_B - 1)(l - 1) - 2 = {den}")
    return Fraction(e_b * (ell - 1), den)


def verify_density_identity(result: SubstitutionResult, ell: int) -> bool:
    """Exact check of e' = coeff * (n' - 2(l+1)/(l-1)) on a built instance.

    Requires a uniform gadget and a host of girth l + 1 (verified).
    """
    gadget = result.uniform_gadget
    if result.dense_host is not None:
        host_girth = result.dense_host.g
    else:
        from . import cycles

        host_girth = cycles.girth(result.host_graph).answer
    if host_girth != ell + 1:
        raise ValueError(f"host has girth {host_girth}, expected {ell + 1}")
    coeff = density_coefficient(ell, gadget.n_b, gadget.e_b)
    lhs = Fraction(result.graph.edge_count)
    rhs = coeff * (Fraction(result.graph.n) - Fraction(2 * (ell + 1), ell - 1))
    return lhs == rhs


def trim_to_order(result: SubstitutionResult, target_n: int, ell: int) -> SubstitutionResult:
    """Shrink to exactly ``target_n`` vertices by deleting stacked vertices.

    Removals walk round-robin over the gadget copies, taking each copy's
    registered removable vertices in order; every removal deletes a degree-3
    vertex and exactly 3 edges.  The trimmed instance must still beat the
    conjectured bound, otherwise MarginLost is raised; the achieved margin is
    recorded on the returned result.
    """
    n = result.graph.n
    if target_n > n:
        raise ValueError(f"target order {target_n} exceeds current order {n}")
    excess = n - target_n
    reverse: dict[tuple[int, int], int] = {}
    for rid, pairs in result.copy_index.items():
        for pair in pairs:
            reverse[pair] = rid
    # removable vertices are never anchors, so each belongs to one copy only
    queues = [
        [reverse[(v, gv)] for gv in result.gadget_assignment[v].removable]
        for v in range(result.host_graph.n)
    ]
    capacity = sum(len(q) for q in queues)
    if excess > capacity:
        raise TrimCapacityExceeded(
            f"need to remove {excess} vertices but only {capacity} are removable"
        )
    to_remove: set[int] = set()
    round_idx = 0
    while len(to_remove) < excess:
        progressed = False
        for q in queues:
            if len(to_remove) >= excess:
                break
            if round_idx < len(q):
                to_remove.add(q[round_idx])
                progressed = True
        round_idx += 1
        if not progressed:
            raise TrimCapacityExceeded("removable pool exhausted")

    g = result.graph
    for rid in to_remove:
        assert g.degree(rid) == 3, "only degree-3 stacked vertices are removable"
    remap: dict[int, int] = {}
    for old in range(n):
        if old not in to_remove:
            remap[old] = len(remap)
    rotation = []
    labels = []
    for old in range(n):
        if old in to_remove:
            continue
        rotation.append(tuple(remap[u] for u in g.rotation[old] if u not in to_remove))
        labels.append(g.label(old))
    trimmed = build_graph(target_n, rotation, labels)
    expected_e = result.graph.edge_count - 3 * excess
    assert trimmed.edge_count == expected_e
    if not euler_audit(trimmed):
        raise EmbeddingMismatch("Euler audit failed after trim")

    bound = conjectured_bound(ell, target_n)
    margin = Fraction(expected_e) - bound
    if margin <= 0:
        raise MarginLost(f"trimmed instance has margin {margin} against the bound")

    copy_index = {
        remap[rid]: pairs
        for rid, pairs in result.copy_index.items()
        if rid not in to_remove
    }
    merged = {e: remap[rid] for e, rid in result.merged.items()}
    return SubstitutionResult(
        graph=trimmed,
        host_graph=result.host_graph,
        dense_host=result.dense_host,
        gadget_assignment=result.gadget_assignment,
        copy_index=copy_index,
        merged=merged,
        predicted_n=target_n,
        predicted_e=expected_e,
        trim_margin=margin,
    )
