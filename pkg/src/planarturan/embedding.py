"""Plane graphs as combinatorial rotation systems.

A graph is stored as one cyclic neighbor list per vertex (counterclockwise
order).  Faces are recovered purely combinatorially: the dart (u, v) is
followed by (v, w) where w is the successor of u in the rotation at v.  With
counterclockwise rotations this walks every face with the face on the right
of each dart, so a connected graph is planar exactly when V - E + F = 2 for
the traced faces.  That Euler audit is the package's planarity certificate;
every construction here builds an explicit embedding, so no general
planarity test is needed.

Serialization: graph6 and DOT carry adjacency only; the embedded-JSON format
round-trips the full rotation system and labels losslessly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    AsymmetricAdjacency,
    DisconnectedGraph,
    DuplicateNeighbor,
    MalformedInput,
    NoSuchEdge,
    SelfLoop,
    ZeroLength,
)

Dart = tuple[int, int]

FORMATS = ("graph6", "dot", "json")


@dataclass(frozen=True)
class EmbeddedGraph:
    """Immutable simple graph with a rotation system.

    ``rotation[v]`` is the cyclic sequence of neighbors of ``v`` in
    counterclockwise order; ``labels`` optionally tags vertices (grid names,
    gadget-copy provenance).  All mutating operations return new graphs.
    """

    rotation: tuple[tuple[int, ...], ...]
    labels: tuple[str | None, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(r) for r in self.rotation)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as (u, v) with u < v, in sorted order."""
        for u, rot in enumerate(self.rotation):
            for v in sorted(rot):
                if u < v:
                    yield (u, v)

    def label(self, v: int) -> str | None:
        return None if self.labels is None else self.labels[v]

    def permuted(self, perm: Sequence[int]) -> "EmbeddedGraph":
        """Relabel vertices by ``perm`` (old id -> new id), keeping rotations."""
        rot = [()] * self.n
        for v, neighbors in enumerate(self.rotation):
            rot[perm[v]] = tuple(perm[u] for u in neighbors)
        labels = None
        if self.labels is not None:
            out: list[str | None] = [None] * self.n
            for v, lab in enumerate(self.labels):
                out[perm[v]] = lab
            labels = tuple(out)
        return EmbeddedGraph(tuple(rot), labels)


def build_graph(
    vertex_count: int,
    rotation: Sequence[Sequence[int]],
    labels: Sequence[str | None] | None = None,
) -> EmbeddedGraph:
    """Validate a rotation system eagerly and return the graph.

    Raises AsymmetricAdjacency, SelfLoop or DuplicateNeighbor naming the
    offending vertex pair; out-of-range ids raise ValueError.
    """
    if vertex_count < 0:
        raise ValueError("vertex_count must be nonnegative")
    if len(rotation) != vertex_count:
        raise ValueError(f"expected {vertex_count} rotation lists, got {len(rotation)}")
    rot = tuple(tuple(r) for r in rotation)
    for v, neighbors in enumerate(rot):
        seen = set()
        for u in neighbors:
            if not 0 <= u < vertex_count:
                raise ValueError(f"vertex {v} lists out-of-range neighbor {u}")
            if u == v:
                raise SelfLoop(v)
            if u in seen:
                raise DuplicateNeighbor(v, u)
            seen.add(u)
    neighbor_sets = [set(r) for r in rot]
    for v, neighbors in enumerate(rot):
        for u in neighbors:
            if v not in neighbor_sets[u]:
                raise AsymmetricAdjacency(v, u)
    if labels is not None:
        if len(labels) != vertex_count:
            raise ValueError("labels length must equal vertex_count")
        labels = tuple(labels)
    return EmbeddedGraph(rot, labels)


def is_connected(g: EmbeddedGraph) -> bool:
    if g.n <= 1:
        return True
    seen = bytearray(g.n)
    stack = [0]
    seen[0] = 1
    count = 1
    while stack:
        v = stack.pop()
        for u in g.rotation[v]:
            if not seen[u]:
                seen[u] = 1
                count += 1
                stack.append(u)
    return count == g.n


@dataclass(frozen=True)
class FaceList:
    """Faces of an embedding as closed dart walks.

    Every dart appears in exactly one walk and the walk lengths sum to 2e.
    Faces are listed in order of their smallest contained dart, and each walk
    starts at that dart, so the output is a stable fixture.
    """

    faces: tuple[tuple[Dart, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def vertex_walks(self) -> tuple[tuple[int, ...], ...]:
        """Each face as the sequence of visited vertices."""
        return tuple(tuple(d[0] for d in face) for face in self.faces)


def trace_faces(g: EmbeddedGraph) -> FaceList:
    """Partition all 2e darts into face walks via the rotation successor rule."""
    if not is_connected(g):
        raise DisconnectedGraph(f"face tracing requires a connected graph ({g.n} vertices)")
    # position of each neighbor inside the rotation, for O(1) successor lookup
    pos = [{u: i for i, u in enumerate(rot)} for rot in g.rotation]
    darts = sorted((v, u) for v, rot in enumerate(g.rotation) for u in rot)
    visited: set[Dart] = set()
    faces: list[tuple[Dart, ...]] = []
    for start in darts:
        if start in visited:
            continue
        walk: list[Dart] = []
        d = start
        while True:
            walk.append(d)
            visited.add(d)
            u, v = d
            rot = g.rotation[v]
            d = (v, rot[(pos[v][u] + 1) % len(rot)])
            if d == start:
                break
        faces.append(tuple(walk))
    result = FaceList(tuple(faces))
    assert sum(result.lengths) == 2 * g.edge_count
    return result


def euler_audit(g: EmbeddedGraph) -> bool:
    """True iff V - E + F = 2 for the traced faces: the planarity certificate."""
    if not is_connected(g):
        raise DisconnectedGraph("Euler audit requires a connected graph")
    if g.n == 1:
        return g.edge_count == 0
    f = len(trace_faces(g))
    return g.n - g.edge_count + f == 2


def subdivide_edge(g: EmbeddedGraph, edge: tuple[int, int], path_length: int) -> EmbeddedGraph:
    """Replace ``edge`` by a path of ``path_length`` edges.

    The path_length - 1 new degree-2 vertices are appended after the existing
    ids; the path occupies the same rotation slots as the old edge, so the
    embedding (and the Euler audit) is preserved, and the two incident faces
    each grow by path_length - 1.
    """
    u, v = edge
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NoSuchEdge(u, v)
    if path_length < 1:
        raise ZeroLength(f"path_length must be >= 1, got {path_length}")
    if path_length == 1:
        return g
    extra = path_length - 1
    first_new = g.n
    new_ids = list(range(first_new, first_new + extra))
    rot = [list(r) for r in g.rotation]
    rot[u][rot[u].index(v)] = new_ids[0]
    rot[v][rot[v].index(u)] = new_ids[-1]
    chain = [u] + new_ids + [v]
    for i, w in enumerate(new_ids, start=1):
        rot.append([chain[i - 1], chain[i + 1]])
    labels = None
    if g.labels is not None:
        labels = g.labels + (None,) * extra
    return EmbeddedGraph(tuple(tuple(r) for r in rot), labels)


# ---------------------------------------------------------------------------
# graph6 (adjacency only)
# ---------------------------------------------------------------------------

def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes([126, 126]) + bytes(((n >> (6 * k)) & 63) + 63 for k in (5, 4, 3, 2, 1, 0))
    raise ValueError("graph too large for graph6")


def to_graph6(g: EmbeddedGraph) -> bytes:
    """Canonical graph6 bit packing of the upper adjacency triangle."""
    n = g.n
    out = bytearray(_g6_encode_n(n))
    bits = 0
    nbits = 0
    adj = g.adjacency
    for col in range(1, n):
        for row in range(col):
            bits = (bits << 1) | (1 if col in adj[row] else 0)
            nbits += 1
            if nbits == 6:
                out.append(bits + 63)
                bits = 0
                nbits = 0
    if nbits:
        out.append((bits << (6 - nbits)) + 63)
    return bytes(out)


def from_graph6(data: bytes | str) -> EmbeddedGraph:
    """Decode graph6 into a graph with sorted-adjacency rotations.

    graph6 carries no embedding, so the resulting rotation order is
    arbitrary; run no Euler audit against it.
    """
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    raw = data.strip()
    if raw.startswith(b">>graph6<<"):
        raw = raw[len(b">>graph6<<"):]
    if not raw:
        raise MalformedInput("empty graph6 input", 0)
    for i, b in enumerate(raw):
        if not 63 <= b <= 126:
            raise MalformedInput(f"invalid graph6 byte {b}", i)
    pos = 0
    if raw[0] == 126:
        if len(raw) >= 2 and raw[1] == 126:
            if len(raw) < 8:
                raise MalformedInput("truncated graph6 size field", len(raw))
            n = 0
            for b in raw[2:8]:
                n = (n << 6) | (b - 63)
            pos = 8
        else:
            if len(raw) < 4:
                raise MalformedInput("truncated graph6 size field", len(raw))
            n = 0
            for b in raw[1:4]:
                n = (n << 6) | (b - 63)
            pos = 4
    else:
        n = raw[0] - 63
        pos = 1
    need = (n * (n - 1) // 2 + 5) // 6
    body = raw[pos:]
    if len(body) < need:
        raise MalformedInput(f"graph6 body too short: need {need} bytes, got {len(body)}", len(raw))
    if len(body) > need:
        raise MalformedInput("trailing bytes after graph6 body", pos + need)
    adj: list[set[int]] = [set() for _ in range(n)]
    idx = 0
    for col in range(1, n):
        for row in range(col):
            byte = body[idx // 6]
            bit = (byte - 63) >> (5 - idx % 6) & 1
            if bit:
                adj[row].add(col)
                adj[col].add(row)
            idx += 1
    return build_graph(n, [sorted(s) for s in adj])


# ---------------------------------------------------------------------------
# DOT (adjacency only)
# ---------------------------------------------------------------------------

def to_dot(g: EmbeddedGraph) -> bytes:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("ascii")


def from_dot(data: bytes | str) -> EmbeddedGraph:
    """Parse the edge-list DOT subset emitted by :func:`to_dot`."""
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    open_brace = text.find("{")
    close_brace = text.rfind("}")
    if open_brace < 0 or close_brace < open_brace:
        raise MalformedInput("missing DOT braces", max(open_brace, 0))
    head = text[:open_brace].strip()
    if not head.startswith("graph"):
        raise MalformedInput("expected 'graph' keyword", 0)
    body = text[open_brace + 1:close_brace]
    adj: dict[int, set[int]] = {}
    max_id = -1
    offset = open_brace + 1
    for stmt in body.split(";"):
        stripped = stmt.strip()
        pos = offset + (len(stmt) - len(stmt.lstrip()))
        offset += len(stmt) + 1
        if not stripped:
            continue
        if "--" in stripped:
            left, _, right = stripped.partition("--")
            try:
                u = int(left.strip())
                v = int(right.strip())
            except ValueError:
                raise MalformedInput(f"bad edge statement {stripped!r}", pos) from None
            if u < 0 or v < 0 or u == v:
                raise MalformedInput(f"bad edge statement {stripped!r}", pos)
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
            max_id = max(max_id, u, v)
        else:
            try:
                v = int(stripped)
            except ValueError:
                raise MalformedInput(f"bad node statement {stripped!r}", pos) from None
            if v < 0:
                raise MalformedInput(f"bad node statement {stripped!r}", pos)
            max_id = max(max_id, v)
    n = max_id + 1
    return build_graph(n, [sorted(adj.get(v, ())) for v in range(n)])


# ---------------------------------------------------------------------------
# embedded-JSON (lossless)
# ---------------------------------------------------------------------------

def to_embedded_json(g: EmbeddedGraph) -> bytes:
    doc = {
        "n": g.n,
        "rotation": [list(r) for r in g.rotation],
        "labels": list(g.labels) if g.labels is not None else None,
    }
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def from_embedded_json(data: bytes | str) -> EmbeddedGraph:
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"bad JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict):
        raise MalformedInput("embedded-JSON document must be an object", 0)
    for key in ("n", "rotation"):
        if key not in doc:
            raise MalformedInput(f"embedded-JSON missing key {key!r}", 0)
    n = doc["n"]
    rotation = doc["rotation"]
    labels = doc.get("labels")
    if not isinstance(n, int) or not isinstance(rotation, list):
        raise MalformedInput("embedded-JSON fields have wrong types", 0)
    from .errors import PlanarTuranError

    try:
        return build_graph(n, rotation, labels)
    except MalformedInput:
        raise
    except (ValueError, TypeError, PlanarTuranError) as exc:
        raise MalformedInput(f"invalid rotation system: {exc}", 0) from None


def export_graph(g: EmbeddedGraph, fmt: str) -> bytes:
    """Serialize in one of graph6 / dot / json (embedded-JSON)."""
    if fmt == "graph6":
        return to_graph6(g) + b"\n"
    if fmt == "dot":
        return to_dot(g)
    if fmt == "json":
        return to_embedded_json(g)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def import_graph(data: bytes | str, fmt: str) -> EmbeddedGraph:
    if fmt == "graph6":
        return from_graph6(data)
    if fmt == "dot":
        return from_dot(data)
    if fmt == "json":
        return from_embedded_json(data)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
