"""Exact cycle queries: girth, fixed-length existence, longest cycle, enumeration.

All searches are deterministic (ascending start vertices, sorted adjacency)
and exact; there is no sampling or hashing anywhere.  Runaway searches are
converted into explicit BudgetExceeded errors by a node-expansion budget
(default 10**9, overridable per call or via the TURAN_BUDGET environment
variable).

The fixed-length search kills rotational duplicates by rooting each cycle at
its smallest vertex and prunes with BFS distances back to the root, computed
once per root on the induced subgraph of not-smaller vertices.  On hosts of
girth l+1 carrying small gadgets this prunes almost everything.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .embedding import EmbeddedGraph
from .errors import AcyclicGraph, BudgetExceeded, GraphTooLarge

DEFAULT_BUDGET = 10**9
LONGEST_CYCLE_DEFAULT_CAP = 24


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("TURAN_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class CycleReport:
    """Result of a cycle query, with a verified witness when one exists.

    ``explored`` counts node expansions, for performance regression tracking.
    """

    kind: str
    answer: int | bool
    witness: tuple[int, ...] | None
    explored: int


def canonical_cycle(cycle: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Rotate/reflect so the smallest vertex comes first, smaller neighbor second."""
    cyc = list(cycle)
    k = len(cyc)
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if k > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return tuple(cyc)


def check_cycle(g: EmbeddedGraph, cycle: tuple[int, ...], length: int | None = None) -> bool:
    """Witness validity: distinct vertices, consecutive adjacency, closing edge."""
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        return False
    if length is not None and len(cycle) != length:
        return False
    adj = g.adjacency
    return all(cycle[(i + 1) % len(cycle)] in adj[cycle[i]] for i in range(len(cycle)))


def _sorted_adj(g: EmbeddedGraph) -> list[list[int]]:
    return [sorted(r) for r in g.rotation]


def _bfs_dist_from(adj: list[list[int]], root: int, floor: int) -> list[int]:
    """BFS distances from root within the subgraph induced by vertices >= floor."""
    n = len(adj)
    inf = n + 1
    dist = [inf] * n
    dist[root] = 0
    q = deque([root])
    while q:
        v = q.popleft()
        dv = dist[v]
        for u in adj[v]:
            if u >= floor and dist[u] > dv + 1:
                dist[u] = dv + 1
                q.append(u)
    return dist


# ---------------------------------------------------------------------------
# girth
# ---------------------------------------------------------------------------

def girth(g: EmbeddedGraph, budget: int | None = None) -> CycleReport:
    """Exact girth: shortest cycle through each edge via BFS with the edge removed."""
    limit = resolve_budget(budget)
    adj = _sorted_adj(g)
    n = g.n
    inf = n + 1
    best = inf
    best_witness: tuple[int, ...] | None = None
    explored = 0
    for u, v in g.edges():
        # shortest u-v path avoiding the edge uv itself
        dist = [inf] * n
        parent = [-1] * n
        dist[u] = 0
        q = deque([u])
        found = inf
        while q:
            x = q.popleft()
            if dist[x] + 1 >= best or dist[x] + 1 >= found:
                continue
            for y in adj[x]:
                if x == u and y == v:
                    continue
                explored += 1
                if explored > limit:
                    raise BudgetExceeded(explored)
                if dist[y] > dist[x] + 1:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    if y == v:
                        found = dist[y]
                    else:
                        q.append(y)
        if found + 1 < best:
            best = found + 1
            path = [v]
            while path[-1] != u:
                path.append(parent[path[-1]])
            best_witness = canonical_cycle(path)
        if best == 3:
            break
    if best >= inf:
        raise AcyclicGraph("graph has no cycle")
    assert best_witness is not None and check_cycle(g, best_witness, best)
    return CycleReport("girth", best, best_witness, explored)


# ---------------------------------------------------------------------------
# fixed-length existence
# ---------------------------------------------------------------------------

def _fixed_length_from_root(
    adj: list[list[int]],
    adj_sets: list[frozenset[int]],
    root: int,
    length: int,
    limit: int,
    explored_start: int,
) -> tuple[tuple[int, ...] | None, int]:
    """Search for a cycle of exactly ``length`` whose smallest vertex is ``root``."""
    n = len(adj)
    dist = _bfs_dist_from(adj, root, root)
    explored = explored_start
    reach = length - 1
    root_adj = adj_sets[root]
    cand0 = [w for w in adj[root] if w > root and dist[w] <= reach]
    if not cand0:
        return None, explored
    on_path = bytearray(n)
    on_path[root] = 1
    path = [root]
    stack: list[Iterator[int]] = [iter(cand0)]
    while stack:
        it = stack[-1]
        depth = len(path) - 1  # edges used so far
        moved = False
        for w in it:
            explored += 1
            if explored > limit:
                raise BudgetExceeded(explored)
            if on_path[w] or w <= root:
                continue
            if dist[w] > length - depth - 1:
                continue
            if depth + 1 == length - 1:
                # w would be the last vertex: close through the root
                if w in root_adj and path[1] < w:
                    cycle = tuple(path) + (w,)
                    return cycle, explored
                continue
            path.append(w)
            on_path[w] = 1
            stack.append(iter(adj[w]))
            moved = True
            break
        if not moved:
            stack.pop()
            dropped = path.pop()
            on_path[dropped] = 0
    return None, explored


def has_cycle_of_length(
    g: EmbeddedGraph,
    length: int,
    budget: int | None = None,
    jobs: int = 1,
) -> CycleReport:
    """True iff a simple cycle of exactly ``length`` exists (exhaustive, pruned DFS)."""
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    limit = resolve_budget(budget)
    if length > g.n:
        return CycleReport("fixed-length", False, None, 0)
    adj = _sorted_adj(g)
    adj_sets = g.adjacency
    if jobs > 1:
        return _has_cycle_parallel(g, length, limit, jobs)
    explored = 0
    for root in range(g.n - length + 1):
        witness, explored = _fixed_length_from_root(adj, adj_sets, root, length, limit, explored)
        if witness is not None:
            assert check_cycle(g, witness, length)
            return CycleReport("fixed-length", True, witness, explored)
    return CycleReport("fixed-length", False, None, explored)


def _fixed_worker(args) -> tuple[int, tuple[int, ...] | None, int]:
    rotation, root, length, limit = args
    g = EmbeddedGraph(rotation)
    adj = _sorted_adj(g)
    witness, explored = _fixed_length_from_root(adj, g.adjacency, root, length, limit, 0)
    return root, witness, explored


def _has_cycle_parallel(g: EmbeddedGraph, length: int, limit: int, jobs: int) -> CycleReport:
    """Per-root tasks merged in root order, so the report matches a serial run."""
    from concurrent.futures import ProcessPoolExecutor

    roots = list(range(g.n - length + 1))
    explored = 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        tasks = [(g.rotation, r, length, limit) for r in roots]
        for root, witness, expl in pool.map(_fixed_worker, tasks, chunksize=8):
            explored += expl
            if explored > limit:
                raise BudgetExceeded(explored)
            if witness is not None:
                assert check_cycle(g, witness, length)
                return CycleReport("fixed-length", True, witness, explored)
    return CycleReport("fixed-length", False, None, explored)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_cycles(
    g: EmbeddedGraph,
    max_len: int | None = None,
    budget: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every simple cycle of length <= max_len exactly once.

    Cycles come out in canonical form (smallest vertex first, smaller
    neighbor second), grouped by root and then in DFS order, which is a
    deterministic total order.
    """
    limit = resolve_budget(budget)
    cap = g.n if max_len is None else min(max_len, g.n)
    if cap < 3:
        return
    adj = _sorted_adj(g)
    adj_sets = g.adjacency
    n = g.n
    explored = 0
    for root in range(n):
        dist = _bfs_dist_from(adj, root, root)
        root_adj = adj_sets[root]
        cand0 = [w for w in adj[root] if w > root and dist[w] <= cap - 1]
        if len(cand0) < 2:
            continue
        on_path = bytearray(n)
        on_path[root] = 1
        path = [root]
        stack: list[Iterator[int]] = [iter(cand0)]
        while stack:
            it = stack[-1]
            moved = False
            for w in it:
                explored += 1
                if explored > limit:
                    raise BudgetExceeded(explored)
                if on_path[w] or w <= root:
                    continue
                depth = len(path)  # vertices on path including root; w would be depth+1-th
                if depth + dist[w] > cap:
                    continue
                path.append(w)
                on_path[w] = 1
                if len(path) >= 3 and w in root_adj and path[1] < w:
                    cycle = tuple(path)
                    assert check_cycle(g, cycle, len(cycle))
                    yield cycle
                if len(path) < cap:
                    stack.append(iter(adj[w]))
                else:
                    path.pop()
                    on_path[w] = 0
                moved = True
                break
            if not moved:
                stack.pop()
                dropped = path.pop()
                on_path[dropped] = 0


# ---------------------------------------------------------------------------
# exact longest cycle
# ---------------------------------------------------------------------------

def _simplicial_leaves(g: EmbeddedGraph) -> frozenset[int]:
    """Greedy maximal independent set of degree-3 vertices with triangle links.

    Members ("leaves") have their whole neighborhood pairwise adjacent, so a
    cycle restricted to the non-leaf core is again a cycle; that is what
    makes the compression in :func:`_longest_by_leaf_compression` exact.
    """
    adj = g.adjacency
    chosen: set[int] = set()
    for v in range(g.n):
        if g.degree(v) != 3:
            continue
        x, y, z = g.rotation[v]
        if x in chosen or y in chosen or z in chosen:
            continue
        if y in adj[x] and z in adj[x] and z in adj[y]:
            chosen.add(v)
    return frozenset(chosen)


def _max_gap_matching(candidates: list[list[int]]) -> tuple[int, dict[int, int]]:
    """Maximum bipartite matching of cycle gaps to insertable leaves (Kuhn)."""
    owner: dict[int, int] = {}

    def augment(gap: int, seen: set[int]) -> bool:
        for leaf in candidates[gap]:
            if leaf in seen:
                continue
            seen.add(leaf)
            if leaf not in owner or augment(owner[leaf], seen):
                owner[leaf] = gap
                return True
        return False

    size = 0
    for gap in range(len(candidates)):
        if augment(gap, set()):
            size += 1
    return size, {gap: leaf for leaf, gap in owner.items()}


def _longest_by_leaf_compression(
    g: EmbeddedGraph,
    leaves: frozenset[int],
    limit: int,
) -> CycleReport:
    """Exact longest cycle when a simplicial leaf layer exists.

    Any cycle visiting at least 3 core vertices restricts to a simple core
    cycle; conversely a core cycle of length m extended by a set of distinct
    leaves, one per gap whose endpoints the leaf is adjacent to, is a cycle
    of G.  So the maximum is  max over core cycles of  m + matching(gaps,
    leaves), plus degenerate cycles with at most 2 core vertices (length at
    most 4).  Core cycles are processed by decreasing length and the scan
    stops once 2m cannot beat the best, since at most one leaf fits per gap.
    """
    adj = g.adjacency
    core = [v for v in range(g.n) if v not in leaves]
    core_set = set(core)
    # candidate leaves per core edge
    edge_leaves: dict[tuple[int, int], list[int]] = {}
    for w in sorted(leaves):
        nbrs = sorted(g.rotation[w])
        for i in range(3):
            for j in range(i + 1, 3):
                edge_leaves.setdefault((nbrs[i], nbrs[j]), []).append(w)

    explored = 0
    by_length: dict[int, list[tuple[int, ...]]] = {}
    # enumerate all simple cycles of the core subgraph
    core_adj = [sorted(u for u in g.rotation[v] if u in core_set) for v in range(g.n)]
    for root in core:
        on_path = bytearray(g.n)
        on_path[root] = 1
        path = [root]
        stack: list[Iterator[int]] = [iter([w for w in core_adj[root] if w > root])]
        while stack:
            it = stack[-1]
            moved = False
            for w in it:
                explored += 1
                if explored > limit:
                    raise BudgetExceeded(explored)
                if on_path[w] or w <= root:
                    continue
                path.append(w)
                on_path[w] = 1
                if len(path) >= 3 and root in adj[w] and path[1] < w:
                    by_length.setdefault(len(path), []).append(tuple(path))
                stack.append(iter(core_adj[w]))
                moved = True
                break
            if not moved:
                stack.pop()
                on_path[path.pop()] = 0

    best = 0
    best_witness: tuple[int, ...] | None = None
    # degenerate cycles with at most 2 core vertices: a leaf triangle (length
    # 3) and leaf pairs sharing two core neighbors (length 4); these only
    # matter when the core is nearly empty
    leaf_list = sorted(leaves)
    if leaf_list:
        w = leaf_list[0]
        x, y, _ = sorted(g.rotation[w])
        best = 3
        best_witness = canonical_cycle((x, y, w))
    for i, w in enumerate(leaf_list):
        if best >= 4:
            break
        for w2 in leaf_list[i + 1:]:
            common = sorted(adj[w] & adj[w2])
            if len(common) >= 2:
                best = 4
                best_witness = canonical_cycle((common[0], w, common[1], w2))
                break

    for m in sorted(by_length, reverse=True):
        if 2 * m <= best:
            break
        for cycle in by_length[m]:
            if 2 * m <= best:
                break
            gaps = []
            for i in range(m):
                x, y = cycle[i], cycle[(i + 1) % m]
                key = (x, y) if x < y else (y, x)
                gaps.append(edge_leaves.get(key, []))
            explored += m
            if explored > limit:
                raise BudgetExceeded(explored)
            bonus, assignment = _max_gap_matching(gaps)
            if m + bonus > best:
                best = m + bonus
                full: list[int] = []
                for i in range(m):
                    full.append(cycle[i])
                    if i in assignment:
                        full.append(assignment[i])
                best_witness = canonical_cycle(full)

    if best < 3:
        raise AcyclicGraph("graph has no cycle")
    assert best_witness is not None and check_cycle(g, best_witness, best)
    return CycleReport("longest", best, best_witness, explored)


def _reach_mask(start_bit: int, free: int, adj_masks: list[int]) -> int:
    """Vertices reachable from start within ``free``, as a bitmask."""
    reach = start_bit
    frontier = start_bit
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= adj_masks[low.bit_length() - 1]
            f ^= low
        grow &= free & ~reach
        reach |= grow
        frontier = grow
    return reach


def _peel_two_core(cand: int, anchor_bits: int, adj_masks: list[int]) -> int:
    """Drop candidates with < 2 available neighbors until stable.

    A vertex still to be visited on a cycle needs two neighbors among the
    other candidates and the two open endpoints, so peeled vertices can never
    appear on any completion of the current path.
    """
    while True:
        keep = 0
        avail = cand | anchor_bits
        c = cand
        while c:
            low = c & -c
            c ^= low
            if (adj_masks[low.bit_length() - 1] & avail & ~low).bit_count() >= 2:
                keep |= low
        if keep == cand:
            return cand
        cand = keep


def longest_cycle_exact(
    g: EmbeddedGraph,
    max_vertices: int = LONGEST_CYCLE_DEFAULT_CAP,
    budget: int | None = None,
) -> CycleReport:
    """Exact maximum cycle length; exponential, meant for gadget-scale graphs.

    Guarded by ``max_vertices`` (raise the cap explicitly for larger runs)
    and the expansion budget.  When the graph carries an independent layer of
    simplicial degree-3 vertices, as every stacked triangulation does, the
    search compresses that layer away and decides the rest by matching;
    otherwise it falls back to branch-and-bound DFS over paths, pruned by
    root reachability and an iterated 2-core peel of the candidate set.
    """
    n = g.n
    if n > max_vertices:
        raise GraphTooLarge(f"{n} vertices exceeds cap {max_vertices}")
    limit = resolve_budget(budget)
    leaves = _simplicial_leaves(g)
    if leaves and n - len(leaves) >= 3:
        return _longest_by_leaf_compression(g, leaves, limit)
    adj = _sorted_adj(g)
    adj_masks = [0] * n
    for v, neighbors in enumerate(adj):
        m = 0
        for u in neighbors:
            m |= 1 << u
        adj_masks[v] = m
    best = 0
    best_witness: tuple[int, ...] | None = None
    explored = 0
    for root in range(n):
        if n - root <= best:
            break  # cycles rooted here cannot beat the best found
        root_bit = 1 << root
        allowed = ((1 << n) - 1) & ~((1 << root) - 1)  # vertices >= root
        path = [root]
        visited = root_bit
        stack: list[Iterator[int]] = [iter([w for w in adj[root] if w > root])]
        while stack:
            it = stack[-1]
            v = path[-1]
            moved = False
            for w in it:
                explored += 1
                if explored > limit:
                    raise BudgetExceeded(explored)
                wbit = 1 << w
                if (wbit & allowed) == 0 or (wbit & visited):
                    continue
                free = allowed & ~visited
                reach = _reach_mask(wbit, free, adj_masks)
                if not (reach & adj_masks[root]) and not (wbit & adj_masks[root]):
                    continue  # no way back to the root
                upper = len(path) + 1 + (reach & ~wbit).bit_count()
                if upper <= best:
                    continue
                cand = _peel_two_core(reach & ~wbit, wbit | root_bit, adj_masks)
                upper = len(path) + 1 + cand.bit_count()
                if upper <= best:
                    continue
                path.append(w)
                visited |= wbit
                if len(path) >= 3 and (adj_masks[w] & root_bit):
                    if len(path) > best:
                        best = len(path)
                        best_witness = canonical_cycle(path)
                stack.append(iter(adj[w]))
                moved = True
                break
            if not moved:
                stack.pop()
                dropped = path.pop()
                visited &= ~(1 << dropped)
    if best < 3:
        raise AcyclicGraph("graph has no cycle")
    assert best_witness is not None and check_cycle(g, best_witness, best)
    return CycleReport("longest", best, best_witness, explored)
