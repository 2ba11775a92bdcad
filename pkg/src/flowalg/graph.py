"""Finite multigraphs with loops, parallel edges and a reference orientation.

A graph stores an ordered edge list of ``(edge_id, tail, head)`` triples.
The ordered pair (tail, head) fixes the reference direction of every edge;
all signed quantities downstream (incidence rows, flows, circulations) are
expressed in these coordinates.  Edge ids are arbitrary distinct unsigned
integers; ascending edge id is the tie-breaking order everywhere a
deterministic choice is needed (forests, recursion pivots, bases).

All values are immutable; operations return new graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import InputError

Edge = tuple[int, int, int]  # (edge id, tail vertex, head vertex)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise InputError("duplicate vertex id")
        seen = set()
        for eid, tail, head in self.edges:
            if eid in seen:
                raise InputError(f"duplicate edge id {eid}")
            seen.add(eid)
            if tail not in vset or head not in vset:
                raise InputError(f"edge {eid} references unknown vertex")

    # -- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    @cached_property
    def _pos(self) -> dict[int, int]:
        """Edge id -> position in the edge list (bit position in masks)."""
        return {e[0]: i for i, e in enumerate(self.edges)}

    @cached_property
    def _by_id(self) -> dict[int, Edge]:
        return {e[0]: e for e in self.edges}

    def edge(self, eid: int) -> Edge:
        try:
            return self._by_id[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid}") from None

    def position(self, eid: int) -> int:
        try:
            return self._pos[eid]
        except KeyError:
            raise InputError(f"unknown edge id {eid}") from None

    def is_loop(self, eid: int) -> bool:
        _, tail, head = self.edge(eid)
        return tail == head

    @cached_property
    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> list of (edge id, other endpoint); loops appear once."""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in self.vertices}
        for eid, tail, head in self.edges:
            adj[tail].append((eid, head))
            if tail != head:
                adj[head].append((eid, tail))
        return adj

    # -- edge subsets as bit masks ---------------------------------------

    def mask_of(self, edge_ids: Iterable[int]) -> int:
        mask = 0
        for eid in edge_ids:
            mask |= 1 << self.position(eid)
        return mask

    def ids_of(self, mask: int) -> tuple[int, ...]:
        return tuple(e[0] for i, e in enumerate(self.edges) if mask >> i & 1)

    def _check_subset(self, sigma: Iterable[int]) -> frozenset[int]:
        sigma = frozenset(sigma)
        for eid in sigma:
            self.edge(eid)
        return sigma

    # -- structure -------------------------------------------------------

    def components(self) -> tuple[int, dict[int, int]]:
        """Connected components: ``(count, vertex -> minimum vertex id of
        its component)``.  Loops are irrelevant."""
        return _components(self.vertices, [(t, h) for _, t, h in self.edges])

    @property
    def num_components(self) -> int:
        return self.components()[0]

    def delete(self, sigma: Iterable[int]) -> "Graph":
        """Remove the edges in sigma; the vertex set is unchanged."""
        sigma = self._check_subset(sigma)
        return Graph(self.vertices,
                     tuple(e for e in self.edges if e[0] not in sigma))

    def contract(self, sigma: Iterable[int]) -> "ContractionImage":
        """Collapse every edge of sigma to a point.

        Vertices of the image are the connected components of the spanning
        subgraph (V, sigma), each named by the minimum original vertex id it
        contains.  Edges outside sigma survive with their endpoints pushed
        through the quotient map and their direction inherited.
        """
        sigma = self._check_subset(sigma)
        _, comp = _components(
            self.vertices,
            [(t, h) for eid, t, h in self.edges if eid in sigma])
        new_vertices = tuple(sorted(set(comp.values())))
        new_edges = tuple((eid, comp[t], comp[h])
                          for eid, t, h in self.edges if eid not in sigma)
        return ContractionImage(Graph(new_vertices, new_edges), comp)

    def is_cut_edge(self, eid: int) -> bool:
        """True iff deleting the edge increases the component count.
        Loops are never cut-edges."""
        _, tail, head = self.edge(eid)
        if tail == head:
            return False
        k_before = self.components()[0]
        k_after = _components(
            self.vertices,
            [(t, h) for e, t, h in self.edges if e != eid])[0]
        return k_after > k_before

    @cached_property
    def cut_edges(self) -> frozenset[int]:
        return frozenset(e[0] for e in self.edges if self.is_cut_edge(e[0]))

    def maximal_forest(self) -> frozenset[int]:
        """Deterministic spanning forest: greedy over ascending edge id,
        skipping loops and cycle-closing edges."""
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        chosen = []
        for eid, tail, head in sorted(self.edges):
            rt, rh = find(tail), find(head)
            if rt != rh:
                parent[rt] = rh
                chosen.append(eid)
        return frozenset(chosen)

    def chords(self, forest: frozenset[int] | None = None) -> tuple[int, ...]:
        """Non-forest edges in ascending id order."""
        if forest is None:
            forest = self.maximal_forest()
        return tuple(sorted(set(self.edge_ids) - set(forest)))

    def basic_flow(self, forest: Iterable[int], c: int) -> tuple[int, ...]:
        """Signed indicator of the fundamental cycle of the chord ``c``,
        normalized to +1 at ``c`` in reference coordinates.

        The returned vector over edge positions satisfies every vertex
        conservation law (see :meth:`incidence_row`).
        """
        forest = self._check_subset(forest)
        if c in forest:
            raise InputError(f"edge {c} lies in the forest")
        if not _is_maximal_forest(self, forest):
            raise InputError("given edge set is not a maximal forest")
        _, tail_c, head_c = self.edge(c)
        flow = [0] * self.num_edges
        flow[self.position(c)] = 1
        if tail_c == head_c:
            return tuple(flow)
        path = _forest_path(self, forest, head_c, tail_c)
        if path is None:
            raise InputError("forest does not connect the endpoints of the chord")
        for eid, forward in path:
            flow[self.position(eid)] = 1 if forward else -1
        return tuple(flow)

    def girth(self):
        """Length of a shortest cycle: 1 for a loop, 2 for a parallel pair;
        ``inf`` for forests."""
        best = float("inf")
        for eid, tail, head in self.edges:
            if tail == head:
                return 1
            d = _dist_avoiding(self, tail, head, eid)
            if d is not None:
                best = min(best, d + 1)
        return best

    def incidence_row(self, v: int) -> tuple[int, ...]:
        """Signed vertex-edge incidence: entry for edge e is
        [head(e)=v] - [tail(e)=v]; loops contribute 0."""
        if v not in set(self.vertices):
            raise InputError(f"unknown vertex {v}")
        row = []
        for _, tail, head in self.edges:
            row.append((1 if head == v else 0) - (1 if tail == v else 0))
        return tuple(row)

    def incidence_rows(self) -> list[tuple[int, ...]]:
        return [self.incidence_row(v) for v in self.vertices]

    def reorient(self, edge_ids: Iterable[int]) -> "Graph":
        """Flip the stored direction of the given edges."""
        flip = self._check_subset(edge_ids)
        return Graph(self.vertices,
                     tuple((eid, head, tail) if eid in flip else (eid, tail, head)
                           for eid, tail, head in self.edges))


@dataclass(frozen=True)
class ContractionImage:
    """Result of contracting an edge subset: the image graph and the
    quotient map on vertices."""
    graph: Graph
    vertex_map: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))


# -- internal helpers ----------------------------------------------------


def _components(vertices, pairs):
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for t, h in pairs:
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rt] = rh
    rep: dict[int, int] = {}
    for v in vertices:
        r = find(v)
        rep[r] = min(rep.get(r, v), v)
    comp = {v: rep[find(v)] for v in vertices}
    return len(rep), comp


def _is_maximal_forest(g: Graph, edge_set: frozenset[int]) -> bool:
    n_forest = len(edge_set)
    k_sub, _ = _components(g.vertices,
                           [(t, h) for eid, t, h in g.edges if eid in edge_set])
    # acyclic iff |V| - |edges| = #components; maximal iff as many components
    # as the host graph
    return (g.num_vertices - n_forest == k_sub
            and k_sub == g.num_components)


def _forest_path(g: Graph, forest, start, goal):
    """BFS path through forest edges; returns [(edge id, traversed
    tail->head?)] or None."""
    if start == goal:
        return []
    adj: dict[int, list[tuple[int, int, bool]]] = {v: [] for v in g.vertices}
    for eid, t, h in g.edges:
        if eid in forest:
            adj[t].append((eid, h, True))
            adj[h].append((eid, t, False))
    prev: dict[int, tuple[int, int, bool] | None] = {start: None}
    queue = [start]
    while queue and goal not in prev:
        nxt = []
        for u in queue:
            for eid, other, fwd in adj[u]:
                if other not in prev:
                    prev[other] = (u, eid, fwd)
                    nxt.append(other)
        queue = nxt
    if goal not in prev:
        return None
    path = []
    v = goal
    while prev[v] is not None:
        u, eid, fwd = prev[v]
        path.append((eid, fwd))
        v = u
    path.reverse()
    return path


def _dist_avoiding(g: Graph, start, goal, avoid_eid):
    """Shortest edge count from start to goal not using the given edge."""
    if start == goal:
        return 0
    dist = {start: 0}
    queue = [start]
    while queue:
        nxt = []
        for u in queue:
            for eid, other in g.adjacency[u]:
                if eid == avoid_eid or other in dist:
                    continue
                dist[other] = dist[u] + 1
                if other == goal:
                    return dist[other]
                nxt.append(other)
        queue = nxt
    return None


# -- constructors used throughout tests and the corpus -------------------


def build(edges: Iterable[tuple[int, int, int]],
          isolated: Iterable[int] = ()) -> Graph:
    """Graph from (edge id, tail, head) triples; the vertex set is the union
    of the endpoints and any extra isolated vertices."""
    edges = tuple(edges)
    vertices = set(isolated)
    for _, t, h in edges:
        vertices.add(t)
        vertices.add(h)
    return Graph(tuple(sorted(vertices)), edges)


def cycle_graph(n: int) -> Graph:
    """n-cycle on vertices 1..n; a single loop when n = 1."""
    if n < 1:
        raise InputError("cycle needs at least one vertex")
    if n == 1:
        return build([(1, 1, 1)])
    return build([(i, i, i % n + 1) for i in range(1, n + 1)])


def path_graph(n: int) -> Graph:
    """Path with n vertices."""
    if n < 1:
        raise InputError("path needs at least one vertex")
    return build([(i, i, i + 1) for i in range(1, n)], isolated=[1])


def complete_graph(n: int) -> Graph:
    edges = []
    eid = 1
    for u in range(1, n + 1):
        for w in range(u + 1, n + 1):
            edges.append((eid, u, w))
            eid += 1
    return build(edges, isolated=range(1, n + 1))


def dipole_graph(n: int) -> Graph:
    """Two vertices joined by n parallel edges."""
    return build([(i, 1, 2) for i in range(1, n + 1)])


def bouquet_graph(n: int) -> Graph:
    """Single vertex with n loops."""
    return build([(i, 1, 1) for i in range(1, n + 1)], isolated=[1])


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; the second graph is relabeled above the first."""
    v_off = max(g1.vertices, default=0) + 1
    e_off = max(g1.edge_ids, default=0) + 1
    shifted = [(eid + e_off, t + v_off, h + v_off) for eid, t, h in g2.edges]
    vertices = tuple(sorted(set(g1.vertices) | {v + v_off for v in g2.vertices}))
    return Graph(vertices, g1.edges + tuple(shifted))


def one_point_union(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Glue two graphs by identifying one vertex of each."""
    v_off = max(g1.vertices, default=0) + 1
    e_off = max(g1.edge_ids, default=0) + 1

    def mv(v):
        return v1 if v == v2 else v + v_off

    shifted = [(eid + e_off, mv(t), mv(h)) for eid, t, h in g2.edges]
    vertices = set(g1.vertices) | {mv(v) for v in g2.vertices}
    return Graph(tuple(sorted(vertices)), g1.edges + tuple(shifted))
