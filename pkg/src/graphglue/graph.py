"""Oriented simple graphs, the edge-pair zeta classification, and gluing.

Vertices and edges are 0-based indices.  An :class:`OrientedGraph` is the
single source of truth from which every matrix in the package is built.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    IndexOutOfRange,
    InvalidBridge,
    InvalidInterface,
    ParallelEdge,
    SameEdge,
    SelfLoop,
    TooSmall,
)

Edge = tuple[int, int]


@dataclass(frozen=True)
class OrientedGraph:
    """A simple graph with a fixed orientation and ordering of its edges.

    ``edges[k] == (tail, head)`` means edge ``k`` starts at ``tail`` and
    ends at ``head``.
    """

    n_vertices: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        edges = tuple((int(t), int(h)) for t, h in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n_vertices < 0:
            raise IndexOutOfRange(f"negative vertex count {self.n_vertices}")
        seen: set[frozenset[int]] = set()
        for k, (t, h) in enumerate(edges):
            if not (0 <= t < self.n_vertices and 0 <= h < self.n_vertices):
                raise IndexOutOfRange(
                    f"edge {k} = ({t}, {h}) out of range for {self.n_vertices} vertices"
                )
            if t == h:
                raise SelfLoop(f"edge {k} is a self-loop at vertex {t}")
            key = frozenset((t, h))
            if key in seen:
                raise ParallelEdge(f"edge {k} = ({t}, {h}) duplicates an earlier edge")
            seen.add(key)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_lookup(self) -> dict[frozenset[int], int]:
        """Unordered endpoint pair -> edge index."""
        return {frozenset(e): k for k, e in enumerate(self.edges)}

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n_vertices)]
        for t, h in self.edges:
            adj[t].add(h)
            adj[h].add(t)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edge_lookup

    def with_edge(self, tail: int, head: int) -> OrientedGraph:
        return OrientedGraph(self.n_vertices, self.edges + ((tail, head),))

    def to_dict(self) -> dict:
        return {"vertices": self.n_vertices, "edges": [list(e) for e in self.edges]}


def new_graph(n_vertices: int, edges: Iterable[Sequence[int]] = ()) -> OrientedGraph:
    return OrientedGraph(int(n_vertices), tuple(tuple(e) for e in edges))


def disjoint_union(*graphs: OrientedGraph) -> OrientedGraph:
    offset = 0
    edges: list[Edge] = []
    for g in graphs:
        edges.extend((t + offset, h + offset) for t, h in g.edges)
        offset += g.n_vertices
    return OrientedGraph(offset, tuple(edges))


# -- generators ---------------------------------------------------------------


def complete_graph(n: int) -> OrientedGraph:
    if n < 1:
        raise TooSmall(f"complete graph needs n >= 1, got {n}")
    return OrientedGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def path_graph(n: int) -> OrientedGraph:
    if n < 1:
        raise TooSmall(f"path graph needs n >= 1, got {n}")
    return OrientedGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> OrientedGraph:
    # closing edge keeps the low->high convention: (0, n-1)
    if n < 3:
        raise TooSmall(f"cycle graph needs n >= 3, got {n}")
    return OrientedGraph(n, tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),))


def empty_graph(n: int) -> OrientedGraph:
    return OrientedGraph(n, ())


# -- zeta conditions ----------------------------------------------------------


class Zeta(enum.IntEnum):
    """How two distinct edges meet.  The integer value is the odd Laplacian entry."""

    NOT_INCIDENT = 0
    SAME_ENDPOINT_ROLE = 1
    OPPOSITE_ENDPOINT_ROLE = -1

    @property
    def tag(self) -> str:
        return {0: "NotIncident", 1: "SameEndpointRole", -1: "OppositeEndpointRole"}[self.value]


def zeta_of_edges(a: Edge, b: Edge) -> Zeta:
    """Classify two distinct simple edges given as (tail, head) pairs."""
    (ta, ha), (tb, hb) = a, b
    if ta == tb or ha == hb:
        return Zeta.SAME_ENDPOINT_ROLE
    if ta == hb or ha == tb:
        return Zeta.OPPOSITE_ENDPOINT_ROLE
    return Zeta.NOT_INCIDENT


def zeta(g: OrientedGraph, i: int, j: int) -> Zeta:
    m = g.n_edges
    if not (0 <= i < m and 0 <= j < m):
        raise IndexOutOfRange(f"edge indices ({i}, {j}) out of range for {m} edges")
    if i == j:
        raise SameEdge(f"zeta needs two distinct edges, got {i} twice")
    return zeta_of_edges(g.edges[i], g.edges[j])


# -- orientation & topology ---------------------------------------------------


def flip_orientation(g: OrientedGraph, flipped: Iterable[int]) -> OrientedGraph:
    flipped = set(flipped)
    for k in flipped:
        if not 0 <= k < g.n_edges:
            raise IndexOutOfRange(f"edge index {k} out of range for {g.n_edges} edges")
    return OrientedGraph(
        g.n_vertices,
        tuple((h, t) if k in flipped else (t, h) for k, (t, h) in enumerate(g.edges)),
    )


def connected_components(g: OrientedGraph) -> tuple[int, tuple[int, ...]]:
    """Number of components of the underlying undirected graph, plus a label
    per vertex (labels numbered in order of first appearance)."""
    labels = [-1] * g.n_vertices
    count = 0
    for start in range(g.n_vertices):
        if labels[start] >= 0:
            continue
        labels[start] = count
        stack = [start]
        while stack:
            v = stack.pop()
            for w in g.neighbors[v]:
                if labels[w] < 0:
                    labels[w] = count
                    stack.append(w)
        count += 1
    return count, tuple(labels)


def euler_characteristic(g: OrientedGraph) -> int:
    return g.n_vertices - g.n_edges


def relabel(
    g: OrientedGraph,
    vertex_order: Sequence[int],
    edge_order: Sequence[int] | None = None,
) -> OrientedGraph:
    """Reorder vertices (and optionally edges); ``vertex_order[new] = old``."""
    if sorted(vertex_order) != list(range(g.n_vertices)):
        raise IndexOutOfRange("vertex_order must be a permutation of the vertices")
    if edge_order is None:
        edge_order = range(g.n_edges)
    elif sorted(edge_order) != list(range(g.n_edges)):
        raise IndexOutOfRange("edge_order must be a permutation of the edges")
    new_of = {old: new for new, old in enumerate(vertex_order)}
    return OrientedGraph(
        g.n_vertices,
        tuple((new_of[g.edges[k][0]], new_of[g.edges[k][1]]) for k in edge_order),
    )


# -- gluing -------------------------------------------------------------------


@dataclass(frozen=True)
class InterfaceSpec:
    """Positional identification of a subgraph of Γ1 with one of Γ2."""

    vertices_1: tuple[int, ...]
    vertices_2: tuple[int, ...]
    edges_1: tuple[int, ...] = ()
    edges_2: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for name in ("vertices_1", "vertices_2", "edges_1", "edges_2"):
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))

    @property
    def q(self) -> int:
        return len(self.vertices_1)

    @property
    def r(self) -> int:
        return len(self.edges_1)

    def validate(self, g1: OrientedGraph, g2: OrientedGraph) -> None:
        if len(self.vertices_1) != len(self.vertices_2):
            raise InvalidInterface("vertex correspondence has unequal lengths")
        if len(self.edges_1) != len(self.edges_2):
            raise InvalidInterface("edge correspondence has unequal lengths")
        for seq, bound, what in (
            (self.vertices_1, g1.n_vertices, "vertex of graph 1"),
            (self.vertices_2, g2.n_vertices, "vertex of graph 2"),
            (self.edges_1, g1.n_edges, "edge of graph 1"),
            (self.edges_2, g2.n_edges, "edge of graph 2"),
        ):
            if len(set(seq)) != len(seq):
                raise InvalidInterface(f"duplicate {what} in interface")
            for x in seq:
                if not 0 <= x < bound:
                    raise InvalidInterface(f"interface {what} {x} out of range")
        phi = dict(zip(self.vertices_1, self.vertices_2))
        for k1, k2 in zip(self.edges_1, self.edges_2):
            t1, h1 = g1.edges[k1]
            if t1 not in phi or h1 not in phi:
                raise InvalidInterface(f"interface edge {k1} of graph 1 leaves the interface")
            if (phi[t1], phi[h1]) != g2.edges[k2]:
                raise InvalidInterface(
                    f"edge {k1} of graph 1 and edge {k2} of graph 2 do not match "
                    "under the vertex correspondence (endpoints or orientation)"
                )
        # closure: no edge between interface vertices may stay outside E(I)
        for g, verts, iedges, side in (
            (g1, self.vertices_1, self.edges_1, 1),
            (g2, self.vertices_2, self.edges_2, 2),
        ):
            vs, es = set(verts), set(iedges)
            for k, (t, h) in enumerate(g.edges):
                if t in vs and h in vs and k not in es:
                    raise InvalidInterface(
                        f"edge {k} of graph {side} joins interface vertices but is not "
                        "part of the interface"
                    )

    def to_dict(self) -> dict:
        return {
            "mode": "interface",
            "vertices": [[a, b] for a, b in zip(self.vertices_1, self.vertices_2)],
            "edges": [[a, b] for a, b in zip(self.edges_1, self.edges_2)],
        }


def interface_from_vertices(
    g1: OrientedGraph, g2: OrientedGraph, vertices_1: Sequence[int], vertices_2: Sequence[int]
) -> InterfaceSpec:
    """Build the interface induced by a vertex correspondence.

    The edge correspondence is forced by the closure rule: every edge of Γ1
    between interface vertices is paired with its image in Γ2.  Raises
    :class:`InvalidInterface` when the image is missing or reversed.
    """
    phi = dict(zip(vertices_1, vertices_2))
    vs = set(vertices_1)
    e1, e2 = [], []
    for k, (t, h) in enumerate(g1.edges):
        if t in vs and h in vs:
            k2 = g2.edge_lookup.get(frozenset((phi[t], phi[h])))
            if k2 is None:
                raise InvalidInterface(f"edge {k} of graph 1 has no partner in graph 2")
            e1.append(k)
            e2.append(k2)
    spec = InterfaceSpec(tuple(vertices_1), tuple(vertices_2), tuple(e1), tuple(e2))
    spec.validate(g1, g2)
    return spec


@dataclass(frozen=True)
class BridgeSpec:
    """Bridge edges; pair ``(a, b)`` joins vertex ``a`` of Γ1 to vertex ``b`` of Γ2."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))

    @property
    def k(self) -> int:
        return len(self.pairs)

    def validate(self, g1: OrientedGraph, g2: OrientedGraph) -> None:
        if not self.pairs:
            raise InvalidBridge("a bridge needs at least one edge")
        left = [a for a, _ in self.pairs]
        right = [b for _, b in self.pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise InvalidBridge("each vertex may carry at most one bridge edge")
        for a, b in self.pairs:
            if not 0 <= a < g1.n_vertices:
                raise InvalidBridge(f"bridge endpoint {a} out of range for graph 1")
            if not 0 <= b < g2.n_vertices:
                raise InvalidBridge(f"bridge endpoint {b} out of range for graph 2")

    def to_dict(self) -> dict:
        return {"mode": "bridge", "pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class GluedGraph:
    graph: OrientedGraph
    vmap_1: tuple[int, ...]
    vmap_2: tuple[int, ...]
    emap_1: tuple[int, ...]
    emap_2: tuple[int, ...]
    bridge_edge_indices: tuple[int, ...] = field(default=())


def glue_interface(g1: OrientedGraph, g2: OrientedGraph, iface: InterfaceSpec) -> GluedGraph:
    """Identify the interface subgraphs of ``g1`` and ``g2``.

    Output layout: Γ1-only vertices, interface vertices (in spec order), then
    Γ2-only vertices; edges likewise, with interface edges oriented as in Γ1.
    """
    iface.validate(g1, g2)
    n1, q = g1.n_vertices, iface.q
    v1_set, v2_set = set(iface.vertices_1), set(iface.vertices_2)

    vmap_1 = [-1] * n1
    vmap_2 = [-1] * g2.n_vertices
    nxt = 0
    for v in range(n1):
        if v not in v1_set:
            vmap_1[v] = nxt
            nxt += 1
    for a, b in zip(iface.vertices_1, iface.vertices_2):
        vmap_1[a] = vmap_2[b] = nxt
        nxt += 1
    for v in range(g2.n_vertices):
        if v not in v2_set:
            vmap_2[v] = nxt
            nxt += 1
    assert nxt == n1 + g2.n_vertices - q

    e1_set, e2_set = set(iface.edges_1), set(iface.edges_2)
    emap_1 = [-1] * g1.n_edges
    emap_2 = [-1] * g2.n_edges
    edges: list[Edge] = []
    for k, (t, h) in enumerate(g1.edges):
        if k not in e1_set:
            emap_1[k] = len(edges)
            edges.append((vmap_1[t], vmap_1[h]))
    for k1, k2 in zip(iface.edges_1, iface.edges_2):
        t, h = g1.edges[k1]
        emap_1[k1] = emap_2[k2] = len(edges)
        edges.append((vmap_1[t], vmap_1[h]))
    for k, (t, h) in enumerate(g2.edges):
        if k not in e2_set:
            emap_2[k] = len(edges)
            edges.append((vmap_2[t], vmap_2[h]))

    return GluedGraph(
        OrientedGraph(nxt, tuple(edges)),
        tuple(vmap_1),
        tuple(vmap_2),
        tuple(emap_1),
        tuple(emap_2),
    )


def glue_bridge(g1: OrientedGraph, g2: OrientedGraph, b: BridgeSpec) -> GluedGraph:
    """Join ``g1`` and ``g2`` with the bridge edges of ``b``.

    Output layout: Γ1 vertices then Γ2 vertices; edges of Γ1, bridge edges
    (oriented Γ1 -> Γ2, in spec order), then edges of Γ2.
    """
    b.validate(g1, g2)
    n1, m1 = g1.n_vertices, g1.n_edges
    vmap_1 = tuple(range(n1))
    vmap_2 = tuple(range(n1, n1 + g2.n_vertices))
    edges = list(g1.edges)
    edges.extend((a, n1 + c) for a, c in b.pairs)
    edges.extend((n1 + t, n1 + h) for t, h in g2.edges)
    return GluedGraph(
        OrientedGraph(n1 + g2.n_vertices, tuple(edges)),
        vmap_1,
        vmap_2,
        tuple(range(m1)),
        tuple(range(m1 + b.k, m1 + b.k + g2.n_edges)),
        tuple(range(m1, m1 + b.k)),
    )


def canonical_interface_inputs(
    g1: OrientedGraph, g2: OrientedGraph, iface: InterfaceSpec
) -> tuple[OrientedGraph, OrientedGraph, InterfaceSpec]:
    """Relabel the inputs so Γ1 ends with the interface and Γ2 starts with it.

    This is the layout the matrix-level gluing formulas index into.  Gluing
    the relabeled inputs yields exactly the same graph as gluing the
    originals.
    """
    iface.validate(g1, g2)
    v1s, v2s = set(iface.vertices_1), set(iface.vertices_2)
    e1s, e2s = set(iface.edges_1), set(iface.edges_2)
    vo1 = [v for v in range(g1.n_vertices) if v not in v1s] + list(iface.vertices_1)
    eo1 = [k for k in range(g1.n_edges) if k not in e1s] + list(iface.edges_1)
    vo2 = list(iface.vertices_2) + [v for v in range(g2.n_vertices) if v not in v2s]
    eo2 = list(iface.edges_2) + [k for k in range(g2.n_edges) if k not in e2s]
    h1 = relabel(g1, vo1, eo1)
    h2 = relabel(g2, vo2, eo2)
    q, r = iface.q, iface.r
    n1, m1 = g1.n_vertices, g1.n_edges
    spec = InterfaceSpec(
        tuple(range(n1 - q, n1)), tuple(range(q)), tuple(range(m1 - r, m1)), tuple(range(r))
    )
    return h1, h2, spec
