"""Incidence, adjacency, even and odd Laplacians, and their gluing formulas.

All matrices are :class:`IntMatrix` values holding Python ints.  The
``*_glued`` functions assemble the Laplacian of a glued graph entrywise from
the Laplacians of the pieces; they never look at the glued graph's own
Laplacian, which is what makes them checkable against direct construction.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, InvalidInterface
from .graph import (
    BridgeSpec,
    InterfaceSpec,
    OrientedGraph,
    canonical_interface_inputs,
    glue_interface,
    zeta_of_edges,
)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise DimensionMismatch(
                f"entries do not form a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> IntMatrix:
        cols = rows if cols is None else cols
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array(self.entries, dtype=dtype).reshape(self.rows, self.cols)

    def transpose(self) -> IntMatrix:
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = other.transpose().entries
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.entries),
        )

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def delete(self, row: int, col: int) -> IntMatrix:
        """Matrix with one row and one column removed."""
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexOutOfRange(f"({row}, {col}) out of range for {self.rows}x{self.cols}")
        return IntMatrix(
            self.rows - 1,
            self.cols - 1,
            tuple(
                r[:col] + r[col + 1 :] for i, r in enumerate(self.entries) if i != row
            ),
        )

    def to_dict(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": self.tolist()}

    @classmethod
    def from_dict(cls, doc: dict) -> IntMatrix:
        return cls(int(doc["rows"]), int(doc["cols"]), tuple(tuple(r) for r in doc["entries"]))


def _build(n: int, entry) -> IntMatrix:
    return IntMatrix(n, n, tuple(tuple(entry(i, j) for j in range(n)) for i in range(n)))


# -- direct construction ------------------------------------------------------


def incidence_matrix(g: OrientedGraph) -> IntMatrix:
    rows = [[0] * g.n_edges for _ in range(g.n_vertices)]
    for k, (t, h) in enumerate(g.edges):
        rows[t][k] = -1
        rows[h][k] = 1
    return IntMatrix(g.n_vertices, g.n_edges, tuple(map(tuple, rows)))


def adjacency_matrix(g: OrientedGraph) -> IntMatrix:
    rows = [[0] * g.n_vertices for _ in range(g.n_vertices)]
    for t, h in g.edges:
        rows[t][h] = rows[h][t] = 1
    return IntMatrix(g.n_vertices, g.n_vertices, tuple(map(tuple, rows)))


def even_laplacian(g: OrientedGraph) -> IntMatrix:
    """Valence on the diagonal, -1 between adjacent vertices."""
    rows = [[0] * g.n_vertices for _ in range(g.n_vertices)]
    for t, h in g.edges:
        rows[t][h] = rows[h][t] = -1
        rows[t][t] += 1
        rows[h][h] += 1
    return IntMatrix(g.n_vertices, g.n_vertices, tuple(map(tuple, rows)))


def odd_laplacian(g: OrientedGraph) -> IntMatrix:
    """2 on the diagonal, the zeta value of each edge pair off it."""
    edges = g.edges
    return _build(
        len(edges), lambda i, j: 2 if i == j else int(zeta_of_edges(edges[i], edges[j]))
    )


def even_laplacian_product(g: OrientedGraph) -> IntMatrix:
    inc = incidence_matrix(g)
    return inc @ inc.transpose()


def odd_laplacian_product(g: OrientedGraph) -> IntMatrix:
    inc = incidence_matrix(g)
    return inc.transpose() @ inc


def flip_odd_laplacian(lminus: IntMatrix, flipped: Iterable[int]) -> IntMatrix:
    """Odd Laplacian after reversing the edges in ``flipped``.

    Entries coupling a flipped edge to an unflipped one change sign.
    """
    if not lminus.is_square:
        raise DimensionMismatch("odd Laplacian must be square")
    flipped = set(flipped)
    for k in flipped:
        if not 0 <= k < lminus.rows:
            raise IndexOutOfRange(f"edge index {k} out of range for {lminus.rows} edges")
    return _build(
        lminus.rows,
        lambda i, j: -lminus[i, j] if (i in flipped) != (j in flipped) else lminus[i, j],
    )


# -- interface gluing ---------------------------------------------------------


def even_laplacian_interface_glued(
    l1: IntMatrix, l2: IntMatrix, n: int, m: int, q: int
) -> IntMatrix:
    """Even Laplacian of Γ1 ⊔_I Γ2 from those of Γ1 (n vertices) and Γ2.

    Canonical layout is required: the q interface vertices are the last q
    rows of ``l1`` and the first q rows of ``l2``, in matching order; the
    result has ``m = n + |V(Γ2)| - q`` rows.
    """
    if not (l1.is_square and l2.is_square):
        raise DimensionMismatch("Laplacians must be square")
    if l1.rows != n:
        raise DimensionMismatch(f"l1 is {l1.rows}x{l1.rows}, expected n={n}")
    if not 0 <= q <= min(n, l2.rows):
        raise DimensionMismatch(f"interface size {q} does not fit both graphs")
    if m != n + l2.rows - q:
        raise DimensionMismatch(f"m={m} but n + |V2| - q = {n + l2.rows - q}")
    lo = n - q  # first interface row (0-based)

    def mu(i: int) -> int:
        from1 = sum(abs(l1[i, j]) for j in range(lo, n) if j != i)
        from2 = sum(abs(l2[i - lo, j - lo]) for j in range(lo, n) if j != i)
        if from1 != from2:
            raise InvalidInterface(
                f"interface vertex {i} has {from1} interface neighbours in graph 1 "
                f"but {from2} in graph 2"
            )
        return from1

    def entry(i: int, j: int) -> int:
        if i < lo and j < n or j < lo and i < n:
            return l1[i, j]
        if i >= n and j >= lo or j >= n and i >= lo:
            return l2[i - lo, j - lo]
        if lo <= i < n and lo <= j < n:
            if i == j:
                return l1[i, i] + l2[i - lo, i - lo] - mu(i)
            return -l1[i, j] * l2[i - lo, j - lo]
        return 0

    return _build(m, entry)


def odd_laplacian_interface_glued(
    g1: OrientedGraph, g2: OrientedGraph, iface: InterfaceSpec
) -> IntMatrix:
    """Odd Laplacian of Γ1 ⊔_I Γ2 in the glued graph's edge order.

    Edges shared by both pieces copy Γ1's (equivalently Γ2's) entries; a pair
    with one edge private to each side gets its zeta value.  When the
    interface has no edges this is the block matrix ``[[L1, Qᵗ], [Q, L2]]``,
    see :func:`odd_interface_coupling`.
    """
    h1, h2, spec = canonical_interface_inputs(g1, g2, iface)
    edges = glue_interface(h1, h2, spec).graph.edges
    l1, l2 = odd_laplacian(h1), odd_laplacian(h2)
    p, r = h1.n_edges, spec.r
    lo = p - r

    def entry(i: int, j: int) -> int:
        if i < p and j < p:
            return l1[i, j]
        if i >= lo and j >= lo:
            return l2[i - lo, j - lo]
        return int(zeta_of_edges(edges[i], edges[j]))

    return _build(len(edges), entry)


def odd_interface_coupling(
    g1: OrientedGraph, g2: OrientedGraph, iface: InterfaceSpec
) -> IntMatrix:
    """The block Q for a vertex-only interface: ``Q[i, j]`` is the zeta value
    of edge i of Γ2 against edge j of Γ1, as they sit in the glued graph."""
    if iface.r:
        raise InvalidInterface("the coupling block form needs an interface without edges")
    h1, h2, spec = canonical_interface_inputs(g1, g2, iface)
    edges = glue_interface(h1, h2, spec).graph.edges
    p, t = h1.n_edges, h2.n_edges
    return IntMatrix(
        t, p, tuple(tuple(int(zeta_of_edges(edges[p + i], edges[j])) for j in range(p)) for i in range(t))
    )


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    rows: list[tuple[int, ...]] = []
    for brow in blocks:
        height = brow[0].rows
        if any(b.rows != height for b in brow):
            raise DimensionMismatch("blocks in one row must have equal height")
        for i in range(height):
            rows.append(sum((b.entries[i] for b in brow), ()))
    cols = sum(b.cols for b in blocks[0]) if blocks else 0
    return IntMatrix(len(rows), cols, tuple(rows))


def odd_laplacian_vertex_interface_glued(
    g1: OrientedGraph, g2: OrientedGraph, iface: InterfaceSpec
) -> IntMatrix:
    """Block form ``[[L1, Qᵗ], [Q, L2]]`` for an interface made of vertices only."""
    h1, h2, spec = canonical_interface_inputs(g1, g2, iface)
    q = odd_interface_coupling(h1, h2, spec)
    return block_matrix([[odd_laplacian(h1), q.transpose()], [q, odd_laplacian(h2)]])


# -- bridge gluing ------------------------------------------------------------


@dataclass(frozen=True)
class _Shape:
    """Stand-in carrying only a vertex count, for bridge validation against matrices."""

    n_vertices: int


def even_laplacian_bridge_glued(l1: IntMatrix, l2: IntMatrix, b: BridgeSpec) -> IntMatrix:
    """Even Laplacian of Γ1 ⊔_B Γ2 (vertex layout: Γ1 then Γ2)."""
    if not (l1.is_square and l2.is_square):
        raise DimensionMismatch("Laplacians must be square")
    n = l1.rows
    b.validate(_Shape(l1.rows), _Shape(l2.rows))
    partner: dict[int, int] = {}
    for a, c in b.pairs:
        partner[a] = n + c
        partner[n + c] = a

    def entry(i: int, j: int) -> int:
        if i < n and j < n:
            return l1[i, j] + (1 if i == j and i in partner else 0)
        if i >= n and j >= n:
            return l2[i - n, j - n] + (1 if i == j and i in partner else 0)
        return -1 if partner.get(i) == j else 0

    return _build(n + l2.rows, entry)


def odd_laplacian_bridge_glued(
    g1: OrientedGraph, g2: OrientedGraph, b: BridgeSpec
) -> IntMatrix:
    """Odd Laplacian of Γ1 ⊔_B Γ2 (edge layout: Γ1, bridges, Γ2)."""
    b.validate(g1, g2)
    n1 = g1.n_vertices
    p, k = g1.n_edges, b.k
    l1, l2 = odd_laplacian(g1), odd_laplacian(g2)
    bridges = [(a, n1 + c) for a, c in b.pairs]
    shifted2 = [(n1 + t, n1 + h) for t, h in g2.edges]
    edges = list(g1.edges) + bridges + shifted2
    hi = p + k

    def entry(i: int, j: int) -> int:
        if i < p and j < p:
            return l1[i, j]
        if i >= hi and j >= hi:
            return l2[i - hi, j - hi]
        if i < p and j >= hi or j < p and i >= hi:
            return 0
        if p <= i < hi and p <= j < hi:
            return 2 if i == j else 0
        return int(zeta_of_edges(edges[i], edges[j]))

    return _build(len(edges), entry)
