"""Eigenvalues, Fiedler values, spanning trees, Betti numbers, Cheeger constants.

Multiplicities of the zero eigenvalue always come from the graph itself
(connected components and cycle rank), never from thresholding floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import (
    Disconnected,
    EigendecompositionFailure,
    InexactDivision,
    NoConvergence,
    NoEdges,
    NoNonzeroEigenvalue,
    NotSymmetric,
    TooLarge,
    TooSmall,
)
from .graph import OrientedGraph, connected_components
from .laplacian import IntMatrix, even_laplacian, odd_laplacian
from .poly import IntPoly, charpoly, det_bareiss, q_poly

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100
MAX_CHEEGER_VERTICES = 20


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    zero_count: int | None = None

    @property
    def nonzero(self) -> tuple[float, ...]:
        if self.zero_count is None:
            raise ValueError("zero multiplicity unknown for this spectrum")
        return self.eigenvalues[self.zero_count :]

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(f"{x:.12g}") for x in self.eigenvalues],
            "zero_count": self.zero_count,
        }


@dataclass(frozen=True)
class FiedlerBounds:
    lower: float
    upper: float

    def __contains__(self, x: float) -> bool:
        return self.lower <= x <= self.upper


def jacobi_eigh(
    a: np.ndarray,
    tol: float = DEFAULT_TOL,
    max_sweeps: int = MAX_SWEEPS,
    vectors: bool = False,
) -> tuple[np.ndarray, np.ndarray | None]:
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Returns eigenvalues in ascending order and, if requested, the matching
    orthonormal eigenvectors as columns.  Rotations sweep the upper triangle
    row by row until every off-diagonal entry is below ``tol * ||A||_F``.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise NotSymmetric("matrix is not square")
    if not np.array_equal(a, a.T):
        raise NotSymmetric("matrix is not symmetric")
    v = np.eye(n) if vectors else None
    threshold = tol * np.linalg.norm(a)

    def off_max() -> float:
        if n < 2:
            return 0.0
        return float(np.max(np.abs(a[np.triu_indices(n, 1)])))

    for _ in range(max_sweeps):
        if off_max() <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                if v is not None:
                    vp, vq = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    else:
        if off_max() > threshold:
            raise NoConvergence(f"Jacobi iteration did not converge in {max_sweeps} sweeps")

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    if v is not None:
        v = v[:, order]
    if not np.all(np.isfinite(w)):
        raise EigendecompositionFailure("non-finite eigenvalue")
    return w, v


def eigenvalues_sym(
    m: IntMatrix, tol: float = DEFAULT_TOL, zero_count: int | None = None
) -> Spectrum:
    if not m.is_symmetric():
        raise NotSymmetric("eigenvalues_sym needs a symmetric matrix")
    w, _ = jacobi_eigh(m.to_numpy(), tol)
    return Spectrum(tuple(float(x) for x in w), zero_count)


def betti_numbers(g: OrientedGraph) -> tuple[int, int]:
    b0, _ = connected_components(g)
    return b0, b0 - (g.n_vertices - g.n_edges)


def even_spectrum(g: OrientedGraph, tol: float = DEFAULT_TOL) -> Spectrum:
    return eigenvalues_sym(even_laplacian(g), tol, zero_count=betti_numbers(g)[0])


def odd_spectrum(g: OrientedGraph, tol: float = DEFAULT_TOL) -> Spectrum:
    return eigenvalues_sym(odd_laplacian(g), tol, zero_count=betti_numbers(g)[1])


def fiedler_value(g: OrientedGraph, tol: float = DEFAULT_TOL) -> float:
    """Smallest nonzero eigenvalue of the even Laplacian.

    For a disconnected graph this is the smallest nonzero eigenvalue as
    well, not the conventional algebraic connectivity of 0.
    """
    if g.n_vertices < 2:
        raise TooSmall("the Fiedler value needs at least two vertices")
    spec = even_spectrum(g, tol)
    if spec.zero_count >= g.n_vertices:
        raise NoNonzeroEigenvalue("a graph without edges has no nonzero eigenvalue")
    return spec.eigenvalues[spec.zero_count]


def fiedler_bounds_complete_bridge(m: int, n: int) -> FiedlerBounds:
    """Bounds on the Fiedler value of K_m and K_n joined by one edge."""
    if min(m, n) < 2:
        raise TooSmall("complete graphs in the bridge bound need at least 2 vertices")
    root = math.sqrt(m * m + n * n - m * n + m + n - 6)
    return FiedlerBounds(
        min(m, n, (m + n + 2 - 2 * root) / 3),
        min(m, n, (m + n + 2 + 2 * root) / 3),
    )


def samuelson_root_bounds(p: IntPoly) -> FiedlerBounds:
    """Interval containing every root of a real-rooted polynomial.

    With d roots of mean μ and variance σ², all roots lie in
    μ ± σ·sqrt(d - 1) (Laguerre-Samuelson).  The caller must know the roots
    are real; nothing here checks it.
    """
    d = p.degree
    if d < 1:
        raise TooSmall("need a polynomial of degree >= 1")
    lead = p.leading
    s1 = -p.coeff(d - 1) / lead
    s2 = s1 * s1 - 2 * p.coeff(d - 2) / lead if d >= 2 else s1 * s1
    mean = s1 / d
    half = math.sqrt(max((d - 1) * (s2 / d - mean * mean), 0.0))
    return FiedlerBounds(mean - half, mean + half)


def fiedler_bounds_complete_bridge_samuelson(m: int, n: int) -> FiedlerBounds:
    """Fiedler bounds for K_m, K_n joined by one edge, from the root interval of
    the cubic factor q_{m,n}.  The radicand works out to m²+n²-mn+m+n-2."""
    if min(m, n) < 2:
        raise TooSmall("complete graphs in the bridge bound need at least 2 vertices")
    roots = samuelson_root_bounds(q_poly(m, n))
    return FiedlerBounds(min(m, n, roots.lower), min(m, n, roots.upper))


def spanning_tree_count(g: OrientedGraph) -> int:
    """Number of spanning trees, read off the linear coefficient of the charpoly.

    det(Δ - λI) = ∏(λ_i - λ), so the λ coefficient is -∏_{i>=2} λ_i and
    dividing by -|V| gives the Kirchhoff count.  Zero for disconnected graphs.
    """
    n = g.n_vertices
    if n < 1:
        raise TooSmall("spanning trees need at least one vertex")
    c1 = charpoly(even_laplacian(g)).coeff(1)
    count, rem = divmod(-c1, n)
    if rem:
        raise InexactDivision(f"linear coefficient {c1} not divisible by {n}")
    return count


def spanning_tree_count_cofactor(g: OrientedGraph, v: int = 0) -> int:
    """Kirchhoff count as the determinant of a reduced Laplacian."""
    if g.n_vertices < 1:
        raise TooSmall("spanning trees need at least one vertex")
    return det_bareiss(even_laplacian(g).delete(v, v))


def isospectral_check(g: OrientedGraph, tol: float = 1e-8) -> bool:
    """True iff Δ⁺ and Δ⁻ share their nonzero spectrum and their kernels have
    dimensions b0 and b1."""
    if g.n_edges < 1:
        raise NoEdges("the even/odd comparison needs at least one edge")
    even, odd = even_spectrum(g), odd_spectrum(g)
    scale = max(1.0, max(abs(x) for x in even.eigenvalues))
    for spec in (even, odd):
        zeros = spec.eigenvalues[: spec.zero_count]
        rest = spec.eigenvalues[spec.zero_count :]
        if any(abs(x) > tol * scale for x in zeros):
            return False
        if any(x <= tol * scale for x in rest):
            return False
    a, b = even.nonzero, odd.nonzero
    return len(a) == len(b) and all(abs(x - y) <= tol * scale for x, y in zip(a, b))


def cheeger_constant(g: OrientedGraph) -> Fraction:
    """min |∂X|/|X| over vertex sets with 0 < |X| < |V|/2, by exhaustive search.

    The size bound is strict, so graphs need at least 3 vertices.
    """
    n = g.n_vertices
    if n < 3:
        raise TooSmall("no vertex set satisfies 0 < |X| < |V|/2 with fewer than 3 vertices")
    if n > MAX_CHEEGER_VERTICES:
        raise TooLarge(f"exhaustive Cheeger search is limited to {MAX_CHEEGER_VERTICES} vertices")
    if connected_components(g)[0] != 1:
        raise Disconnected("the Cheeger constant is defined for connected graphs")
    adj = [sum(1 << w for w in g.neighbors[v]) for v in range(n)]
    best: Fraction | None = None
    for size in range(1, (n - 1) // 2 + 1):
        for subset in combinations(range(n), size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            boundary = sum((adj[v] & ~mask).bit_count() for v in subset)
            ratio = Fraction(boundary, size)
            if best is None or ratio < best:
                best = ratio
    assert best is not None
    return best
