"""Exact integer polynomials in λ and characteristic polynomials of graphs.

Characteristic polynomials follow ``p_M(λ) = det(M - λI)``, so an n×n
matrix has leading coefficient ``(-1)**n``.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from concurrent.futures import Executor
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    IndexOutOfRange,
    InexactDivision,
    NotSquare,
    SameIndex,
    TooSmall,
    VerticesAdjacent,
)
from .graph import BridgeSpec, OrientedGraph, glue_bridge
from .laplacian import IntMatrix, even_laplacian, odd_laplacian


@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients ascending by power; zero is ``()``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(tuple(self.coeff(k) + other.coeff(k) for k in range(n)))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_lift(other))

    def __rsub__(self, other: int) -> IntPoly:
        return _lift(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _lift(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPoly:
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = IntPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, divisor: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Long division over the integers.

        Raises :class:`InexactDivision` if a quotient coefficient would not be
        an integer (never happens for monic-up-to-sign divisors).
        """
        if not divisor.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlen, lead = len(divisor.coeffs), divisor.leading
        quot = [0] * max(len(rem) - dlen + 1, 0)
        for shift in range(len(rem) - dlen, -1, -1):
            top = rem[shift + dlen - 1]
            if top == 0:
                continue
            c, r = divmod(top, lead)
            if r:
                raise InexactDivision(f"coefficient {top} not divisible by {lead}")
            quot[shift] = c
            for k, d in enumerate(divisor.coeffs):
                rem[shift + k] -= c * d
        return IntPoly(tuple(quot)), IntPoly(tuple(rem))

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("λ" if k == 1 else f"λ^{k}")
            mag = abs(c)
            body = f"{mag}{mono}" if mag != 1 or not mono else mono
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_list(cls, coeffs: Iterable[int]) -> IntPoly:
        return cls(tuple(int(c) for c in coeffs))


def _lift(x: IntPoly | int) -> IntPoly:
    return x if isinstance(x, IntPoly) else IntPoly((int(x),))


LAMBDA = IntPoly((0, 1))
ONE = IntPoly((1,))


def linear(root: int) -> IntPoly:
    """The factor λ - root."""
    return IntPoly((-root, 1))


# -- determinants -------------------------------------------------------------


def _rows(m: IntMatrix | Sequence[Sequence[int]]) -> list[list[int]]:
    if isinstance(m, IntMatrix):
        if not m.is_square:
            raise NotSquare(f"expected a square matrix, got {m.rows}x{m.cols}")
        return m.tolist()
    rows = [list(r) for r in m]
    if any(len(r) != len(rows) for r in rows):
        raise NotSquare("expected a square matrix")
    return rows


def det_bareiss(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = _rows(m)
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def charpoly(m: IntMatrix) -> IntPoly:
    """Coefficients of det(M - λI) by Berkowitz's division-free recursion."""
    a = _rows(m)
    n = len(a)
    if n == 0:
        return ONE
    # vect holds det(λI - A_r) for the leading r×r block, highest power first
    vect = [1, -a[0][0]]
    for r in range(1, n):
        row = a[r][:r]
        col = [a[i][r] for i in range(r)]
        toeplitz = [1, -a[r][r]]
        x = col
        for _ in range(r):
            toeplitz.append(-sum(p * q for p, q in zip(row, x)))
            x = [sum(a[i][j] * x[j] for j in range(r)) for i in range(r)]
        vect = [
            sum(toeplitz[i - j] * vect[j] for j in range(min(i, r) + 1))
            for i in range(r + 2)
        ]
    sign = -1 if n % 2 else 1
    return IntPoly(tuple(sign * c for c in reversed(vect)))


def minor_charpoly(m: IntMatrix, v: int) -> IntPoly:
    """Characteristic polynomial of M with row and column ``v`` deleted."""
    if not m.is_square:
        raise NotSquare(f"expected a square matrix, got {m.rows}x{m.cols}")
    if not 0 <= v < m.rows:
        raise IndexOutOfRange(f"vertex {v} out of range for {m.rows}x{m.rows} matrix")
    return charpoly(m.delete(v, v))


def _shifted_minor_det(m: IntMatrix, v1: int, v2: int, lam: int) -> int:
    rows = [
        [m[i, j] - (lam if i == j else 0) for j in range(m.cols) if j != v2]
        for i in range(m.rows)
        if i != v1
    ]
    return det_bareiss(rows)


def interpolate(points: Sequence[int], values: Sequence[int]) -> IntPoly:
    """Integer polynomial through ``(points[i], values[i])`` (Newton form).

    Raises :class:`InexactDivision` if the interpolant has a non-integer
    coefficient.
    """
    xs = [Fraction(x) for x in points]
    table = [Fraction(v) for v in values]
    n = len(xs)
    newton = [table[0]]
    for level in range(1, n):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(n - level)
        ]
        newton.append(table[0])
    # expand sum newton[k] * prod_{i<k} (λ - x_i)
    coeffs = [Fraction(0)] * n
    basis = [Fraction(1)]
    for k in range(n):
        for i, b in enumerate(basis):
            coeffs[i] += newton[k] * b
        if k < n - 1:
            nxt = [Fraction(0)] * (len(basis) + 1)
            for i, b in enumerate(basis):
                nxt[i + 1] += b
                nxt[i] -= xs[k] * b
            basis = nxt
    if any(c.denominator != 1 for c in coeffs):
        raise InexactDivision("interpolated polynomial has non-integer coefficients")
    return IntPoly(tuple(int(c) for c in coeffs))


def offdiag_minor_det(
    m: IntMatrix, v1: int, v2: int, executor: Executor | None = None
) -> IntPoly:
    """det((M - λI) with row v1 and column v2 removed), as a polynomial in λ.

    The minor has degree at most n-2; it is sampled at the n points
    λ = 0..n-1, so the extra sample doubles as a consistency check.
    """
    if not m.is_square:
        raise NotSquare(f"expected a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if not (0 <= v1 < n and 0 <= v2 < n):
        raise IndexOutOfRange(f"({v1}, {v2}) out of range for {n}x{n} matrix")
    if v1 == v2:
        raise SameIndex("off-diagonal minor needs two distinct indices")
    points = list(range(n))
    if executor is None:
        values = [_shifted_minor_det(m, v1, v2, lam) for lam in points]
    else:
        futures = [executor.submit(_shifted_minor_det, m, v1, v2, lam) for lam in points]
        values = [f.result() for f in futures]
    result = interpolate(points, values)
    if result.degree > n - 2:
        raise InexactDivision(
            f"off-diagonal minor came out with degree {result.degree} > {n - 2}"
        )
    return result


# -- gluing formulas ----------------------------------------------------------


def vertex_interface_charpoly(p1: IntPoly, p1v: IntPoly, p2: IntPoly, p2v: IntPoly) -> IntPoly:
    """Charpoly after identifying one vertex of Γ1 with one vertex of Γ2.

    ``p1v``/``p2v`` are the charpolys of each Laplacian with the glued
    vertex's row and column removed.
    """
    return p1 * p2v + p1v * p2 + LAMBDA * p1v * p2v


def bridge_charpoly(p1: IntPoly, p1v: IntPoly, p2: IntPoly, p2v: IntPoly) -> IntPoly:
    """Charpoly after joining Γ1 and Γ2 by a single edge between the removed vertices."""
    return p1 * p2 + p1 * p2v + p1v * p2


def _edge_terms(
    lap: IntMatrix, v1: int, v2: int, base: IntPoly | None, executor: Executor | None
) -> list[IntPoly]:
    jobs = [
        (minor_charpoly, (lap, v1)),
        (minor_charpoly, (lap, v2)),
        (offdiag_minor_det, (lap, v1, v2)),
    ]
    if base is None:
        jobs.insert(0, (charpoly, (lap,)))
    if executor is None:
        terms = [fn(*args) for fn, args in jobs]
    else:
        futures = [executor.submit(fn, *args) for fn, args in jobs]
        terms = [f.result() for f in futures]
    if base is not None:
        terms.insert(0, base)
    return terms


def add_edge_charpoly(
    lap: IntMatrix,
    v1: int,
    v2: int,
    base: IntPoly | None = None,
    executor: Executor | None = None,
) -> IntPoly:
    """Charpoly of the even Laplacian after adding an edge between v1 and v2.

    ``base`` may supply the current charpoly of ``lap`` when it is already
    known (as in the iterative bridge algorithm).  The cofactor sign uses
    0-based indices, which has the same parity as the 1-based form.
    """
    if not lap.is_square:
        raise NotSquare("Laplacian must be square")
    n = lap.rows
    if not (0 <= v1 < n and 0 <= v2 < n):
        raise IndexOutOfRange(f"({v1}, {v2}) out of range for {n} vertices")
    if v1 == v2:
        raise SameIndex("an edge needs two distinct endpoints")
    if lap[v1, v2] != 0:
        raise VerticesAdjacent(f"vertices {v1} and {v2} are already adjacent")
    p, p1, p2, off = _edge_terms(lap, v1, v2, base, executor)
    sign = -1 if (v1 + v2) % 2 else 1
    return p + p1 + p2 - 2 * sign * off


def multi_bridge_charpoly(
    g1: OrientedGraph, g2: OrientedGraph, b: BridgeSpec, executor: Executor | None = None
) -> IntPoly:
    """Charpoly of Γ1 ⊔_B Γ2 for k >= 1 bridges.

    The first bridge is handled with :func:`bridge_charpoly`; each further
    bridge is an edge insertion on the graph built so far, with its
    endpoints indexed in the glued layout (Γ1 block, then Γ2 block).
    Independent summands are dispatched to ``executor`` when one is given;
    they are always combined in the same order, so the result does not
    depend on scheduling.
    """
    b.validate(g1, g2)
    l1, l2 = even_laplacian(g1), even_laplacian(g2)
    a, c = b.pairs[0]
    jobs = [(charpoly, (l1,)), (minor_charpoly, (l1, a)), (charpoly, (l2,)), (minor_charpoly, (l2, c))]
    if executor is None:
        p1, p1v, p2, p2v = (fn(*args) for fn, args in jobs)
    else:
        futures = [executor.submit(fn, *args) for fn, args in jobs]
        p1, p1v, p2, p2v = (f.result() for f in futures)
    p = bridge_charpoly(p1, p1v, p2, p2v)
    graph = glue_bridge(g1, g2, BridgeSpec(b.pairs[:1])).graph
    n1 = g1.n_vertices
    for a, c in b.pairs[1:]:
        v1, v2 = a, n1 + c
        p = add_edge_charpoly(even_laplacian(graph), v1, v2, base=p, executor=executor)
        graph = graph.with_edge(v1, v2)
    return p


# -- Euler characteristic ratio -----------------------------------------------


@dataclass(frozen=True)
class EulerRatio:
    """p⁺/p⁻ = (-λ)**exponent; ``exact`` records that the division left no remainder."""

    exponent: int
    exact: bool


def _power_of_minus_lambda(q: IntPoly) -> int | None:
    d = q.degree
    if d < 0 or any(q.coeffs[:d]) or q.leading != (-1) ** d:
        return None
    return d


def euler_ratio(g: OrientedGraph) -> EulerRatio:
    """Divide the even-Laplacian charpoly by the odd one and read off the exponent.

    Raises :class:`InexactDivision` if the quotient is not a power of -λ or
    its exponent differs from |V| - |E|.
    """
    p_even = charpoly(even_laplacian(g))
    p_odd = charpoly(odd_laplacian(g))
    chi = g.n_vertices - g.n_edges
    num, den = (p_even, p_odd) if chi >= 0 else (p_odd, p_even)
    quot, rem = divmod(num, den)
    if rem.coeffs:
        raise InexactDivision(f"charpoly ratio leaves remainder {rem}")
    d = _power_of_minus_lambda(quot)
    if d is None:
        raise InexactDivision(f"charpoly ratio {quot} is not a power of -λ")
    exponent = d if chi >= 0 else -d
    if exponent != chi:
        raise InexactDivision(f"ratio exponent {exponent} differs from Euler characteristic {chi}")
    return EulerRatio(exponent, True)


# -- closed forms -------------------------------------------------------------


def _need(n: int, lo: int, what: str) -> None:
    if n < lo:
        raise TooSmall(f"{what} needs n >= {lo}, got {n}")


def complete_charpoly(n: int) -> IntPoly:
    _need(n, 2, "complete graph charpoly")
    return (-1) ** n * LAMBDA * linear(n) ** (n - 1)


def complete_minor_charpoly(n: int) -> IntPoly:
    _need(n, 2, "complete graph minor charpoly")
    return (-1) ** (n - 1) * linear(1) * linear(n) ** (n - 2)


def q_poly(m: int, n: int) -> IntPoly:
    _need(min(m, n), 2, "q_{m,n}")
    return IntPoly((-(m + n), 1 + (m + 1) * (n + 1), -(m + n + 2), 1))


def complete_interface_glue_charpoly(m: int, n: int) -> IntPoly:
    """K_m and K_n sharing one vertex."""
    _need(min(m, n), 2, "complete graph gluing")
    return (
        (-1) ** (m + n - 1)
        * LAMBDA
        * linear(m) ** (m - 2)
        * linear(n) ** (n - 2)
        * linear(1)
        * linear(m + n - 1)
    )


def complete_bridge_glue_charpoly(m: int, n: int) -> IntPoly:
    """K_m and K_n joined by one edge."""
    _need(min(m, n), 2, "complete graph gluing")
    return (-1) ** (m + n) * LAMBDA * linear(m) ** (m - 2) * linear(n) ** (n - 2) * q_poly(m, n)


def cycle_charpoly_eval(n: int, lam: float) -> float:
    _need(n, 3, "cycle charpoly")
    return math.prod(2.0 * (1.0 - math.cos(2.0 * math.pi * j / n)) - lam for j in range(n))


def cycle_minor_charpoly_eval(n: int, lam: float) -> float:
    _need(n, 3, "cycle minor charpoly")
    return math.prod(2.0 * (1.0 - math.cos(math.pi * j / n)) - lam for j in range(1, n))


def cycle_interface_glue_eval(m: int, n: int, lam: float) -> float:
    """C_m and C_n sharing one vertex, evaluated from the cycle product forms."""
    pm, pmv = cycle_charpoly_eval(m, lam), cycle_minor_charpoly_eval(m, lam)
    pn, pnv = cycle_charpoly_eval(n, lam), cycle_minor_charpoly_eval(n, lam)
    return pm * pnv + pmv * pn + lam * pmv * pnv


def cycle_bridge_glue_eval(m: int, n: int, lam: float) -> float:
    """C_m and C_n joined by one edge, evaluated from the cycle product forms."""
    pm, pmv = cycle_charpoly_eval(m, lam), cycle_minor_charpoly_eval(m, lam)
    pn, pnv = cycle_charpoly_eval(n, lam), cycle_minor_charpoly_eval(n, lam)
    return pm * pn + pm * pnv + pmv * pn
