import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphglue import (
    BridgeSpec,
    InterfaceSpec,
    IntPoly,
    betti_numbers,
    cheeger_constant,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    even_laplacian,
    even_spectrum,
    fiedler_bounds_complete_bridge,
    fiedler_bounds_complete_bridge_samuelson,
    fiedler_value,
    flip_orientation,
    glue_bridge,
    glue_interface,
    isospectral_check,
    jacobi_eigh,
    new_graph,
    odd_spectrum,
    path_graph,
    q_poly,
    samuelson_root_bounds,
    spanning_tree_count,
    spanning_tree_count_cofactor,
)
from graphglue.errors import (
    Disconnected,
    NoConvergence,
    NoEdges,
    NoNonzeroEigenvalue,
    NotSymmetric,
    TooLarge,
    TooSmall,
)

from conftest import graphs

sym_matrices = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.integers(-5, 5), min_size=n * n, max_size=n * n).map(
        lambda xs: (lambda a: a + a.T)(np.array(xs, dtype=float).reshape(n, n))
    )
)


def cheeger_brute(g) -> Fraction:
    n = g.n_vertices
    best = None
    for size in range(1, n):
        if not 2 * size < n:
            continue
        for xs in combinations(range(n), size):
            s = set(xs)
            cut = sum(1 for t, h in g.edges if (t in s) != (h in s))
            r = Fraction(cut, size)
            best = r if best is None or r < best else best
    return best


class TestJacobi:
    @given(sym_matrices)
    def test_matches_numpy(self, a):
        w, v = jacobi_eigh(a, vectors=True)
        np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-9 * max(1.0, np.abs(a).max()))
        np.testing.assert_allclose(v.T @ v, np.eye(len(w)), atol=1e-10)
        np.testing.assert_allclose(v @ np.diag(w) @ v.T, a, atol=1e-9 * max(1.0, np.abs(a).max()))

    def test_ascending(self):
        w, _ = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
        assert list(w) == [-1.0, 2.0, 3.0]

    def test_rejects_asymmetric(self):
        with pytest.raises(NotSymmetric):
            jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_sweep_limit(self):
        a = even_laplacian(complete_graph(6)).to_numpy() + np.diag(np.arange(6.0))
        with pytest.raises(NoConvergence):
            jacobi_eigh(a, tol=1e-300, max_sweeps=1)


class TestSpectra:
    def test_c4(self):
        assert even_spectrum(cycle_graph(4)).eigenvalues == pytest.approx([0, 2, 2, 4], abs=1e-12)

    def test_betti(self):
        assert betti_numbers(complete_graph(4)) == (1, 3)
        assert betti_numbers(disjoint_union(path_graph(3), empty_graph(2))) == (3, 0)

    @given(graphs(min_n=1))
    def test_even_against_numpy(self, g):
        ref = np.linalg.eigvalsh(even_laplacian(g).to_numpy())
        assert even_spectrum(g).eigenvalues == pytest.approx(list(ref), abs=1e-9)

    @given(graphs(min_n=2), st.data())
    def test_isospectral_under_flips(self, g, data):
        if not g.n_edges:
            return
        flips = data.draw(st.sets(st.integers(0, g.n_edges - 1)))
        assert isospectral_check(flip_orientation(g, flips))
        even, odd = even_spectrum(g), odd_spectrum(g)
        b0, b1 = betti_numbers(g)
        assert (even.zero_count, odd.zero_count) == (b0, b1)
        assert all(abs(x) < 1e-9 for x in even.eigenvalues[:b0] + odd.eigenvalues[:b1])

    def test_isospectral_needs_edges(self):
        with pytest.raises(NoEdges):
            isospectral_check(empty_graph(3))

    def test_spectrum_serialization(self):
        d = even_spectrum(path_graph(2)).to_dict()
        assert d == {"eigenvalues": [0.0, 2.0], "zero_count": 1}


class TestFiedler:
    def test_examples(self):
        assert fiedler_value(path_graph(2)) == pytest.approx(2)
        assert fiedler_value(complete_graph(5)) == pytest.approx(5)
        assert fiedler_value(cycle_graph(6)) == pytest.approx(1)

    def test_disconnected_returns_smallest_nonzero(self):
        g = disjoint_union(path_graph(2), path_graph(2))
        assert fiedler_value(g) == pytest.approx(2)

    def test_errors(self):
        with pytest.raises(TooSmall):
            fiedler_value(empty_graph(1))
        with pytest.raises(NoNonzeroEigenvalue):
            fiedler_value(empty_graph(3))

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 7) for n in range(2, 7)])
    def test_interface_fiedler_is_one(self, m, n):
        g = glue_interface(complete_graph(m), complete_graph(n), InterfaceSpec((m - 1,), (0,))).graph
        assert fiedler_value(g) == pytest.approx(1, abs=1e-9)

    @pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 7) for n in range(2, 7)])
    def test_bridge_fiedler_within_root_bounds(self, m, n):
        g = glue_bridge(complete_graph(m), complete_graph(n), BridgeSpec(((m - 1, 0),))).graph
        f = fiedler_value(g)
        assert f in fiedler_bounds_complete_bridge_samuelson(m, n)
        # the Fiedler value is the smallest root of q_{m,n} or min(m, n)
        roots = sorted(np.roots(list(reversed(q_poly(m, n).coeffs))).real)
        assert f == pytest.approx(min(roots[0], m, n), abs=1e-9)

    def test_samuelson_radicand(self):
        for m in range(2, 7):
            for n in range(2, 7):
                root = math.sqrt(m * m + n * n - m * n + m + n - 2)
                b = samuelson_root_bounds(q_poly(m, n))
                assert b.lower == pytest.approx((m + n + 2 - 2 * root) / 3)
                assert b.upper == pytest.approx((m + n + 2 + 2 * root) / 3)

    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=5))
    def test_samuelson_contains_roots(self, roots):
        p = IntPoly((1,))
        for r in roots:
            p = p * IntPoly((-r, 1))
        b = samuelson_root_bounds(p)
        assert all(b.lower - 1e-9 <= r <= b.upper + 1e-9 for r in roots)

    def test_stated_bound_formula(self):
        b = fiedler_bounds_complete_bridge(3, 3)
        root = math.sqrt(9 + 9 - 9 + 6 - 6)
        assert (b.lower, b.upper) == pytest.approx(((8 - 2 * root) / 3, 3))


class TestSpanningTrees:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_paths_and_cycles(self, n):
        assert spanning_tree_count(path_graph(n)) == 1
        if n >= 3:
            assert spanning_tree_count(cycle_graph(n)) == n

    @pytest.mark.parametrize("m,n", [(2, 3), (4, 4), (5, 5), (3, 6)])
    def test_complete_gluings(self, m, n):
        expected = m ** (m - 2) * n ** (n - 2)
        km, kn = complete_graph(m), complete_graph(n)
        assert spanning_tree_count(glue_interface(km, kn, InterfaceSpec((0,), (0,))).graph) == expected
        assert spanning_tree_count(glue_bridge(km, kn, BridgeSpec(((0, 0),))).graph) == expected

    @given(graphs(min_n=1))
    def test_cofactor_oracle(self, g):
        t = spanning_tree_count(g)
        assert t == spanning_tree_count_cofactor(g)
        assert (t > 0) == (betti_numbers(g)[0] == 1)

    def test_cayley(self):
        assert spanning_tree_count(complete_graph(6)) == 6**4


class TestCheeger:
    def test_examples(self):
        assert cheeger_constant(complete_graph(4)) == 3
        assert cheeger_constant(path_graph(4)) == 1
        assert cheeger_constant(cycle_graph(6)) == 1

    def test_errors(self):
        with pytest.raises(TooSmall):
            cheeger_constant(path_graph(2))
        with pytest.raises(Disconnected):
            cheeger_constant(disjoint_union(path_graph(2), path_graph(2)))
        with pytest.raises(TooLarge):
            cheeger_constant(path_graph(21))

    @given(graphs(min_n=3, max_n=8))
    def test_brute_force_oracle(self, g):
        if betti_numbers(g)[0] != 1:
            return
        assert cheeger_constant(g) == cheeger_brute(g)

    def test_rational_result(self):
        # star K_{1,4}: any single leaf has ratio 1, the best
        g = new_graph(5, [(0, i) for i in range(1, 5)])
        assert cheeger_constant(g) == Fraction(1)
