import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphglue import (
    EvolutionParams,
    complete_graph,
    even_laplacian,
    evolve,
    path_graph,
    propagator,
    propagator_series,
)
from graphglue.errors import DimensionMismatch
from graphglue.quantum import wave_from_pairs, wave_to_pairs

from conftest import graphs

scales = st.floats(-2, 2, allow_nan=False)


def test_p2_closed_form():
    s = 0.37
    u = propagator(path_graph(2), EvolutionParams(1.0, s))
    a, b = (1 + cmath.exp(2j * s)) / 2, (1 - cmath.exp(2j * s)) / 2
    np.testing.assert_allclose(u, [[a, b], [b, a]], atol=1e-12)


def test_p2_transfer_at_quarter_period():
    psi = evolve([1, 0], path_graph(2), EvolutionParams(1.0, math.pi / 2))
    np.testing.assert_allclose(psi, [0, 1], atol=1e-9)


def test_zero_time_is_identity_exactly():
    psi0 = np.array([0.6, 0.8j, 0])
    assert np.array_equal(evolve(psi0, path_graph(3), EvolutionParams(2.5, 0.0)), psi0)


def test_coeff_and_dt_enter_as_product():
    g = complete_graph(4)
    np.testing.assert_allclose(
        propagator(g, EvolutionParams(2.0, 0.25)), propagator(g, EvolutionParams(0.5, 1.0)), atol=1e-13
    )


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        evolve([1, 0, 0], path_graph(2), EvolutionParams(1.0, 1.0))


def test_non_finite_params():
    with pytest.raises(ValueError):
        EvolutionParams(float("nan"), 1.0)


def test_wave_pairs_roundtrip():
    psi = np.array([1 + 2j, -0.5j])
    assert wave_to_pairs(psi) == [[1.0, 2.0], [0.0, -0.5]]
    np.testing.assert_array_equal(wave_from_pairs(wave_to_pairs(psi)), psi)


@given(graphs(min_n=1, max_n=8), scales)
def test_unitary_and_norm_preserving(g, s):
    u = propagator(g, EvolutionParams(1.0, s))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(g.n_vertices), atol=1e-10)
    psi0 = np.arange(1, g.n_vertices + 1) * (1 + 0.5j)
    assert np.linalg.norm(u @ psi0) == pytest.approx(np.linalg.norm(psi0), rel=1e-10)


@given(graphs(min_n=1, max_n=8), scales)
def test_symmetric_and_inverse(g, s):
    u = propagator(g, EvolutionParams(1.0, s))
    np.testing.assert_allclose(u, u.T, atol=1e-12)
    np.testing.assert_allclose(u @ propagator(g, EvolutionParams(1.0, -s)), np.eye(g.n_vertices), atol=1e-10)


@given(graphs(min_n=1, max_n=8), st.floats(-1, 1, allow_nan=False))
def test_series_agrees_where_it_converges(g, s):
    # with |s·λ| <= 9 the 40-term remainder is below 1e-9
    lap_norm = max(np.abs(np.linalg.eigvalsh(even_laplacian(g).to_numpy()))) if g.n_vertices else 0
    if lap_norm * abs(s) > 9:
        return
    p = EvolutionParams(1.0, s)
    np.testing.assert_allclose(propagator(g, p), propagator_series(g, p), atol=1e-8)


def test_series_diverges_from_exponential_for_large_phase():
    # truncation error of 40 terms at |s·λ| = 16 is of order 16^40/40!
    p = EvolutionParams(1.0, 2.0)
    err = np.abs(propagator(complete_graph(8), p) - propagator_series(complete_graph(8), p)).max()
    assert err > 1e-8


@given(graphs(min_n=2, max_n=8), scales)
def test_eigenstate_picks_up_phase(g, s):
    w, v = np.linalg.eigh(even_laplacian(g).to_numpy())
    p = EvolutionParams(1.0, s)
    for k in range(g.n_vertices):
        np.testing.assert_allclose(evolve(v[:, k], g, p), np.exp(1j * s * w[k]) * v[:, k], atol=1e-10)
