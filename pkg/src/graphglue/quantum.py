"""Free-particle Schrödinger evolution on a graph.

The state evolves as ``psi(t) = exp(i * coeff * dt * Δ⁺) psi(t0)`` where
``coeff`` lumps ħ/2m into one dimensionless number.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EigendecompositionFailure
from .graph import OrientedGraph
from .laplacian import even_laplacian
from .spectral import jacobi_eigh


@dataclass(frozen=True)
class EvolutionParams:
    coeff: float = 1.0
    dt: float = 0.0

    def __post_init__(self) -> None:
        if not (np.isfinite(self.coeff) and np.isfinite(self.dt)):
            raise ValueError("evolution parameters must be finite")

    @property
    def phase_scale(self) -> float:
        return self.coeff * self.dt


def propagator(g: OrientedGraph, p: EvolutionParams) -> np.ndarray:
    """exp(i·coeff·dt·Δ⁺) as E·diag(exp(i·s·λ))·Eᵗ from a Jacobi eigenbasis."""
    if p.phase_scale == 0.0:
        return np.eye(g.n_vertices, dtype=complex)
    lap = even_laplacian(g).to_numpy()
    w, e = jacobi_eigh(lap, vectors=True)
    if e is None or not np.allclose(e.T @ e, np.eye(len(w)), atol=1e-10):
        raise EigendecompositionFailure("eigenvectors are not orthonormal")
    phases = np.exp(1j * p.phase_scale * w)
    return (e * phases) @ e.T


def propagator_series(g: OrientedGraph, p: EvolutionParams, terms: int = 40) -> np.ndarray:
    """Truncated power series sum_{j<terms} (i·s·Δ⁺)^j / j!, summed in increasing j."""
    if terms < 1:
        raise ValueError("need at least one series term")
    a = 1j * p.phase_scale * even_laplacian(g).to_numpy(dtype=complex)
    n = a.shape[0]
    term = np.eye(n, dtype=complex)
    total = term.copy()
    for j in range(1, terms):
        term = term @ a / j
        total = total + term
    return total


def evolve(psi0, g: OrientedGraph, p: EvolutionParams) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (g.n_vertices,):
        raise DimensionMismatch(
            f"wave function has {psi0.size} amplitudes, graph has {g.n_vertices} vertices"
        )
    return propagator(g, p) @ psi0


def wave_to_pairs(psi) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(psi, dtype=complex)]


def wave_from_pairs(pairs) -> np.ndarray:
    out = []
    for pair in pairs:
        if len(pair) != 2:
            raise ValueError("each amplitude must be a [re, im] pair")
        out.append(complex(float(pair[0]), float(pair[1])))
    return np.array(out, dtype=complex)
