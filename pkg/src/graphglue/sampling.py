"""Random valid graphs and gluing specs, for property checks and the CLI."""

from __future__ import annotations

import random
from itertools import combinations

from .graph import (
    BridgeSpec,
    InterfaceSpec,
    OrientedGraph,
    interface_from_vertices,
)


def random_graph(rng: random.Random, n: int, density: float = 0.5) -> OrientedGraph:
    """G(n, p) with random orientations and a shuffled edge order."""
    edges = [
        (u, v) if rng.random() < 0.5 else (v, u)
        for u, v in combinations(range(n), 2)
        if rng.random() < density
    ]
    rng.shuffle(edges)
    return OrientedGraph(n, tuple(edges))


def random_interface(
    rng: random.Random,
    max_side: int = 7,
    q: int | None = None,
    density: float | None = None,
) -> tuple[OrientedGraph, OrientedGraph, InterfaceSpec]:
    """Two graphs sharing a q-vertex interface (random q when omitted).

    Γ2 receives an oriented copy of the subgraph Γ1 induces on the interface,
    plus random edges touching at least one of its own private vertices, so
    the closure rule holds by construction.
    """
    dens = rng.uniform(0.2, 0.8) if density is None else density
    n1 = rng.randint(1 if q is None else max(q, 1), max_side)
    g1 = random_graph(rng, n1, dens)
    if q is None:
        q = rng.randint(0, n1)
    n2 = rng.randint(max(q, 1), max_side)
    v1s = rng.sample(range(n1), q)
    v2s = rng.sample(range(n2), q)
    phi = dict(zip(v1s, v2s))
    iv2 = set(v2s)
    edges2 = [(phi[t], phi[h]) for t, h in g1.edges if t in phi and h in phi]
    for u, v in combinations(range(n2), 2):
        if u in iv2 and v in iv2:
            continue
        if rng.random() < dens:
            edges2.append((u, v) if rng.random() < 0.5 else (v, u))
    rng.shuffle(edges2)
    g2 = OrientedGraph(n2, tuple(edges2))
    return g1, g2, interface_from_vertices(g1, g2, v1s, v2s)


def random_bridge(
    rng: random.Random,
    max_side: int = 7,
    k: int | None = None,
    max_k: int = 4,
    density: float | None = None,
) -> tuple[OrientedGraph, OrientedGraph, BridgeSpec]:
    dens = rng.uniform(0.2, 0.8) if density is None else density
    lo = 1 if k is None else k
    n1 = rng.randint(lo, max_side)
    n2 = rng.randint(lo, max_side)
    if k is None:
        k = rng.randint(1, min(max_k, n1, n2))
    g1 = random_graph(rng, n1, dens)
    g2 = random_graph(rng, n2, dens)
    pairs = tuple(zip(rng.sample(range(n1), k), rng.sample(range(n2), k)))
    return g1, g2, BridgeSpec(pairs)


def random_absent_edge(
    rng: random.Random, max_n: int = 7, density: float | None = None
) -> tuple[OrientedGraph, int, int]:
    """A graph with at least one missing edge, and one such vertex pair."""
    while True:
        n = rng.randint(2, max_n)
        g = random_graph(rng, n, rng.uniform(0.2, 0.8) if density is None else density)
        missing = [(u, v) for u, v in combinations(range(n), 2) if not g.has_edge(u, v)]
        if missing:
            u, v = rng.choice(missing)
            return (g, u, v) if rng.random() < 0.5 else (g, v, u)
