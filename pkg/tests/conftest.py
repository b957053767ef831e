import random
from itertools import combinations

from hypothesis import settings, strategies as st

from graphglue import OrientedGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=7):
    """Simple graphs with arbitrary orientation and edge order."""
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    flips = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
    edges = [(v, u) if f else (u, v) for (u, v), f in zip(chosen, flips)]
    return OrientedGraph(n, tuple(edges))


# seeded stdlib RNGs for the library's own samplers; hypothesis controls the seed
rngs = st.integers(0, 2**32 - 1).map(random.Random)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
