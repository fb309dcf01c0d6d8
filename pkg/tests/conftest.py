import os
import sys

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def random_instance(rng: np.random.Generator, n=None, d=None, t=None, q=None, directed=False):
    """Small random temporal graph as (n, edges, colors) with ids 0..n-1."""
    n = int(n or rng.integers(3, 17))
    d = int(d or rng.integers(1, 5))
    t = int(t or rng.integers(1, 9))
    q = int(q or rng.integers(1, 5))
    m = int(rng.integers(1, max(2, n * d // 2) + 1))
    seen = set()
    edges = []
    for _ in range(m):
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        ts = int(rng.integers(1, t + 1))
        key = (u, v, ts) if directed else (min(u, v), max(u, v), ts)
        if key not in seen:
            seen.add(key)
            edges.append((u, v, ts))
    colors = [int(c) for c in rng.integers(1, q + 1, size=n)]
    return n, edges, colors


@pytest.fixture
def example():
    from motifsieve.graph import from_edges
    from oracles import EX_COLORS, EX_EDGES

    return from_edges(5, EX_EDGES, EX_COLORS)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
