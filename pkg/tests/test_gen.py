import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motifsieve.gen import (
    GeneratorSpec,
    InfeasibleSpec,
    configuration_pairs,
    generate,
    plant_matches,
    powerlaw_support,
    read_witnesses,
    write_witnesses,
)
from motifsieve.graph import from_edges, validate_path
from motifsieve.oracle import exhaustive_search
from motifsieve.query import MotifQuery
from motifsieve.solvers import decide, find_optimum_timestamp


def test_tiny_regular():
    inst = generate(GeneratorSpec(n=4, d=2, t=3, seed=0))
    g = inst.graph
    assert g.m == 4 and g.degree_counts().tolist() == [2, 2, 2, 2]


def test_regular_scale():
    inst = generate(GeneratorSpec(n=1000, d=20, t=100, seed=1))
    assert inst.graph.m == 10_000
    assert set(inst.graph.degree_counts().tolist()) == {20}
    assert inst.residual_collisions == 0


@given(st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 20), st.integers(1, 6))
def test_regular_invariants(seed, d, t, colors):
    n = 2 * d + 2
    inst = generate(GeneratorSpec(n=n, d=d, t=t, colors=colors, seed=seed))
    g = inst.graph
    assert set(g.degree_counts().tolist()) <= {d}
    assert g.m == n * d // 2 - inst.residual_collisions
    assert g.ts.min() >= 1 and g.ts.max() <= t and g.t == t
    assert inst.coloring.base.min() >= 1 and inst.coloring.base.max() <= colors


def test_determinism():
    spec = GeneratorSpec(family="powerlaw", n=500, D=8, w=20, alpha=-1.0, t=30, seed=9, plant=3, plant_motif=(1, 2, 3))
    a, b = generate(spec), generate(spec)
    assert a.graph.edge_set == b.graph.edge_set
    assert a.coloring.base.tolist() == b.coloring.base.tolist()
    assert [p.edges for p in a.planted] == [p.edges for p in b.planted]


def test_powerlaw_degree_sum():
    inst = generate(GeneratorSpec(family="powerlaw", n=1000, D=20, w=100, alpha=-0.5, seed=0))
    degs = inst.graph.degree_counts()
    assert abs(int(degs.sum()) + 2 * inst.residual_collisions - 20 * 1000) <= 1


def test_powerlaw_single_support_point():
    inst = generate(GeneratorSpec(family="powerlaw", n=500, D=20, w=1, alpha=-1.0, seed=0))
    degs = inst.graph.degree_counts()
    assert abs(degs.mean() - 20) < 0.5 and degs.min() >= 18


def test_powerlaw_frequencies_follow_alpha():
    n, alpha = 10**5, -1.0
    pts, cnt = powerlaw_support(n, 20, 100, alpha)
    ok = cnt > 0
    slope = np.polyfit(np.log(pts[ok]), np.log(cnt[ok]), 1)[0]
    assert abs(slope - alpha) <= 0.15


def test_configuration_pairs_simple():
    rng = np.random.default_rng(0)
    pairs, dropped = configuration_pairs(np.full(50, 6), rng)
    keys = {(min(a, b), max(a, b)) for a, b in pairs.tolist()}
    assert dropped == 0 and len(keys) == len(pairs) and all(a != b for a, b in pairs.tolist())
    with pytest.raises(InfeasibleSpec):
        configuration_pairs(np.array([1, 2]), rng)


@pytest.mark.parametrize(
    "kw",
    [dict(n=5, d=3), dict(n=4, d=4), dict(family="powerlaw", alpha=0.5), dict(family="powerlaw", n=10, w=20),
     dict(plant=2), dict(family="mesh")],
)
def test_infeasible(kw):
    with pytest.raises(InfeasibleSpec):
        GeneratorSpec(**kw)


def test_plant_on_empty_graph():
    g, c = from_edges(3, [], None, t=5)
    q = MotifQuery.colors([1, 2, 3])
    g2, c2, planted = plant_matches(g, c, q, 1, seed=0)
    assert g2.m == 2 and len(planted) == 1
    assert validate_path(g2, c2, planted[0], q)


def test_plant_needs_room():
    g, c = from_edges(3, [], None, t=5)
    with pytest.raises(InfeasibleSpec):
        plant_matches(g, c, MotifQuery.colors([1, 2]), 2, seed=0)


@pytest.mark.parametrize("seed", range(10))
def test_planted_is_found(seed):
    motif = (1, 1, 2, 3)
    inst = generate(GeneratorSpec(n=300, d=6, t=40, colors=8, seed=seed, plant=10, plant_motif=motif))
    q = MotifQuery.colors(motif)
    assert len(inst.planted) == 10
    for p in inst.planted:
        assert validate_path(inst.graph, inst.coloring, p, q)
    assert decide("pathmotif", inst.graph, inst.coloring, q).yes


@pytest.mark.parametrize("seed", range(10))
def test_planted_optimum_cross_check(seed):
    motif = (1, 2, 3)
    inst = generate(GeneratorSpec(n=40, d=2, t=30, colors=6, seed=seed, plant=3, plant_motif=motif))
    q = MotifQuery.colors(motif)
    opt = find_optimum_timestamp("pathmotif", inst.graph, inst.coloring, q).optimum_ts
    assert opt == exhaustive_search(inst.graph, inst.coloring, q).optimum_ts
    assert opt <= min(p.max_ts for p in inst.planted)


def test_witness_sidecar_roundtrip():
    inst = generate(GeneratorSpec(n=50, d=2, t=10, seed=1, plant=4, plant_motif=(1, 2, 3)))
    buf = io.StringIO()
    write_witnesses(inst.planted, buf)
    assert len(buf.getvalue().splitlines()) == 4
    back = read_witnesses(io.StringIO(buf.getvalue()))
    assert [p.edges for p in back] == [p.edges for p in inst.planted]
