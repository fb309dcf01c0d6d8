import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motifsieve.graph import (
    GraphFormatError,
    TemporalPath,
    VertexColoring,
    compact,
    from_edges,
    lift_path,
    load_delays,
    load_graph,
    project_static,
    restrict_to,
    validate_path,
    write_colors,
    write_graph,
)
from motifsieve.query import MotifQuery
from oracles import EX_MOTIF, EX_MOTIF_WITNESS

EX_FILE = """# example
u1 u2 3
u2 u3 1
u3 u4 3
u4 u5 1
u5 u1 2
u2 u5 4
u3 u5 5
"""
EX_COLORS_FILE = "u1 1\nu2 3\nu3 4\nu4 1\nu5 2\n"


def test_rank_normalization():
    g, c = load_graph(["a b 100", "b c 7000", "a c 100"])
    assert g.t == 2
    assert list(g.ts_values) == [100, 7000]
    assert sorted(g.edge_set) == sorted([(0, 1, 1), (1, 0, 1), (1, 2, 2), (2, 1, 2), (0, 2, 1), (2, 0, 1)])


def test_example_instance_loads():
    g, c = load_graph(io.StringIO(EX_FILE), io.StringIO(EX_COLORS_FILE))
    assert (g.n, g.m, g.t) == (5, 7, 5)
    assert g.labels == ["u1", "u2", "u3", "u4", "u5"]
    assert c.base.tolist() == [1, 3, 4, 1, 2]


def test_default_coloring():
    g, c = load_graph(["0 1 1", "1 2 1"])
    assert g.n == 3 and c.q == 1 and c.base.tolist() == [1, 1, 1]


def test_labels_sort_ints_before_strings():
    g, _ = load_graph(["10 2 1", "b a 1"])
    assert g.labels == [2, 10, "a", "b"]


def test_float_timestamps_floor_and_dedup():
    g, _ = load_graph(["0 1 1.7", "1 0 1.2", "0 0 3"])
    assert g.m == 1
    assert g.dropped == {"self_loops": 1, "duplicates": 1}


def test_transit_column():
    g, _ = load_graph(["0 1 1 3", "1 2 2"])
    assert g.transit_array().tolist() == [3, 1]


@pytest.mark.parametrize(
    "lines,lineno",
    [(["0 1"], 1), (["0 1 1", "0 1 x"], 2), (["0 1 -1"], 1), (["0 1 1 0"], 1)],
)
def test_format_errors_name_the_line(lines, lineno):
    with pytest.raises(GraphFormatError) as exc:
        load_graph(lines)
    assert exc.value.line == lineno
    assert f"line {lineno}" in str(exc.value)


def test_color_format_errors():
    with pytest.raises(GraphFormatError) as exc:
        load_graph(["0 1 1"], ["0 1", "1 0"])
    assert exc.value.line == 2 and exc.value.source == "colors"


def test_delays():
    g, _ = load_graph(["a b 1", "b c 2"])
    g2 = load_delays(["b 5"], g)
    assert g2.delay_array().tolist() == [1, 5, 1]
    with pytest.raises(GraphFormatError):
        load_delays(["zz 1"], g)


def test_write_roundtrip():
    g, c = load_graph(io.StringIO(EX_FILE), io.StringIO(EX_COLORS_FILE))
    out_g, out_c = io.StringIO(), io.StringIO()
    write_graph(g, out_g)
    write_colors(g, c, out_c)
    g2, c2 = load_graph(io.StringIO(out_g.getvalue()), io.StringIO(out_c.getvalue()))
    assert g2.edge_set == g.edge_set and c2.base.tolist() == c.base.tolist()


def test_static_projection_dedups():
    g, _ = from_edges(3, [(0, 1, 1), (0, 1, 2), (1, 2, 1)])
    s = project_static(g)
    assert sorted(zip(s.src.tolist(), s.dst.tolist())) == [(0, 1), (1, 2)]
    g5, _ = from_edges(3, [(0, 1, 1), (0, 1, 2), (1, 2, 1), (1, 2, 2)])
    s5 = project_static(g5)
    assert s5.m == 2
    assert sorted(len(s5.temporal_edges(i)) for i in range(2)) == [2, 2]


def test_projection_identity_when_pairs_distinct(example):
    g, _ = example
    assert project_static(g).m == g.m


def test_restrict(example):
    g, _ = example
    assert restrict_to(g).edge_set == g.edge_set
    assert restrict_to(g, max_ts=3).m == 5
    assert restrict_to(g, keep=[0]).m == 0


def test_compact_and_lift(example):
    g, c = example
    sub, col, vmap = compact(g, c, [0, 1, 3, 4])
    assert sub.n == 4 and vmap.tolist() == [0, 1, 3, 4]
    p = TemporalPath.from_edges([(2, 3, 1), (3, 0, 2), (0, 1, 3)])
    assert lift_path(p, vmap).edges == EX_MOTIF_WITNESS
    assert validate_path(sub, col, p, MotifQuery.colors(EX_MOTIF))


def test_validate_path_clauses(example):
    g, c = example
    q = MotifQuery.colors(EX_MOTIF)
    assert validate_path(g, c, TemporalPath.from_edges(EX_MOTIF_WITNESS), q)
    rev = TemporalPath.from_edges([(3, 4, 3), (4, 0, 2), (0, 1, 1)])
    v = validate_path(g, c, rev, q)
    assert not v and "not in graph" in v.clause
    # same vertices walked backwards: timestamps decrease
    back = TemporalPath.from_edges([(1, 0, 3), (0, 4, 2), (4, 3, 1)])
    v = validate_path(g, c, back, q)
    assert not v and "timestamps" in v.clause
    loop = TemporalPath.from_edges([(3, 4, 1), (4, 0, 2), (0, 4, 2)])
    assert "repeated" in validate_path(g, c, loop, MotifQuery.size(4)).clause
    wrong = MotifQuery.colors([1, 2, 3, 4])
    assert "multiset" in validate_path(g, c, TemporalPath.from_edges(EX_MOTIF_WITNESS), wrong).clause


def test_validate_ordered_and_times(example):
    g, c = example
    p = TemporalPath.from_edges(EX_MOTIF_WITNESS)
    assert validate_path(g, c, p, MotifQuery.ordered([1, 2, 1, 3]))
    assert not validate_path(g, c, p, MotifQuery.ordered([3, 1, 2, 1]))
    assert validate_path(g, c, p, MotifQuery.edge_constrained([1, 2, 3], EX_MOTIF))
    assert not validate_path(g, c, p, MotifQuery.edge_constrained([1, 2, 4], EX_MOTIF))


def test_validate_delay_model():
    g, c = from_edges(3, [(0, 1, 1), (1, 2, 2)], directed=True)
    p = TemporalPath.from_edges([(0, 1, 1), (1, 2, 2)])
    q = MotifQuery.size(3)
    slow = g.replace(delay=np.array([1, 5, 1]))
    assert not validate_path(slow, c, p, q, "delay")
    assert validate_path(g.replace(delay=np.array([1, 0, 1])), c, p, q, "delay")


def test_wildcard_coloring():
    c = VertexColoring(np.array([1, 2, 3])).with_wildcard()
    assert c.wildcard == 4
    assert c.colors_of(0) == frozenset({1, 4})
    assert c.has_color(4).all()


def test_bad_colors():
    with pytest.raises(ValueError):
        VertexColoring(np.array([0, 1]))
    with pytest.raises(ValueError):
        from_edges(2, [(0, 1, 0)])


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7), st.integers(1, 6)), max_size=25), st.booleans())
def test_adjacency_consistent_with_edges(edges, directed):
    g, _ = from_edges(8, edges, directed=directed)
    want = set()
    for u, v, t in edges:
        if u != v:
            want.add((u, v, t))
            if not directed:
                want.add((v, u, t))
    assert set(g.edge_set) == want
    adj = g.out_adjacency
    for u in range(8):
        lo, hi = adj["ptr"][u], adj["ptr"][u + 1]
        assert list(adj["ts"][lo:hi]) == sorted(adj["ts"][lo:hi])
        assert {(u, int(v), int(t)) for v, t in zip(adj["nbr"][lo:hi], adj["ts"][lo:hi])} == {
            e for e in want if e[0] == u
        }


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(1, 5)), max_size=20), st.integers(1, 5))
def test_restrict_keeps_prefix(edges, T):
    g, _ = from_edges(6, edges, t=5)
    r = restrict_to(g, max_ts=T)
    assert r.edge_set == {e for e in g.edge_set if e[2] <= T}
