"""Acceptance criteria, one test each.

Every test prints a single "[PASS]" or "[FAIL]" line with the measured value
and the pinned tolerance.  Run directly (``python tests/test_acceptance.py``)
or through pytest; the lines are printed in both cases.
"""

from __future__ import annotations

import sys
import time
from collections import Counter

import numpy as np
import pytest

from conftest import random_instance
from motifsieve.bench import log2_slope, warm_up
from motifsieve.gen import GeneratorSpec, generate
from motifsieve.graph import VertexColoring, from_edges, validate_path
from motifsieve.oracle import OracleBudget, exhaustive_search
from motifsieve.query import MotifQuery
from motifsieve.sieve import SieveConfig, build_shades, eval_temporal_sieve
from motifsieve.solvers import (
    decide,
    extract_localized,
    find_optimum_timestamp,
    preprocess,
    solve,
    vc_colorful_dp,
)
from oracles import (
    EX_COLORFUL_WITNESS,
    EX_COLORS,
    EX_EDGES,
    EX_MOTIF,
    EX_MOTIF_OPTIMUM,
    EX_MOTIF_WITNESS,
)

# pinned tolerances
C1_SECONDS = 1.0
C2_SECONDS = 1.0
C3_INSTANCES = 1000
C3_SECONDS = 300.0
C4_RUNS = 10_000
C4_K = 4
C4_MAX_MISS = 4 * (2 * C4_K - 1) / 2**8
C4_SECONDS = 300.0
C5_RATIO = (5.0, 20.0)
C5_SECONDS = 600.0
C6_KS = (8, 9, 10, 11, 12)
C6_SLOPE = (0.6, 1.4)
C6_SECONDS = 900.0
C7_MIN_SPEEDUP = 10.0
C7_SECONDS = 1800.0
C8_BOUND_FACTOR = 4
C9_INSTANCES = 50
C10_INSTANCES = 300
C10_MIN_REDUCTION = 0.5
C10_MIN_SPEEDUP = 1.0
C11_INSTANCES = 300
C11_SECONDS = 60.0


ACCEPTANCE_LINES: list[str] = []  # echoed in the pytest terminal summary


def report(num: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def example():
    return from_edges(5, EX_EDGES, EX_COLORS)


# --------------------------------------------------------------------- 1, 2


def test_c01_worked_example():
    start = time.perf_counter()
    g, c = example()
    q = MotifQuery.colors(EX_MOTIF)
    dec = decide("pathmotif", g, c, q)
    ext = extract_localized("pathmotif", g, c, q, optimize=True)
    opt = find_optimum_timestamp("pathmotif", g, c, q)
    secs = time.perf_counter() - start
    ok = (dec.yes and ext.witness is not None and ext.witness.edges == EX_MOTIF_WITNESS
          and opt.optimum_ts == EX_MOTIF_OPTIMUM and secs < C1_SECONDS)
    report(1, ok, f"decision={dec.decision.value} witness={ext.witness.edges if ext.witness else None} "
                  f"optimum={opt.optimum_ts} time={secs:.3f}s (<{C1_SECONDS}s)")


def test_c02_colorful_example():
    start = time.perf_counter()
    g, c = example()
    rep = solve("colorfulpath", g, c, MotifQuery.colors([1, 2, 3, 4]), extract=True)
    secs = time.perf_counter() - start
    times = tuple(e[2] for e in rep.witness.edges) if rep.witness else None
    ok = rep.yes and times == (3, 4, 5) and rep.witness.edges == EX_COLORFUL_WITNESS and secs < C2_SECONDS
    report(2, ok, f"decision={rep.decision.value} timestamps={times} time={secs:.3f}s (<{C2_SECONDS}s)")


# ------------------------------------------------------------------------ 3


def _c3_problem(rng, colors, i):
    q = max(colors)
    k = int(rng.integers(2, 6))
    kind = i % 5
    if kind == 0:
        return "ktemppath", MotifQuery.size(k)
    if kind == 1:
        return "pathmotif", MotifQuery.colors(int(x) for x in rng.integers(1, q + 1, size=k))
    if kind == 2:
        k = min(k, q)
        return "colorfulpath", MotifQuery.colors(int(x) for x in rng.choice(np.arange(1, q + 1), k, replace=False))
    if kind == 3:
        times = sorted(int(x) for x in rng.choice(np.arange(1, 9), size=k - 1, replace=False))
        if rng.integers(2):
            return "ec-temppath", MotifQuery.edge_constrained(times)
        return "ec-pathmotif", MotifQuery.edge_constrained(times, (int(x) for x in rng.integers(1, q + 1, size=k)))
    order = [int(x) for x in rng.integers(1, q + 1, size=k)]
    return "vc-pathmotif", MotifQuery.ordered(order)


def _oracle_query(problem, q):
    if problem in ("ktemppath", "ec-temppath"):
        return None, q
    return "colored", q


def test_c03_oracle_equivalence():
    start = time.perf_counter()
    mismatches = false_pos8 = 0
    kinds = Counter()
    for i in range(C3_INSTANCES):
        rng = np.random.default_rng(100_000 + i)
        n, edges, colors = random_instance(rng, directed=i % 7 == 0)
        g, c = from_edges(n, edges, colors, directed=i % 7 == 0)
        problem, q = _c3_problem(rng, colors, i)
        kinds[problem] += 1
        col = c if _oracle_query(problem, q)[0] else VertexColoring.uniform(n)
        truth = exhaustive_search(g, col, q).decision
        got = decide(problem, g, c, q, SieveConfig(seed=i)).yes
        mismatches += got != truth
        small = decide(problem, g, c, q, SieveConfig(seed=i, bits=8)).yes
        false_pos8 += small and not truth
    secs = time.perf_counter() - start
    ok = mismatches == 0 and false_pos8 == 0 and secs < C3_SECONDS
    report(3, ok, f"{C3_INSTANCES} instances {dict(sorted(kinds.items()))}: mismatches(b=64)={mismatches} "
                  f"false-positives(b=8)={false_pos8} time={secs:.1f}s (<{C3_SECONDS:.0f}s)")


# ------------------------------------------------------------------------ 4


def test_c04_false_negative_rate():
    start = time.perf_counter()
    instances = []
    i = 0
    while len(instances) < 20:
        rng = np.random.default_rng(200_000 + i)
        i += 1
        n, edges, colors = random_instance(rng, n=12, d=3, t=8, q=3)
        motif = [int(x) for x in rng.integers(1, 4, size=C4_K)]
        g, c = from_edges(n, edges, colors)
        q = MotifQuery.colors(motif)
        if exhaustive_search(g, c, q).decision:
            instances.append((g, c, q))
    misses = 0
    runs_each = C4_RUNS // len(instances)
    for j, (g, c, q) in enumerate(instances):
        for s in range(runs_each):
            cfg = SieveConfig(seed=j * runs_each + s, bits=8)
            out = eval_temporal_sieve(g, q.k, None, build_shades(q, c, cfg), cfg, c)
            misses += not out.global_nonzero
    total = runs_each * len(instances)
    rate = misses / total
    secs = time.perf_counter() - start
    ok = rate <= C4_MAX_MISS and secs < C4_SECONDS
    report(4, ok, f"b=8 k={C4_K}: {misses}/{total} misses, rate={rate:.4f} (<= {C4_MAX_MISS:.4f}) "
                  f"time={secs:.1f}s")


# ------------------------------------------------------------------------ 5


def _planted(n, d, t, k, seed, family="regular", alpha=-1.0):
    spec = GeneratorSpec(family=family, n=n, d=d, D=float(d), w=100, alpha=alpha, t=t, colors=k,
                         seed=seed, plant=10, plant_motif=tuple(range(1, k + 1)))
    return generate(spec)


def _time_extract(inst, k, repeats=3):
    q = MotifQuery.colors(range(1, k + 1))
    best = []
    rep = None
    for r in range(repeats):
        start = time.perf_counter()
        rep = extract_localized("colorfulpath", inst.graph, inst.coloring, q, SieveConfig(seed=r), optimize=True)
        best.append(time.perf_counter() - start)
    assert rep.witness is not None and validate_path(inst.graph, inst.coloring, rep.witness, q)
    return max(best), rep


def test_c05_edge_scaling():
    start = time.perf_counter()
    warm_up(SieveConfig())
    small = _planted(1_000, 20, 100, 5, 0)
    large = _planted(10_000, 20, 100, 5, 0)
    t_small, _ = _time_extract(small, 5)
    t_large, _ = _time_extract(large, 5)
    ratio = t_large / t_small
    secs = time.perf_counter() - start
    ok = C5_RATIO[0] <= ratio <= C5_RATIO[1] and secs < C5_SECONDS
    report(5, ok, f"m={small.graph.m}: {t_small:.3f}s, m={large.graph.m}: {t_large:.3f}s, ratio={ratio:.1f} "
                  f"(in [{C5_RATIO[0]:.0f}, {C5_RATIO[1]:.0f}]) time={secs:.0f}s, 1 core")


# ------------------------------------------------------------------------ 6


def test_c06_query_size_scaling():
    start = time.perf_counter()
    warm_up(SieveConfig())
    times = []
    for k in C6_KS:
        inst = _planted(1_000, 20, 100, k, 0)
        q = MotifQuery.colors(range(1, k + 1))
        t0 = time.perf_counter()
        rep = decide("colorfulpath", inst.graph, inst.coloring, q)
        times.append(time.perf_counter() - t0)
        assert rep.yes
    slope = log2_slope(C6_KS, times)
    secs = time.perf_counter() - start
    ok = C6_SLOPE[0] <= slope <= C6_SLOPE[1] and secs < C6_SECONDS
    report(6, ok, f"k={list(C6_KS)} times={[round(x, 2) for x in times]} log2-slope={slope:.2f} "
                  f"(1.0 +- 0.4) time={secs:.0f}s")


# ------------------------------------------------------------------------ 7


def test_c07_baseline_crossover():
    start = time.perf_counter()
    warm_up(SieveConfig())
    inst = _planted(10_000, 20, 100, 5, 0, family="powerlaw", alpha=-1.0)
    t_alg, rep = _time_extract(inst, 5, repeats=1)
    ceiling = C7_MIN_SPEEDUP * t_alg
    q = MotifQuery.colors(range(1, 6))
    base = exhaustive_search(inst.graph, inst.coloring, q, OracleBudget(seconds=ceiling, slice_nodes=100_000))
    if base.verdict == "INCONCLUSIVE":
        speedup_txt = f">= {base.seconds / t_alg:.1f}x (baseline stopped at the {ceiling:.1f}s ceiling)"
        ok = base.seconds >= ceiling
    else:
        speed = base.seconds / t_alg
        speedup_txt = f"{speed:.1f}x"
        ok = speed >= C7_MIN_SPEEDUP and base.optimum_ts == rep.optimum_ts
    secs = time.perf_counter() - start
    ok = ok and secs < C7_SECONDS
    report(7, ok, f"power-law m={inst.graph.m}: algebraic {t_alg:.2f}s, baseline {base.seconds:.2f}s "
                  f"[{base.verdict}], speedup {speedup_txt} (need >= {C7_MIN_SPEEDUP:.0f}x)")


# ------------------------------------------------------------------------ 8


def test_c08_memory_discipline():
    worst = 0.0
    rows = []
    for n in (100, 1_000, 10_000):
        inst = _planted(n, 20, 100, 5, 0)
        q = MotifQuery.colors(range(1, 6))
        cfg = SieveConfig()
        out = eval_temporal_sieve(inst.graph, 5, None, build_shades(q, inst.coloring, cfg), cfg, inst.coloring)
        bound = C8_BOUND_FACTOR * inst.graph.n * inst.graph.t * min(cfg.lanes, 2**5)
        worst = max(worst, out.peak_words / bound)
        rows.append(f"n={n}:{out.peak_words}/{bound}")
    report(8, worst <= 1.0, f"peak/bound words {' '.join(rows)}; worst ratio {worst:.3f} (<= 1)")


# ------------------------------------------------------------------------ 9


def _record(rep):
    return (rep.decision, tuple(rep.flagged), rep.checksum, rep.witness.edges if rep.witness else None)


def test_c09_parallel_determinism():
    differ = 0
    for i in range(C9_INSTANCES):
        rng = np.random.default_rng(300_000 + i)
        n, edges, colors = random_instance(rng)
        g, c = from_edges(n, edges, colors)
        k = int(rng.integers(2, 6))
        q = MotifQuery.colors(int(x) for x in rng.integers(1, max(colors) + 1, size=k))
        records = {
            _record(solve("pathmotif", g, c, q, SieveConfig(seed=i, workers=w, lanes=lanes), extract=True))
            for w in (1, 4)
            for lanes in (1, 8)
        }
        differ += len(records) != 1
    report(9, differ == 0, f"{C9_INSTANCES} instances x workers{{1,4}} x lanes{{1,8}}: {differ} differing records")


# ----------------------------------------------------------------------- 10


def test_c10_preprocessing():
    mismatches = 0
    for i in range(C10_INSTANCES):
        rng = np.random.default_rng(400_000 + i)
        n, edges, colors = random_instance(rng)
        g, c = from_edges(n, edges, colors)
        k = int(rng.integers(2, 6))
        q = MotifQuery.colors(int(x) for x in rng.integers(1, max(colors) + 1, size=k))
        cfg = SieveConfig(seed=i)
        base = decide("pathmotif", g, c, q, cfg).decision
        mismatches += any(solve("pathmotif", g, c, q, cfg, preprocess_level=lvl).decision != base
                          for lvl in ("colors", "static", "both"))
    warm_up(SieveConfig())
    reductions, t_plain, t_pre = [], 0.0, 0.0
    motif = (1, 1, 2, 3, 4)
    for seed in range(5):
        inst = generate(GeneratorSpec(n=2_000, d=20, t=100, colors=30, seed=seed, plant=10, plant_motif=motif))
        q = MotifQuery.colors(motif)
        pre = preprocess(inst.graph, inst.coloring, q, "both")
        reductions.append(1 - pre.graph.n / inst.graph.n)
        t0 = time.perf_counter()
        a = extract_localized("pathmotif", inst.graph, inst.coloring, q, optimize=True)
        t_plain += time.perf_counter() - t0
        t0 = time.perf_counter()
        b = solve("pathmotif", inst.graph, inst.coloring, q, extract=True, optimize=True, preprocess_level="both")
        t_pre += time.perf_counter() - t0
        assert a.optimum_ts == b.optimum_ts
    mean_red = float(np.mean(reductions))
    speedup = t_plain / t_pre
    ok = mismatches == 0 and mean_red >= C10_MIN_REDUCTION and speedup >= C10_MIN_SPEEDUP
    report(10, ok, f"{C10_INSTANCES} paired decisions: {mismatches} mismatches; q=30 planted: mean vertex "
                   f"reduction {mean_red:.1%} (>= {C10_MIN_REDUCTION:.0%}), extraction speedup {speedup:.1f}x "
                   f"(>= {C10_MIN_SPEEDUP:.0f}x, includes preprocessing)")


# ----------------------------------------------------------------------- 11


def test_c11_vc_colorful_dp():
    start = time.perf_counter()
    errors = 0
    for i in range(C11_INSTANCES):
        rng = np.random.default_rng(500_000 + i)
        directed = i % 2 == 0
        n, edges, colors = random_instance(rng, q=4, directed=directed)
        g, c = from_edges(n, edges, colors, directed=directed)
        k = int(rng.integers(1, 5))
        order = [int(x) for x in rng.choice(np.arange(1, 5), size=k, replace=False)]
        errors += vc_colorful_dp(g, c, order).yes != exhaustive_search(g, c, MotifQuery.ordered(order)).decision
    secs = time.perf_counter() - start
    ok = errors == 0 and secs < C11_SECONDS
    report(11, ok, f"{C11_INSTANCES} instances: {errors} disagreements, time={secs:.1f}s (<{C11_SECONDS:.0f}s)")


# ----------------------------------------------------------------------- 12


def test_c12_full_scale_excluded():
    line = ("[SKIP] criterion 12: full-scale runs are excluded; scripts/ holds the desk-scale "
            "substitutes (criteria 5-8)")
    ACCEPTANCE_LINES.append(line)
    print(line)
    pytest.skip("full-scale experiments are out of scope at desk scale")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
