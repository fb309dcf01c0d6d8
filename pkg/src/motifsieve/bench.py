"""Benchmark suites behind ``motifsieve bench``.

Rows carry one repeat each; ``aggregate`` folds repeats the way the
experiments report them: max over repeats for the algebraic solver and min
for the exhaustive baseline.
"""

from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from .gen import GeneratorSpec, generate
from .oracle import OracleBudget, exhaustive_search
from .query import MotifQuery
from .sieve import SieveConfig, build_shades, eval_temporal_sieve
from .solvers import COLORFULPATH, decide, extract_localized

CSV_VERSION = "motifsieve-bench v1"
SUITES = ("edges", "k", "timestamps", "degree", "baseline", "memory")


@dataclass
class BenchRow:
    suite: str
    family: str
    n: int
    m: int
    t: int
    d: float
    k: int
    repeat: str
    decision_time: float
    extraction_time: float
    peak_words: int
    verdict: str
    baseline_time: float | None = None
    baseline_verdict: str = ""
    bound_words: int = 0


COLUMNS = [f.name for f in fields(BenchRow)]


@dataclass(frozen=True)
class BenchParams:
    suite: str = "edges"
    sizes: tuple[int, ...] = (1000, 10000)
    family: str = "regular"
    n: int = 1000
    d: int = 20
    t: int = 100
    k: int = 5
    alpha: float = -1.0
    w: int = 100
    repeats: int = 1
    seed: int = 0
    lanes: int = 8
    workers: int = 1
    plant: int = 10
    baseline_factor: float = 10.0
    baseline_seconds: float | None = None


def _instance(p: BenchParams, n: int, d: float, t: int, k: int, seed: int):
    spec = GeneratorSpec(
        family=p.family, n=n, d=int(d), D=float(d), w=min(p.w, n - 2), alpha=p.alpha, t=t,
        colors=k, seed=seed, plant=p.plant, plant_motif=tuple(range(1, k + 1)),
    )
    return generate(spec)


def _points(p: BenchParams):
    """(n, d, t, k) per suite point."""
    for s in p.sizes:
        if p.suite == "edges":
            yield max(int(round(2 * s / p.d)), p.k * p.plant + 1), p.d, p.t, p.k
        elif p.suite == "k":
            yield p.n, p.d, p.t, s
        elif p.suite == "timestamps":
            yield p.n, p.d, s, p.k
        elif p.suite == "degree":
            yield p.n, s, p.t, p.k
        else:
            yield s, p.d, p.t, p.k


def warm_up(config: SieveConfig) -> None:
    """Load compiled kernels before anything is timed."""
    spec = GeneratorSpec(n=12, d=2, t=4, colors=3, seed=1, plant=1, plant_motif=(1, 2, 3))
    inst = generate(spec)
    extract_localized(COLORFULPATH, inst.graph, inst.coloring, MotifQuery.colors([1, 2, 3]), config, optimize=True)
    exhaustive_search(inst.graph, inst.coloring, MotifQuery.colors([1, 2, 3]))


def run_point(p: BenchParams, n: int, d: float, t: int, k: int, repeat: int) -> BenchRow:
    config = SieveConfig(seed=p.seed + repeat, lanes=p.lanes, workers=p.workers)
    inst = _instance(p, n, d, t, k, p.seed + 1000 * repeat)
    g, c = inst.graph, inst.coloring
    query = MotifQuery.colors(range(1, k + 1))
    W = min(p.lanes, 1 << k)
    bound = 4 * g.n * g.t * W
    if p.suite == "memory":
        shades = build_shades(query, c, config)
        start = time.perf_counter()
        out = eval_temporal_sieve(g, k, None, shades, config, c)
        return BenchRow(p.suite, p.family, g.n, g.m, g.t, d, k, str(repeat), time.perf_counter() - start, 0.0,
                        out.peak_words, "YES" if out.global_nonzero else "NO", bound_words=bound)
    start = time.perf_counter()
    dec = decide(COLORFULPATH, g, c, query, config)
    decision_time = time.perf_counter() - start
    start = time.perf_counter()
    ext = extract_localized(COLORFULPATH, g, c, query, config, optimize=True)
    extraction_time = time.perf_counter() - start
    verdict = ext.decision.value if not ext.extraction_failed else "EXTRACTION-FAILED"
    row = BenchRow(p.suite, p.family, g.n, g.m, g.t, d, k, str(repeat), decision_time, extraction_time,
                   max(dec.peak_words, ext.peak_words), verdict, bound_words=bound)
    if p.suite == "baseline":
        ceiling = p.baseline_seconds if p.baseline_seconds is not None else p.baseline_factor * extraction_time
        base = exhaustive_search(g, c, query, OracleBudget(seconds=max(ceiling, 1e-3), slice_nodes=200_000))
        row.baseline_time = base.seconds
        row.baseline_verdict = "TIMEOUT" if base.verdict == "INCONCLUSIVE" else base.verdict
        if base.optimum_ts is not None and ext.optimum_ts is not None and base.verdict == "YES":
            row.baseline_verdict += "" if base.optimum_ts == ext.optimum_ts else "-OPTIMUM-MISMATCH"
    return row


def run_suite(p: BenchParams, progress=None) -> list[BenchRow]:
    if p.suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}")
    warm_up(SieveConfig(lanes=p.lanes, workers=p.workers))
    rows = []
    for n, d, t, k in _points(p):
        for r in range(p.repeats):
            row = run_point(p, n, d, t, k, r)
            rows.append(row)
            if progress:
                progress(row)
    return rows


def aggregate(rows: list[BenchRow]) -> list[BenchRow]:
    """One row per point: max algebraic times, min baseline time."""
    groups: dict[tuple, list[BenchRow]] = {}
    for r in rows:
        groups.setdefault((r.suite, r.family, r.n, r.m, r.t, r.d, r.k), []).append(r)
    out = []
    for key, rs in groups.items():
        base_times = [r.baseline_time for r in rs if r.baseline_time is not None]
        verdicts = sorted({r.verdict for r in rs})
        out.append(BenchRow(
            *key, repeat="agg",
            decision_time=max(r.decision_time for r in rs),
            extraction_time=max(r.extraction_time for r in rs),
            peak_words=max(r.peak_words for r in rs),
            verdict="/".join(verdicts),
            baseline_time=min(base_times) if base_times else None,
            baseline_verdict="/".join(sorted({r.baseline_verdict for r in rs if r.baseline_verdict})),
            bound_words=max(r.bound_words for r in rs),
        ))
    return out


def to_csv(rows: list[BenchRow], stream=None) -> str:
    buf = io.StringIO() if stream is None else stream
    buf.write(f"# {CSV_VERSION}\n")
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        rec = asdict(r)
        for key in ("decision_time", "extraction_time", "baseline_time"):
            if rec[key] is not None:
                rec[key] = f"{rec[key]:.6f}"
        writer.writerow(rec)
    return buf.getvalue() if stream is None else ""


def log2_slope(ks, times) -> float:
    """Least-squares slope of log2(time) against k."""
    return float(np.polyfit(np.asarray(ks, dtype=float), np.log2(np.asarray(times, dtype=float)), 1)[0])
