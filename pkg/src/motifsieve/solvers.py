"""Problem frontends: decision, optimum timestamp, extraction, preprocessing."""

from __future__ import annotations

import enum
import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .graph import (
    TemporalGraph,
    TemporalPath,
    VertexColoring,
    compact,
    lift_path,
    project_static,
    restrict_to,
    validate_path,
)
from .oracle import OracleBudget, color_filter_mask, temporal_dfs
from .query import EC_MULTISET, EC_SIZE, MULTISET, ORDERED, SIZE_ONLY, MotifQuery
from .sieve import (
    SieveConfig,
    SieveOutcome,
    ShadeAssignment,
    build_shades,
    eval_edge_constrained_sieve,
    eval_junction_sieve,
    eval_temporal_sieve,
    eval_vertex_ordered_sieve,
    fn_bound,
    temporal_plan,
)

KTEMPPATH = "ktemppath"
PATHMOTIF = "pathmotif"
COLORFULPATH = "colorfulpath"
SD_COLORFULPATH = "sd-colorfulpath"
RAINBOWPATH = "rainbowpath"
EC_TEMPPATH = "ec-temppath"
EC_PATHMOTIF = "ec-pathmotif"
VC_PATHMOTIF = "vc-pathmotif"
VC_COLORFULPATH = "vc-colorfulpath"

PROBLEMS = (
    KTEMPPATH, PATHMOTIF, COLORFULPATH, SD_COLORFULPATH, RAINBOWPATH,
    EC_TEMPPATH, EC_PATHMOTIF, VC_PATHMOTIF, VC_COLORFULPATH,
)

_KIND = {
    KTEMPPATH: SIZE_ONLY,
    PATHMOTIF: MULTISET,
    COLORFULPATH: MULTISET,
    SD_COLORFULPATH: SIZE_ONLY,
    RAINBOWPATH: SIZE_ONLY,
    EC_TEMPPATH: EC_SIZE,
    EC_PATHMOTIF: EC_MULTISET,
    VC_PATHMOTIF: ORDERED,
    VC_COLORFULPATH: ORDERED,
}

PREPROCESS_LEVELS = ("none", "colors", "static", "both")


class Verdict(enum.Enum):
    YES = "YES"
    NO = "NO"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __bool__(self) -> bool:
        return self is Verdict.YES


class QueryMismatch(ValueError):
    pass


@dataclass
class SolveReport:
    problem: str
    decision: Verdict
    optimum_ts: int | None = None
    witness: TemporalPath | None = None
    flagged: list[int] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    peak_words: int = 0
    fn_bound: float = 0.0
    checksum: int = 0
    oracle_calls: int = 0
    extraction_failed: bool = False
    notes: dict = field(default_factory=dict)

    @property
    def yes(self) -> bool:
        return self.decision is Verdict.YES


def check_query(problem: str, query: MotifQuery) -> None:
    if problem not in _KIND:
        raise QueryMismatch(f"unknown problem {problem!r}; expected one of {', '.join(PROBLEMS)}")
    if query.kind != _KIND[problem]:
        raise QueryMismatch(f"problem {problem} needs a {_KIND[problem]} query, got {query.kind}")
    if problem == COLORFULPATH and any(m > 1 for _, m in query.multiset):
        raise QueryMismatch("colorfulpath needs pairwise distinct query colors")
    if problem == VC_COLORFULPATH and len(set(query.order)) != query.k:
        raise QueryMismatch("vc-colorfulpath needs pairwise distinct colors in the order")


def _report(problem: str, out: SieveOutcome, **extra) -> SolveReport:
    rep = SolveReport(
        problem,
        Verdict.YES if out.global_nonzero else Verdict.NO,
        flagged=[int(u) for u in out.flagged],
        peak_words=out.peak_words,
        fn_bound=out.fn_bound,
        checksum=out.checksum,
        oracle_calls=0 if out.certain_no else 1,
        timings={"sieve": out.seconds},
    )
    if out.certain_no:
        rep.notes["certain_no"] = out.certain_no
    for key, val in extra.items():
        setattr(rep, key, val)
    return rep


# ------------------------------------------------------------------ deciders


def _prepared(problem: str, g: TemporalGraph, coloring: VertexColoring, query: MotifQuery, config: SieveConfig):
    """Coloring and shade assignment the sieve runs with for ``problem``."""
    if problem in (KTEMPPATH, EC_TEMPPATH):
        coloring = VertexColoring.uniform(g.n)
        return coloring, build_shades(MotifQuery.size(query.k), coloring, config)
    return coloring, build_shades(query, coloring, config)


def sieve_outcome(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    config: SieveConfig,
    max_ts: int | None = None,
    shades: ShadeAssignment | None = None,
    zcol: np.ndarray | None = None,
) -> SieveOutcome:
    """One algebraic evaluation for the multiset, ordered or EC problems."""
    if problem in (VC_PATHMOTIF, VC_COLORFULPATH):
        return eval_vertex_ordered_sieve(g, query.order, config, coloring, max_ts)
    eff, default = _prepared(problem, g, coloring, query, config)
    shades = shades or default
    if problem in (EC_TEMPPATH, EC_PATHMOTIF):
        return eval_edge_constrained_sieve(g, query.times, shades, config, eff)
    return eval_temporal_sieve(g, query.k, max_ts, shades, config, eff, zcol=zcol)


def decide(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    config: SieveConfig = SieveConfig(),
    max_ts: int | None = None,
    source: int | None = None,
    dest: int | None = None,
) -> SolveReport:
    check_query(problem, query)
    if query.k > g.n:
        return SolveReport(problem, Verdict.NO, notes={"certain_no": f"k={query.k} exceeds n={g.n}"})
    if problem == SD_COLORFULPATH:
        if source is None or dest is None:
            raise QueryMismatch("sd-colorfulpath needs a source and a destination")
        return decide_sd_colorful(g, coloring, source, dest, query.k, config, max_ts)
    if problem == RAINBOWPATH:
        return decide_rainbow(g, coloring, query.k, config, max_ts)
    if problem == VC_COLORFULPATH:
        return vc_colorful_dp(g, coloring, query.order, max_ts)
    return _report(problem, sieve_outcome(problem, g, coloring, query, config, max_ts))


def sd_setup(coloring: VertexColoring, s: int, d: int, k: int):
    """Recolor s and d with two fresh colors; the query is [k] plus both."""
    q = max(coloring.q, k)
    col = coloring.recolored({s: q + 1, d: q + 2})
    query = MotifQuery.colors(list(range(1, k + 1)) + [q + 1, q + 2])
    return col, query


def decide_sd_colorful(
    g: TemporalGraph,
    coloring: VertexColoring,
    s: int,
    d: int,
    k: int,
    config: SieveConfig = SieveConfig(),
    max_ts: int | None = None,
) -> SolveReport:
    """Temporal path s -> ... -> d whose k interior vertices have colors 1..k.

    Walks may only start at s (layer-1 mask) and the answer is read from the
    accumulator of d, so both endpoints are pinned.
    """
    if not (0 <= s < g.n and 0 <= d < g.n):
        raise QueryMismatch(f"source/destination must lie in [0, {g.n})")
    if s == d:
        raise QueryMismatch("source and destination must differ")
    col, query = sd_setup(coloring, s, d, k)
    K = k + 2
    if K > g.n:
        return SolveReport(SD_COLORFULPATH, Verdict.NO, notes={"certain_no": "k+2 exceeds n"})
    start_mask = np.zeros(g.n, dtype=bool)
    start_mask[s] = True
    shades = build_shades(query, col, config)
    out = eval_temporal_sieve(g, K, max_ts, shades, config, col, masks={1: start_mask})
    hit = bool(out.acc[d]) if out.certain_no is None else False
    rep = _report(SD_COLORFULPATH, out)
    rep.decision = Verdict.YES if hit else Verdict.NO
    rep.flagged = [d] if hit else []
    rep.notes.update(source=s, dest=d)
    return rep


def decide_rainbow(
    g: TemporalGraph,
    coloring: VertexColoring,
    k: int,
    config: SieveConfig = SieveConfig(),
    max_ts: int | None = None,
) -> SolveReport:
    """Some temporal path on k vertices with pairwise distinct colors.

    Tries every k-subset of the colors in lexicographic order, each as a
    colorful query on the vertices carrying those colors.
    """
    q = coloring.q
    if k >= q:
        raise QueryMismatch(f"rainbowpath needs k < q (k={k}, q={q})")
    calls = 0
    seconds = 0.0
    peak = 0
    for subset in itertools.combinations(range(1, q + 1), k):
        query = MotifQuery.colors(subset)
        keep = color_filter_mask(coloring, query)
        sub = restrict_to(g, np.nonzero(keep)[0])
        out = sieve_outcome(COLORFULPATH, sub, coloring, query, config, max_ts)
        calls += 0 if out.certain_no else 1
        seconds += out.seconds
        peak = max(peak, out.peak_words)
        if out.global_nonzero:
            rep = _report(RAINBOWPATH, out)
            rep.oracle_calls = calls
            rep.timings["sieve"] = seconds
            rep.notes["colors"] = list(subset)
            return rep
    return SolveReport(
        RAINBOWPATH, Verdict.NO, oracle_calls=calls, timings={"sieve": seconds}, peak_words=peak,
        fn_bound=fn_bound(k, config.bits) * max(calls, 1),
    )


def vc_colorful_dp(
    g: TemporalGraph,
    coloring: VertexColoring,
    order,
    max_ts: int | None = None,
) -> SolveReport:
    """Exact dynamic program for ordered, pairwise distinct colors.

    The indicator I_{u,i} ("a prefix of the order can end at u and leave at
    time i") is upward closed in i, so each row is stored as its first
    departure time.  Distinct colors make every such walk a path.
    """
    order = tuple(int(c) for c in order)
    k = len(order)
    if len(set(order)) != k:
        raise QueryMismatch("vc-colorfulpath needs pairwise distinct colors")
    start = time.perf_counter()
    T = g.t if max_ts is None else int(max_ts)
    inf = np.iinfo(np.int64).max
    base = coloring.base
    sel = g.ts <= T
    src, dst, ts = g.src[sel], g.dst[sel], g.ts[sel]
    if not g.directed:
        src, dst, ts = np.concatenate([src, dst]), np.concatenate([dst, src]), np.concatenate([ts, ts])
    first = np.where(base == order[0], 1, inf).astype(np.int64)
    back = []
    for pos in range(1, k):
        ok = (base[src] == order[pos - 1]) & (base[dst] == order[pos]) & (first[src] <= ts)
        nxt = np.full(g.n, inf, dtype=np.int64)
        arg = np.full(g.n, -1, dtype=np.int64)
        if ok.any():
            idx = np.nonzero(ok)[0]
            # earliest departure after arriving at time ts is ts + 1 (may be T + 1)
            idx = idx[np.lexsort((src[idx], ts[idx], dst[idx]))]
            heads = dst[idx]
            firsts = np.ones(idx.size, dtype=bool)
            firsts[1:] = heads[1:] != heads[:-1]
            chosen = idx[firsts]
            nxt[dst[chosen]] = ts[chosen] + 1
            arg[dst[chosen]] = chosen
        back.append(arg)
        first = nxt
    if k == 1:
        ends = np.nonzero(first < inf)[0]
    else:
        ends = np.nonzero(first <= T + 1)[0]
    rep = SolveReport(VC_COLORFULPATH, Verdict.YES if ends.size else Verdict.NO, flagged=[int(u) for u in ends])
    if ends.size:
        u = int(ends[np.argmin(first[ends])])
        rep.optimum_ts = int(first[u] - 1) if k > 1 else 0
        edges = []
        for pos in range(k - 1, 0, -1):
            e = back[pos - 1][u]
            v = int(src[e])
            edges.append((v, u, int(ts[e])))
            u = v
        rep.witness = TemporalPath.from_edges(edges[::-1]) if edges else TemporalPath.single(u)
    rep.timings["sieve"] = time.perf_counter() - start
    rep.peak_words = 2 * g.n + (k - 1) * g.n
    return rep


# ------------------------------------------------------------ optimization


def _horizon(g: TemporalGraph, config: SieveConfig) -> int:
    if config.edge_model == "instant":
        return g.t
    return temporal_plan(g, config.edge_model).max_slot


def find_optimum_timestamp(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    config: SieveConfig = SieveConfig(),
    source: int | None = None,
    dest: int | None = None,
) -> SolveReport:
    """Smallest max-timestamp admitting a match, by binary search.

    All probes share one shade assignment, so they differ only in max_ts.
    """
    check_query(problem, query)
    if problem == VC_COLORFULPATH:
        return vc_colorful_dp(g, coloring, query.order)
    if problem in (EC_TEMPPATH, EC_PATHMOTIF):
        rep = decide(problem, g, coloring, query, config)
        if rep.yes:
            rep.optimum_ts = int(query.times[-1])
        return rep
    T = _horizon(g, config)
    start = time.perf_counter()

    if problem in (SD_COLORFULPATH, RAINBOWPATH):
        def probe(t):
            return decide(problem, g, coloring, query, config, max_ts=t, source=source, dest=dest)
    else:
        if query.k > g.n:
            return decide(problem, g, coloring, query, config)
        eff, shades = _prepared(problem, g, coloring, query, config)
        zcol = None if problem == VC_PATHMOTIF else shades.z_table(eff)

        def probe(t):
            return _report(problem, sieve_outcome(problem, g, coloring, query, config, t, shades, zcol))

    full = probe(T)
    calls = full.oracle_calls
    if not full.yes or (query.k == 1 and problem != SD_COLORFULPATH):
        # a one-vertex match uses no edges, so its optimum is 0
        full.optimum_ts = 0 if full.yes else None
        full.timings["sieve"] = time.perf_counter() - start
        return full
    lo, hi, best = 1, T, full
    while lo < hi:
        mid = (lo + hi) // 2
        rep = probe(mid)
        calls += rep.oracle_calls
        if rep.yes:
            hi, best = mid, rep
        else:
            lo = mid + 1
    best.optimum_ts = lo
    best.oracle_calls = calls
    best.fn_bound = fn_bound(query.k, config.bits) * max(calls, 1)
    best.timings["sieve"] = time.perf_counter() - start
    best.notes["probes"] = calls
    return best


# --------------------------------------------------------------- extraction


def _search_query(problem: str, query: MotifQuery, coloring: VertexColoring, source, dest):
    if problem == SD_COLORFULPATH:
        col, q = sd_setup(coloring, source, dest, query.k)
        return col, q
    if problem in (KTEMPPATH, EC_TEMPPATH):
        return VertexColoring.uniform(coloring.n), query
    return coloring, query


def extract_localized(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    config: SieveConfig = SieveConfig(),
    optimize: bool = False,
    source: int | None = None,
    dest: int | None = None,
    budget: OracleBudget = OracleBudget(),
) -> SolveReport:
    """Decide (optionally at the optimum), then search back in time from a flagged vertex."""
    if optimize:
        rep = find_optimum_timestamp(problem, g, coloring, query, config, source, dest)
    else:
        rep = decide(problem, g, coloring, query, config, source=source, dest=dest)
    if not rep.yes or problem == VC_COLORFULPATH:
        return rep
    start = time.perf_counter()
    max_ts = rep.optimum_ts or None
    search_g = g
    if problem == RAINBOWPATH:
        query = MotifQuery.colors(rep.notes["colors"])
        problem_q = COLORFULPATH
    else:
        problem_q = problem
    col, q = _search_query(problem_q, query, coloring, source, dest)
    src = -1 if source is None else source
    dst = -1 if dest is None else dest
    for u in rep.flagged:
        if config.edge_model == "instant":
            found = temporal_dfs(search_g, col, q, budget, mode="first", starts=[u], source=src,
                                 dest=dst, reverse=True, max_ts=max_ts)
        else:
            found = temporal_dfs(search_g, col, q, budget, mode="first", source=src, dest=u,
                                 edge_model=config.edge_model, max_ts=None)
        if found.witness is not None:
            rep.witness = found.witness
            rep.notes["extracted_from"] = int(u)
            break
    else:
        rep.extraction_failed = True
    rep.timings["extraction"] = time.perf_counter() - start
    return rep


def extract_self_reducible(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    config: SieveConfig = SieveConfig(),
    optimize: bool = False,
    source: int | None = None,
    dest: int | None = None,
    budget: OracleBudget = OracleBudget(),
) -> SolveReport:
    """Shrink the vertex set with deletion queries, then search the survivors.

    Phase 1 removes chunks of size |S|/2, |S|/4, ..., 1 whenever the decision
    stays YES without them (YES answers are never wrong, so the survivors
    always hold a match).  Phase 2 runs a forward temporal DFS on them.
    """
    if optimize:
        rep = find_optimum_timestamp(problem, g, coloring, query, config, source, dest)
    else:
        rep = decide(problem, g, coloring, query, config, source=source, dest=dest)
    if not rep.yes:
        return rep
    start = time.perf_counter()
    max_ts = rep.optimum_ts or None
    sub_problem, sub_query = problem, query
    if problem == RAINBOWPATH:
        sub_problem, sub_query = COLORFULPATH, MotifQuery.colors(rep.notes["colors"])
    pinned = {v for v in (source, dest) if v is not None}

    def still_yes(keep: list[int]) -> bool:
        sub = restrict_to(g, np.asarray(keep, dtype=np.int64))
        return decide(sub_problem, sub, coloring, sub_query, config, max_ts, source, dest).yes

    alive = list(range(g.n))
    calls = 0
    chunk = max(1, math.ceil(len(alive) / 2))
    while len(alive) > query.k:
        i = 0
        while i < len(alive) and len(alive) > query.k:
            part = set(alive[i : i + chunk]) - pinned
            rest = [v for v in alive if v not in part]
            removable = part and len(rest) >= query.k
            if removable:
                calls += 1
            if removable and still_yes(rest):
                alive = rest
            else:
                i += chunk
        if chunk == 1:
            break
        chunk = max(1, chunk // 2)
    rep.oracle_calls += calls
    rep.notes["core"] = alive
    col, q = _search_query(sub_problem, sub_query, coloring, source, dest)
    core = restrict_to(g, np.asarray(alive, dtype=np.int64), max_ts)
    found = temporal_dfs(
        core, col, q, budget, mode="first", starts=alive,
        source=-1 if source is None else source, dest=-1 if dest is None else dest,
        edge_model=config.edge_model,
    )
    if found.witness is not None:
        rep.witness = found.witness
    else:
        rep.extraction_failed = True
    rep.timings["extraction"] = time.perf_counter() - start
    return rep


# ------------------------------------------------------------- preprocessing


@dataclass
class Preprocessed:
    graph: TemporalGraph
    coloring: VertexColoring
    vmap: np.ndarray  # vmap[new id] = original id
    stats: dict


def _junction_query(problem: str, query: MotifQuery, coloring: VertexColoring):
    if problem in (KTEMPPATH, EC_TEMPPATH) or not query.has_colors:
        return VertexColoring.uniform(coloring.n), MotifQuery.size(query.k)
    return coloring, query.as_multiset_query()


def preprocess(
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    level: str = "both",
    config: SieveConfig = SieveConfig(),
    problem: str = PATHMOTIF,
) -> Preprocessed:
    """Shrink the graph before the temporal sieve.

    ``colors`` drops vertices whose colors miss the query; ``static`` keeps
    only vertices the junction sieve places on a colored path of the
    timestamp-free projection.  Vertex ids are renumbered; ``vmap`` maps back.
    """
    if level not in PREPROCESS_LEVELS:
        raise ValueError(f"preprocess level must be one of {PREPROCESS_LEVELS}")
    start = time.perf_counter()
    stats = {"n_before": g.n, "m_before": g.m}
    keep = np.ones(g.n, dtype=bool)
    uses_colors = problem not in (KTEMPPATH, EC_TEMPPATH, SD_COLORFULPATH, RAINBOWPATH)
    if level in ("colors", "both") and uses_colors:
        keep &= color_filter_mask(coloring, query)
    if level in ("static", "both") and problem not in (SD_COLORFULPATH, RAINBOWPATH):
        sub = restrict_to(g, np.nonzero(keep)[0])
        col, jq = _junction_query(problem, query, coloring)
        out = eval_junction_sieve(project_static(sub), jq.k, build_shades(jq, col, config), config, col)
        mark = np.zeros(g.n, dtype=bool)
        mark[out.flagged] = True
        keep &= mark
        stats["junction_seconds"] = out.seconds
        stats["junction_words"] = out.peak_words
    if level == "none":
        vmap = np.arange(g.n, dtype=np.int64)
        sub_g, sub_c = g, coloring
    else:
        sub_g, sub_c, vmap = compact(g, coloring, np.nonzero(keep)[0])
    stats.update(n_after=sub_g.n, m_after=sub_g.m, seconds=time.perf_counter() - start)
    return Preprocessed(sub_g, sub_c, vmap, stats)


# ----------------------------------------------------------------- wildcards


def solve_with_wildcards(
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    k_max: int | None = None,
    config: SieveConfig = SieveConfig(),
    max_ts: int | None = None,
) -> SolveReport:
    """Allow up to k_max - k extra path vertices of any color.

    Every vertex also carries the fresh color q+1; the query gains one copy
    of q+1 per round until a match appears.
    """
    k_max = 2 * query.k if k_max is None else k_max
    if k_max < query.k:
        raise QueryMismatch("wildcard bound must be >= k")
    wc = coloring.with_wildcard(query.support)
    calls = 0
    for extra in range(0, k_max - query.k + 1):
        q = query if extra == 0 else query.as_multiset_query().with_extra(wc.wildcard, extra)
        if q.k > g.n:
            break
        rep = decide(PATHMOTIF, g, wc, q, config, max_ts=max_ts)
        calls += rep.oracle_calls
        if rep.yes:
            rep.oracle_calls = calls
            rep.notes["wildcards"] = extra
            rep.notes["wildcard_color"] = wc.wildcard
            rep.notes["query"] = q
            return rep
    return SolveReport(PATHMOTIF, Verdict.NO, oracle_calls=calls, notes={"wildcards": None})


# ------------------------------------------------------------------- facade


def solve(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    config: SieveConfig = SieveConfig(),
    *,
    optimize: bool = False,
    extract: bool = False,
    extraction: str = "localized",
    preprocess_level: str = "none",
    source: int | None = None,
    dest: int | None = None,
    wildcards_max: int | None = None,
    budget: OracleBudget = OracleBudget(),
) -> SolveReport:
    """Preprocess, then decide / optimize / extract; results use original ids."""
    check_query(problem, query)
    if wildcards_max is not None:
        if problem != PATHMOTIF:
            raise QueryMismatch("wildcards are supported for pathmotif only")
        rep = solve_with_wildcards(g, coloring, query, wildcards_max, config)
        if rep.yes and extract:
            q = rep.notes["query"]
            ex = extract_localized(PATHMOTIF, g, VertexColoring(coloring.base, rep.notes["wildcard_color"]), q, config, optimize, budget=budget)
            ex.notes.update(rep.notes)
            ex.oracle_calls += rep.oracle_calls
            return ex
        return rep
    pinned = problem == SD_COLORFULPATH
    level = preprocess_level if not pinned else "none"
    pre = preprocess(g, coloring, query, level, config, problem)
    gg, cc, vmap = pre.graph, pre.coloring, pre.vmap
    inv = {int(o): i for i, o in enumerate(vmap)}
    s = inv.get(source) if source is not None else None
    d = inv.get(dest) if dest is not None else None
    if extract:
        fn = extract_localized if extraction == "localized" else extract_self_reducible
        if extraction not in ("localized", "self-reducible"):
            raise ValueError("extraction must be 'localized' or 'self-reducible'")
        rep = fn(problem, gg, cc, query, config, optimize, s, d, budget)
    elif optimize:
        rep = find_optimum_timestamp(problem, gg, cc, query, config, s, d)
    else:
        rep = decide(problem, gg, cc, query, config, source=s, dest=d)
    rep.flagged = [int(vmap[u]) for u in rep.flagged]
    if rep.witness is not None:
        rep.witness = lift_path(rep.witness, vmap)
    if "core" in rep.notes:
        rep.notes["core"] = [int(vmap[u]) for u in rep.notes["core"]]
    if "extracted_from" in rep.notes:
        rep.notes["extracted_from"] = int(vmap[rep.notes["extracted_from"]])
    rep.timings["preprocess"] = pre.stats["seconds"]
    rep.notes["preprocess"] = {k: v for k, v in pre.stats.items() if k != "seconds"}
    return rep


def validate_report(
    problem: str,
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    rep: SolveReport,
    edge_model: str = "instant",
    source: int | None = None,
    dest: int | None = None,
):
    """Check a report's witness with the problem's own coloring and query."""
    if rep.witness is None:
        return None
    if problem == SD_COLORFULPATH:
        col, q = sd_setup(coloring, source, dest, query.k)
        ok = validate_path(g, col, rep.witness, q, edge_model)
        if ok and (rep.witness.vertices[0] != source or rep.witness.vertices[-1] != dest):
            from .graph import PathVerdict

            return PathVerdict(False, "endpoints differ from source/destination")
        return ok
    if problem == RAINBOWPATH:
        return validate_path(g, coloring, rep.witness, MotifQuery.colors(rep.notes["colors"]), edge_model)
    if "wildcards" in rep.notes and rep.notes.get("query") is not None:
        wc = VertexColoring(coloring.base, rep.notes["wildcard_color"])
        return validate_path(g, wc, rep.witness, rep.notes["query"], edge_model)
    col, q = _search_query(problem, query, coloring, source, dest)
    return validate_path(g, col, rep.witness, q, edge_model)
