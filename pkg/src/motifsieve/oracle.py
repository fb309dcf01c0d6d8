"""Non-algebraic baselines: exhaustive temporal DFS and random temporal walks.

Both are exact about what they report (every YES carries a checked witness);
the DFS is also complete when it finishes inside its budget.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numba as nb
import numpy as np

from .graph import TemporalGraph, TemporalPath, VertexColoring, restrict_to, validate_path
from .query import MotifQuery

DONE = 0
BUDGET = 1
FOUND = 2

BIG = np.int64(1) << np.int64(62)


@dataclass(frozen=True)
class OracleBudget:
    max_nodes: int = 10**12
    max_walks: int = 10**6
    seconds: float = float("inf")
    slice_nodes: int = 2_000_000  # DFS nodes between wall-clock checks

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_walks <= 0 or self.seconds <= 0 or self.slice_nodes <= 0:
            raise ValueError("budget entries must be positive")


@dataclass
class OracleReport:
    verdict: str  # "YES", "NO" or "INCONCLUSIVE"
    witness: TemporalPath | None = None
    optimum_ts: int | None = None
    nodes: int = 0
    walks: int = 0
    seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    @property
    def decision(self) -> bool | None:
        return {"YES": True, "NO": False}.get(self.verdict)


@dataclass(frozen=True)
class SearchConstraints:
    """Everything the DFS checks besides time-respecting simplicity."""

    k: int
    need: np.ndarray  # per color multiplicity; all zero for size-only
    wildcard: int = -1
    order: np.ndarray | None = None  # required color per position
    times: np.ndarray | None = None  # required departure timestamp per edge
    source: int = -1
    dest: int = -1
    check_colors: bool = True


def constraints_for(query: MotifQuery, coloring: VertexColoring | None, source: int = -1, dest: int = -1) -> SearchConstraints:
    ncol = 2
    if coloring is not None:
        ncol = max(ncol, coloring.q + 2, (coloring.wildcard or 0) + 1)
    if query.has_colors:
        ncol = max(ncol, max(query.counts) + 1)
    need = np.zeros(ncol, dtype=np.int64)
    if query.has_colors and query.order is None:
        for c, m in query.counts.items():
            need[c] = m
    order = np.asarray(query.order, dtype=np.int64) if query.order is not None else None
    times = np.asarray(query.times, dtype=np.int64) if query.times is not None else None
    wild = coloring.wildcard if coloring is not None and coloring.wildcard is not None else -1
    return SearchConstraints(
        query.k, need, wild, order, times, source, dest, check_colors=query.has_colors and query.order is None
    )


@nb.njit(cache=True, nogil=True)
def _has_color(base, wild, v, c):
    return base[v] == c or (wild >= 0 and c == wild)


@nb.njit(cache=True, nogil=True)
def _lower_bound(ts, lo, hi, value):
    while lo < hi:
        mid = (lo + hi) >> 1
        if ts[mid] < value:
            lo = mid + 1
        else:
            hi = mid
    return lo


@nb.njit(cache=True, nogil=True)
def _leaf_colors_ok(base, wild, need, path, k, cnt):
    for c in range(cnt.size):
        cnt[c] = 0
    for d in range(k):
        c = base[path[d]]
        if c < cnt.size:
            cnt[c] += 1
    for c in range(need.size):
        if c != wild and cnt[c] < need[c]:
            return False
    if wild < 0:
        for c in range(need.size):
            if cnt[c] != need[c]:
                return False
        for d in range(k):
            if base[path[d]] >= need.size:
                return False
    return True


@nb.njit(cache=True, nogil=True)
def dfs_kernel(
    ptr, nbr, ets, eps, wait, base, wild, need, order, has_order, times, has_times,
    source, dest, check_colors, first_mode, k, starts, state, path, epath, arrive, pos,
    took, used, onpath, best_path, best_edges, budget,
):
    """Resumable iterative temporal DFS.

    ``state`` = [next start index, depth, nodes, best max slot, found flag].
    ``arrive[d]`` is the slot at which the walk reached path[d]; the next edge
    must depart at or after arrive[d] + wait[path[d]].
    """
    cnt = np.zeros(need.size, dtype=np.int64)
    limit = state[2] + budget
    while True:
        if state[2] >= limit:
            return BUDGET
        depth = state[1]
        if depth < 0:
            if state[0] >= starts.size:
                return DONE
            v = starts[state[0]]
            state[0] += 1
            if source >= 0 and v != source:
                continue
            if has_order and not _has_color(base, wild, v, order[0]):
                continue
            tk = 0
            if first_mode and check_colors:
                c = base[v]
                if c < need.size and c != wild and used[c] < need[c]:
                    tk = 1
                elif wild >= 0 and used[wild] < need[wild]:
                    tk = 2
                else:
                    continue
            path[0] = v
            took[0] = tk
            if tk == 1:
                used[base[v]] += 1
            elif tk == 2:
                used[wild] += 1
            onpath[v] = 1
            arrive[0] = 0
            if k == 1:
                ok = dest < 0 or v == dest
                if ok and not first_mode and check_colors:
                    ok = _leaf_colors_ok(base, wild, need, path, k, cnt)
                if ok:
                    state[4] = 1
                    best_path[0] = v
                    state[3] = 0
                    if first_mode:
                        return FOUND
                onpath[v] = 0
                if tk == 1:
                    used[base[v]] -= 1
                elif tk == 2:
                    used[wild] -= 1
                continue
            state[2] += 1
            pos[0] = ptr[v]
            state[1] = 0
            continue
        d = depth
        v = path[d]
        hi = ptr[v + 1]
        advanced = False
        while pos[d] < hi:
            e = pos[d]
            pos[d] += 1
            t = ets[e]
            if has_times:
                if t < times[d]:
                    continue
                if t > times[d]:
                    pos[d] = hi
                    break
            w = nbr[e]
            if onpath[w]:
                continue
            nd = d + 1
            if has_order and not _has_color(base, wild, w, order[nd]):
                continue
            last = nd == k - 1
            if last and dest >= 0 and w != dest:
                continue
            if not last and dest >= 0 and w == dest:
                continue
            tk = 0
            if first_mode and check_colors:
                c = base[w]
                if c < need.size and c != wild and used[c] < need[c]:
                    tk = 1
                elif wild >= 0 and used[wild] < need[wild]:
                    tk = 2
                else:
                    continue
            slot = t + eps[e] - 1
            path[nd] = w
            epath[d] = e
            arrive[nd] = slot
            if last:
                ok = True
                if not first_mode and check_colors:
                    ok = _leaf_colors_ok(base, wild, need, path, k, cnt)
                if ok and slot < state[3]:
                    state[3] = slot
                    state[4] = 1
                    for i in range(k):
                        best_path[i] = path[i]
                    for i in range(k - 1):
                        best_edges[i] = epath[i]
                    if first_mode:
                        return FOUND
                continue
            took[nd] = tk
            if tk == 1:
                used[base[w]] += 1
            elif tk == 2:
                used[wild] += 1
            onpath[w] = 1
            state[2] += 1
            pos[nd] = _lower_bound(ets, ptr[w], ptr[w + 1], slot + wait[w])
            state[1] = nd
            advanced = True
            break
        if not advanced:
            onpath[v] = 0
            if took[d] == 1:
                used[base[v]] -= 1
            elif took[d] == 2:
                used[wild] -= 1
            state[1] = d - 1


def _timing_arrays(g: TemporalGraph, edge_model: str, edge_idx: np.ndarray):
    use_transit = edge_model in ("transition", "transition+delay")
    use_delay = edge_model in ("delay", "transition+delay")
    eps = g.transit_array()[edge_idx] if use_transit else np.ones(edge_idx.size, dtype=np.int64)
    wait = g.delay_array() if use_delay else np.ones(g.n, dtype=np.int64)
    return np.ascontiguousarray(eps, dtype=np.int64), np.ascontiguousarray(wait, dtype=np.int64)


def color_filter_mask(coloring: VertexColoring, query: MotifQuery) -> np.ndarray:
    """Vertices with at least one color the query asks for."""
    if not query.has_colors:
        return np.ones(coloring.n, dtype=bool)
    support = query.support if query.order is None else frozenset(query.order)
    keep = np.zeros(coloring.n, dtype=bool)
    for c in support:
        keep |= coloring.has_color(c)
    return keep


def temporal_dfs(
    g: TemporalGraph,
    coloring: VertexColoring | None,
    query: MotifQuery,
    budget: OracleBudget = OracleBudget(),
    mode: str = "best",
    starts=None,
    source: int = -1,
    dest: int = -1,
    edge_model: str = "instant",
    reverse: bool = False,
    max_ts: int | None = None,
) -> OracleReport:
    """Depth-limited temporal DFS.

    ``mode="best"`` enumerates every depth-k leaf and keeps the witness with
    the smallest final arrival slot, checking colors only at leaves.
    ``mode="first"`` prunes on colors as it goes and stops at the first hit.
    ``reverse=True`` walks backwards in time from the start vertices, which
    become path ends (only for the instant edge model).
    """
    coloring = coloring if coloring is not None else VertexColoring.uniform(g.n)
    if max_ts is not None:
        g = restrict_to(g, None, max_ts)
    cons = constraints_for(query, coloring, source, dest)
    k = query.k
    if reverse:
        if edge_model != "instant":
            raise ValueError("reverse search supports the instant edge model only")
        adj = g.in_adjacency
        # descending timestamps become ascending keys
        ets = -adj["ts"]
        order = cons.order[::-1].copy() if cons.order is not None else None
        times = -cons.times[::-1] if cons.times is not None else None
        src, dst = cons.dest, cons.source
    else:
        adj = g.out_adjacency
        ets = adj["ts"]
        order, times = cons.order, cons.times
        src, dst = cons.source, cons.dest
    ptr, nbr, eidx = adj["ptr"], adj["nbr"], adj["edge"]
    eps, wait = _timing_arrays(g, edge_model, eidx)
    if reverse:
        # arrive[d] holds -ts; an earlier edge needs -ts' >= -ts + 1
        eps = np.ones_like(eps)
        wait = np.ones(g.n, dtype=np.int64)
    keep = color_filter_mask(coloring, query)
    if starts is None:
        starts = np.nonzero(keep)[0]
    starts = np.ascontiguousarray(starts, dtype=np.int64)
    # vertices failing the color filter can never lie on a match
    onpath = (~keep).astype(np.uint8)
    ets = np.ascontiguousarray(ets, dtype=np.int64)
    base = coloring.base

    state = np.array([0, -1, 0, BIG, 0], dtype=np.int64)
    path = np.zeros(k, dtype=np.int64)
    epath = np.zeros(max(k - 1, 1), dtype=np.int64)
    arrive = np.zeros(k, dtype=np.int64)
    pos = np.zeros(k, dtype=np.int64)
    took = np.zeros(k, dtype=np.int64)
    used = np.zeros(cons.need.size, dtype=np.int64)
    best_path = np.zeros(k, dtype=np.int64)
    best_edges = np.zeros(max(k - 1, 1), dtype=np.int64)
    empty = np.zeros(1, dtype=np.int64)
    start = time.perf_counter()
    status = BUDGET
    while True:
        step = min(budget.slice_nodes, budget.max_nodes - int(state[2]))
        if step <= 0:
            break
        status = dfs_kernel(
            ptr, nbr, ets, eps, wait, base, cons.wildcard, cons.need,
            order if order is not None else empty, order is not None,
            times if times is not None else empty, times is not None,
            src, dst, cons.check_colors, mode == "first", k, starts, state, path, epath, arrive, pos,
            took, used, onpath, best_path, best_edges, step,
        )
        if status != BUDGET or time.perf_counter() - start > budget.seconds:
            break
    elapsed = time.perf_counter() - start
    found = bool(state[4])
    witness = None
    if found:
        witness = _witness(g, adj, best_path, best_edges, k, reverse)
    if status == BUDGET and not (found and mode == "first"):
        verdict = "INCONCLUSIVE"
    else:
        verdict = "YES" if found else "NO"
    opt = None
    if found:
        opt = witness.max_ts if edge_model == "instant" else _final_slot(g, witness, edge_model)
    return OracleReport(verdict, witness, opt, int(state[2]), 0, elapsed, {"partial": status == BUDGET})


def _final_slot(g: TemporalGraph, p: TemporalPath, edge_model: str) -> int:
    if not p.edges:
        return 0
    u, v, t = p.edges[-1]
    if edge_model in ("transition", "transition+delay") and g.transit is not None:
        adj = g.out_adjacency
        lo, hi = adj["ptr"][u], adj["ptr"][u + 1]
        for e in range(lo, hi):
            if adj["nbr"][e] == v and adj["ts"][e] == t:
                return int(t + g.transit[adj["edge"][e]] - 1)
    return int(t)


def _witness(g, adj, best_path, best_edges, k, reverse) -> TemporalPath:
    verts = [int(x) for x in best_path[:k]]
    edges = []
    for d in range(k - 1):
        e = int(best_edges[d])
        t = int(adj["ts"][e])
        a, b = verts[d], verts[d + 1]
        edges.append((b, a, t) if reverse else (a, b, t))
    if reverse:
        verts = verts[::-1]
        edges = edges[::-1]
    return TemporalPath(tuple(verts), tuple(edges))


def exhaustive_search(
    g: TemporalGraph,
    coloring: VertexColoring | None,
    query: MotifQuery,
    budget: OracleBudget = OracleBudget(),
    source: int = -1,
    dest: int = -1,
    edge_model: str = "instant",
    mode: str = "best",
) -> OracleReport:
    """Exact baseline: DFS from every vertex surviving the color filter.

    In ``best`` mode the reported witness minimizes the final arrival slot.
    """
    rep = temporal_dfs(g, coloring, query, budget, mode=mode, source=source, dest=dest, edge_model=edge_model)
    if rep.witness is not None:
        assert validate_path(g, coloring, rep.witness, query, edge_model).ok or source >= 0 or dest >= 0
    return rep


# ---------------------------------------------------------------- random walk


@nb.njit(cache=True, nogil=True)
def walk_kernel(ptr, nbr, ets, base, wild, need, k, n, seed, iters, path, edges, best_path, best_edges, state):
    """Random temporal walks; state = [walks done, best max ts, hit iteration]."""
    np.random.seed(seed)
    cnt = np.zeros(need.size, dtype=np.int64)
    onpath = np.zeros(n, dtype=np.uint8)
    for it in range(iters):
        state[0] += 1
        v = np.random.randint(0, n)
        path[0] = v
        now = np.int64(0)
        ok = True
        for d in range(k - 1):
            lo = _lower_bound(ets, ptr[v], ptr[v + 1], now + 1)
            hi = ptr[v + 1]
            if lo >= hi:
                ok = False
                break
            e = np.random.randint(lo, hi)
            edges[d] = e
            v = nbr[e]
            now = ets[e]
            path[d + 1] = v
        if not ok:
            continue
        simple = True
        for d in range(k):
            if onpath[path[d]]:
                simple = False
            onpath[path[d]] = 1
        for d in range(k):
            onpath[path[d]] = 0
        if not simple:
            continue
        if not _leaf_colors_ok(base, wild, need, path, k, cnt):
            continue
        if now < state[1]:
            state[1] = now
            state[2] = state[0]
            for d in range(k):
                best_path[d] = path[d]
            for d in range(k - 1):
                best_edges[d] = edges[d]


def random_walk_search(
    g: TemporalGraph,
    coloring: VertexColoring | None,
    query: MotifQuery,
    budget: OracleBudget = OracleBudget(),
    seed: int = 0,
) -> OracleReport:
    """Monte-Carlo search: uniform start, uniform valid extension each step.

    NO means "not found within budget" and is reported as INCONCLUSIVE.
    """
    if query.order is not None or query.times is not None:
        raise ValueError("random-walk search handles multiset and size-only queries")
    coloring = coloring if coloring is not None else VertexColoring.uniform(g.n)
    cons = constraints_for(query, coloring)
    need = cons.need if cons.check_colors else np.zeros(1, dtype=np.int64)
    base = coloring.base if cons.check_colors else np.zeros(g.n, dtype=np.int64)
    if not cons.check_colors:
        need = np.zeros(1, dtype=np.int64)
        need[0] = query.k
    adj = g.out_adjacency
    k = query.k
    path = np.zeros(k, dtype=np.int64)
    edges = np.zeros(max(k - 1, 1), dtype=np.int64)
    best_path = np.zeros(k, dtype=np.int64)
    best_edges = np.zeros(max(k - 1, 1), dtype=np.int64)
    state = np.array([0, BIG, -1], dtype=np.int64)
    start = time.perf_counter()
    chunk = 100_000
    done = 0
    while done < budget.max_walks and g.n > 0:
        it = min(chunk, budget.max_walks - done)
        walk_kernel(adj["ptr"], adj["nbr"], adj["ts"], base, cons.wildcard, need, k, g.n,
                    (seed * 1_000_003 + done) % (2**32), it, path, edges, best_path, best_edges, state)
        done += it
        if time.perf_counter() - start > budget.seconds:
            break
    elapsed = time.perf_counter() - start
    if state[2] < 0:
        return OracleReport("INCONCLUSIVE", walks=int(state[0]), seconds=elapsed)
    witness = _witness(g, adj, best_path, best_edges, k, False)
    if not validate_path(g, coloring, witness, query).ok:
        raise AssertionError("random walk produced an invalid witness")
    return OracleReport("YES", witness, witness.max_ts, walks=int(state[0]), seconds=elapsed,
                        notes={"hit_iteration": int(state[2])})
