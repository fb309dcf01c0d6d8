"""Constrained multilinear sieve over GF(2^b).

Each vertex u gets k label values z[u, j] = sum_{d in S(u)} v[u, d] w[d, j]
where S(u) is the set of shades reserved for u's colors.  For every label
subset A the vertex variable is x_u = sum_{j in A} z[u, j]; a walk polynomial
summed over all 2^k subsets keeps exactly the vertex-distinct, properly
colored monomials (a k x k determinant in characteristic 2).  Subsets are
evaluated W at a time in lanes.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .gf import (
    FIELD_BITS,
    REDUCTION_POLY,
    ROLE_V,
    ROLE_W,
    ROLE_Y,
    ROLE_Y_AUX,
    SeededStream,
)
from .graph import StaticProjection, TemporalGraph, VertexColoring
from .query import MotifQuery

EDGE_MODELS = ("instant", "transition", "delay", "transition+delay")


class MemoryCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SieveConfig:
    seed: int = 0
    bits: int = 64
    lanes: int = 8
    workers: int = 1
    localization: bool = True
    edge_model: str = "instant"
    memory_cap: int | None = None  # field words; None disables the check

    def __post_init__(self):
        if self.bits not in FIELD_BITS:
            raise ValueError(f"field width must be one of {FIELD_BITS}")
        if self.lanes < 1 or self.lanes & (self.lanes - 1):
            raise ValueError("lane width must be a power of two")
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")
        if self.edge_model not in EDGE_MODELS:
            raise ValueError(f"edge model must be one of {EDGE_MODELS}")

    def replace(self, **changes) -> "SieveConfig":
        from dataclasses import replace

        return replace(self, **changes)


@dataclass(frozen=True, eq=False)
class ShadeAssignment:
    """Shade sets per color plus the seeded v/w families.

    ``shade_sets`` uses shade ids 1..k; internally shade d sits at column d-1.
    """

    k: int
    shade_sets: dict[int, tuple[int, ...]]
    seed: int
    bits: int
    absent_colors: tuple[int, ...] = ()

    def v(self, u: int, d: int) -> int:
        return SeededStream(self.seed, self.bits, ROLE_V).draw(u, d)

    def w(self, d: int, j: int) -> int:
        return SeededStream(self.seed, self.bits, ROLE_W).draw(d, j)

    def shades_of(self, colors) -> list[int]:
        out: list[int] = []
        for c in sorted(colors):
            out.extend(self.shade_sets.get(c, ()))
        return out

    def z_table(self, coloring: VertexColoring) -> np.ndarray:
        """n x k matrix of z[u, j]; rows of vertices outside the support are zero."""
        n, k = coloring.n, self.k
        wmat = np.empty((k, k), dtype=np.uint64)
        ws = SeededStream(self.seed, self.bits, ROLE_W)
        for d in range(1, k + 1):
            wmat[d - 1] = ws.draws(np.full(k, d), np.arange(1, k + 1))
        z = np.zeros((n, k), dtype=np.uint64)
        vs = SeededStream(self.seed, self.bits, ROLE_V)
        for c, shades in self.shade_sets.items():
            holders = np.nonzero(coloring.has_color(c))[0]
            if holders.size == 0:
                continue
            for d in shades:
                vals = vs.draws(holders, np.full(holders.size, d))
                for j in range(k):
                    z[holders, j] ^= _gf_mul_vec(vals, wmat[d - 1, j], self.bits)
        return z


def _gf_mul_vec(a: np.ndarray, scalar, bits: int) -> np.ndarray:
    from .gf import mul_array

    return mul_array(a, np.full(a.shape, scalar, dtype=np.uint64), bits)


def build_shades(query: MotifQuery, coloring: VertexColoring, config: SieveConfig) -> ShadeAssignment:
    """Canonical shade allocation: colors ascending, shade ids ascending."""
    shade_sets: dict[int, tuple[int, ...]] = {}
    nxt = 1
    for c, mult in sorted(query.counts.items()):
        shade_sets[c] = tuple(range(nxt, nxt + mult))
        nxt += mult
    present = coloring.present_colors()
    absent = tuple(c for c in sorted(shade_sets) if c not in present)
    return ShadeAssignment(query.k, shade_sets, config.seed, config.bits, absent)


@dataclass
class SieveOutcome:
    global_nonzero: bool
    acc: np.ndarray
    flagged: np.ndarray
    fn_bound: float
    peak_words: int = 0
    checksum: int = 0
    certain_no: str | None = None
    seconds: float = 0.0

    @classmethod
    def certain(cls, n: int, reason: str) -> "SieveOutcome":
        return cls(False, np.zeros(n, dtype=np.uint64), np.zeros(0, dtype=np.int64), 0.0, certain_no=reason)

    @classmethod
    def from_acc(cls, acc: np.ndarray, k: int, config: SieveConfig, peak: int, seconds: float) -> "SieveOutcome":
        flagged = np.nonzero(acc)[0].astype(np.int64)
        checksum = int(np.bitwise_xor.reduce(acc)) if acc.size else 0
        decision = flagged.size > 0 if config.localization else checksum != 0
        return cls(decision, acc, flagged, fn_bound(k, config.bits), peak, checksum, None, seconds)


def fn_bound(k: int, bits: int) -> float:
    return (2 * k - 1) / 2.0**bits


# ------------------------------------------------------------------ plans


@dataclass(frozen=True, eq=False)
class TemporalPlan:
    """Arrival instances grouped by (slot, head), ready for the kernel."""

    n: int
    max_slot: int
    tail: np.ndarray
    eid: np.ndarray
    src_ok: np.ndarray
    src_grp: np.ndarray
    grp_start: np.ndarray
    grp_head: np.ndarray
    grp_slot: np.ndarray
    grp_prev: np.ndarray
    _keys: np.ndarray = field(repr=False)
    _order: np.ndarray = field(repr=False)

    @property
    def n_groups(self) -> int:
        return int(self.grp_head.size)

    def groups_upto(self, slot: int) -> int:
        return int(np.searchsorted(self.grp_slot, slot, side="right"))

    def readout(self, slot: int) -> np.ndarray:
        """Index of the last group of each vertex with arrival slot <= ``slot``."""
        return self._last_group(np.arange(self.n, dtype=np.int64), np.full(self.n, slot, dtype=np.int64))

    def _last_group(self, verts: np.ndarray, slots: np.ndarray) -> np.ndarray:
        stride = self.max_slot + 1
        pos = np.searchsorted(self._keys, verts * stride + slots, side="right") - 1
        out = np.full(verts.size, -1, dtype=np.int64)
        ok = pos >= 0
        cand = self._order[pos[ok]]
        same = self.grp_head[cand] == verts[ok]
        idx = np.nonzero(ok)[0][same]
        out[idx] = cand[same]
        return out


def temporal_plan(g: TemporalGraph, edge_model: str = "instant") -> TemporalPlan:
    cache = g.__dict__.setdefault("_plans", {})
    if edge_model in cache:
        return cache[edge_model]
    arr = g.arrivals
    head, tail, ts, edge = arr["head"], arr["tail"], arr["ts"], arr["edge"]
    use_transit = edge_model in ("transition", "transition+delay")
    use_delay = edge_model in ("delay", "transition+delay")
    slot = ts + (g.transit_array()[edge] - 1 if use_transit else 0)
    src_slot = ts - (g.delay_array()[tail] if use_delay else 1)
    keep = src_slot >= 0
    head, tail, slot, src_slot, edge = head[keep], tail[keep], slot[keep], src_slot[keep], edge[keep]
    order = np.lexsort((tail, head, slot))
    head, tail, slot, src_slot, edge = head[order], tail[order], slot[order], src_slot[order], edge[order]

    if head.size:
        brk = np.ones(head.size, dtype=bool)
        brk[1:] = (head[1:] != head[:-1]) | (slot[1:] != slot[:-1])
        starts = np.nonzero(brk)[0]
    else:
        starts = np.zeros(0, dtype=np.int64)
    grp_start = np.append(starts, head.size).astype(np.int64)
    grp_head = head[starts]
    grp_slot = slot[starts]
    max_slot = int(grp_slot.max()) if grp_slot.size else max(g.t, 1)
    max_slot = max(max_slot, g.t, int(src_slot.max()) if src_slot.size else 0)
    stride = max_slot + 1
    keys = grp_head * stride + grp_slot
    korder = np.argsort(keys, kind="stable")
    skeys = keys[korder]
    grp_prev = np.full(grp_head.size, -1, dtype=np.int64)
    if korder.size > 1:
        same = grp_head[korder[1:]] == grp_head[korder[:-1]]
        grp_prev[korder[1:][same]] = korder[:-1][same]

    plan = TemporalPlan(
        n=g.n,
        max_slot=max_slot,
        tail=tail,
        eid=g.edge_ids[edge],
        src_ok=(src_slot >= 0).astype(np.uint8),
        src_grp=np.zeros(0, dtype=np.int64),
        grp_start=grp_start,
        grp_head=grp_head,
        grp_slot=grp_slot,
        grp_prev=grp_prev,
        _keys=skeys,
        _order=korder,
    )
    src_grp = plan._last_group(tail, src_slot)
    plan = TemporalPlan(**{**plan.__dict__, "src_grp": src_grp})
    cache[edge_model] = plan
    return plan


# ---------------------------------------------------------------- drivers


def _effective_lanes(k: int, lanes: int) -> tuple[int, int]:
    W = min(lanes, 1 << k)
    return W, int(math.log2(W))


def _lane_slices(W: int, workers: int) -> list[tuple[int, int]]:
    parts = min(W, workers)
    bounds = np.linspace(0, W, parts + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run_sliced(fn, W: int, n: int, workers: int) -> np.ndarray:
    slices = _lane_slices(W, workers)
    accs = [np.zeros(n, dtype=np.uint64) for _ in slices]
    if len(slices) == 1:
        fn(*slices[0], accs[0])
    else:
        with ThreadPoolExecutor(max_workers=len(slices)) as pool:
            list(pool.map(lambda s: fn(s[1][0], s[1][1], accs[s[0]]), enumerate(slices)))
    acc = accs[0]
    for a in accs[1:]:
        acc ^= a
    return acc


def _check_cap(words: int, config: SieveConfig) -> None:
    if config.memory_cap is not None and words > config.memory_cap:
        raise MemoryCapExceeded(f"sieve needs {words} field words, cap is {config.memory_cap}")


def _layer_mask(k: int, n: int, masks=None) -> np.ndarray:
    mask = np.ones((k + 1, n), dtype=np.uint8)
    if masks is not None:
        for layer, m in masks.items():
            mask[layer] = np.asarray(m, dtype=np.uint8)
    return mask


def temporal_words(plan: TemporalPlan, n: int, k: int, W: int, max_slot: int) -> int:
    groups = plan.groups_upto(max_slot)
    # two layer buffers over groups, lane table, x table, z columns
    return 2 * groups * W + 2 * n * W + n * k + W


def _eval_plan(
    plan: TemporalPlan,
    zcol: np.ndarray,
    k: int,
    max_slot: int,
    config: SieveConfig,
    masks: dict | None = None,
) -> SieveOutcome:
    n = zcol.shape[0]
    W, lowbits = _effective_lanes(k, config.lanes)
    n_groups = plan.groups_upto(max_slot)
    words = temporal_words(plan, n, k, W, max_slot)
    _check_cap(words, config)
    start = time.perf_counter()
    zlo = K.lane_low_table(zcol, W)
    x = np.zeros((n, W), dtype=np.uint64)
    rows = max(n_groups, 1)
    buf_a = np.zeros((rows, W), dtype=np.uint64)
    buf_b = np.zeros((rows, W), dtype=np.uint64)
    mask = _layer_mask(k, n, masks)
    readout = plan.readout(max_slot)
    rpoly = np.uint64(REDUCTION_POLY[config.bits])
    seed = np.uint64(config.seed)

    def run(w0, w1, acc):
        K.temporal_kernel(
            k, zcol, zlo, lowbits, w0, w1,
            plan.tail, plan.eid, plan.src_grp, plan.src_ok,
            plan.grp_start, plan.grp_head, plan.grp_prev, n_groups,
            mask, readout, seed, ROLE_Y, config.bits, rpoly,
            x, buf_a, buf_b, acc,
        )

    acc = _run_sliced(run, W, n, config.workers)
    return SieveOutcome.from_acc(acc, k, config, words, time.perf_counter() - start)


def _precheck(n: int, k: int, shades: ShadeAssignment | None, config: SieveConfig) -> SieveOutcome | None:
    if k > n:
        return SieveOutcome.certain(n, f"k={k} exceeds n={n}")
    if shades is not None and shades.absent_colors:
        return SieveOutcome.certain(n, f"colors {list(shades.absent_colors)} absent from the graph")
    return None


def eval_temporal_sieve(
    g: TemporalGraph,
    k: int,
    max_ts: int | None,
    shades: ShadeAssignment,
    config: SieveConfig,
    coloring: VertexColoring | None = None,
    masks: dict | None = None,
    zcol: np.ndarray | None = None,
) -> SieveOutcome:
    """Evaluate the temporal walk recurrence sieved over all label subsets.

    ``masks`` optionally maps a layer l (1..k) to a boolean vertex mask; only
    masked-in vertices may occupy position l.  The edge model in ``config``
    selects plain, transition, delay or combined timing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pre = _precheck(g.n, k, shades, config)
    if pre is not None:
        return pre
    plan = temporal_plan(g, config.edge_model)
    if max_ts is None:
        max_ts = max(plan.max_slot if config.edge_model != "instant" else g.t, 1)
    if max_ts < 1:
        raise ValueError("max_ts must be >= 1")
    if zcol is None:
        if coloring is None:
            coloring = VertexColoring.uniform(g.n)
        zcol = shades.z_table(coloring)
    return _eval_plan(plan, zcol, k, max_ts, config, masks)


def eval_delay_sieve(
    g: TemporalGraph,
    k: int,
    max_ts: int | None,
    shades: ShadeAssignment,
    config: SieveConfig,
    coloring: VertexColoring | None = None,
) -> SieveOutcome:
    """Temporal sieve under transition times and/or vertex delays.

    An edge departing at i with transition e lands in slot i + e - 1; it may
    follow a walk that reached its tail v by slot i - delay(v).  With all
    transitions and delays equal to 1 this is the plain recurrence.
    """
    model = config.edge_model if config.edge_model != "instant" else "transition+delay"
    return eval_temporal_sieve(g, k, max_ts, shades, config.replace(edge_model=model), coloring)


def eval_edge_constrained_sieve(
    g: TemporalGraph,
    times,
    shades: ShadeAssignment,
    config: SieveConfig,
    coloring: VertexColoring | None = None,
) -> SieveOutcome:
    """Walks whose l-th edge carries exactly the prescribed timestamp j_l."""
    times = tuple(int(x) for x in times)
    if any(b <= a for a, b in zip(times, times[1:])):
        raise ValueError("prescribed timestamps must be strictly increasing")
    k = len(times) + 1
    pre = _precheck(g.n, k, shades, config)
    if pre is not None:
        return pre
    present = set(np.unique(g.ts).tolist())
    missing = [x for x in times if x not in present]
    if missing:
        return SieveOutcome.certain(g.n, f"timestamps {missing} absent from the graph")
    # k-1 strictly increasing edges drawn from k-1 distinct times must use each in order
    sub = g.select_edges(np.isin(g.ts, times))
    return eval_temporal_sieve(sub, k, g.t, shades, config.replace(edge_model="instant"), coloring)


def ordered_masks(coloring: VertexColoring, order) -> dict[int, np.ndarray]:
    return {pos: coloring.has_color(int(c)) for pos, c in enumerate(order, start=1)}


def eval_vertex_ordered_sieve(
    g: TemporalGraph,
    order,
    config: SieveConfig,
    coloring: VertexColoring,
    max_ts: int | None = None,
) -> SieveOutcome:
    """Temporal sieve with position l restricted to vertices of color c_l.

    Positions fix the colors, so only vertex-distinctness needs sieving: one
    shade set of size k shared by every vertex.
    """
    order = tuple(int(c) for c in order)
    k = len(order)
    present = coloring.present_colors()
    missing = sorted({c for c in order if c not in present})
    if missing:
        return SieveOutcome.certain(g.n, f"colors {missing} absent from the graph")
    shades = build_shades(MotifQuery.size(k), VertexColoring.uniform(g.n), config)
    return eval_temporal_sieve(
        g, k, max_ts, shades, config, VertexColoring.uniform(g.n), masks=ordered_masks(coloring, order)
    )


def _static_csr(arrivals: dict[str, np.ndarray], n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    head = arrivals["head"]
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(ptr, head + 1, 1)
    return np.cumsum(ptr), arrivals["tail"], arrivals["edge"].astype(np.int64)


def eval_static_sieve(
    gs: StaticProjection,
    k: int,
    shades: ShadeAssignment,
    config: SieveConfig,
    coloring: VertexColoring | None = None,
) -> SieveOutcome:
    """Timestamp-free walk recurrence; flags endpoints of colored k-paths."""
    pre = _precheck(gs.n, k, shades, config)
    if pre is not None:
        return pre
    coloring = coloring or VertexColoring.uniform(gs.n)
    zcol = shades.z_table(coloring)
    n = gs.n
    W, lowbits = _effective_lanes(k, config.lanes)
    words = k * n * W + 2 * n * W + n * k
    _check_cap(words, config)
    ptr, tail, eid = _static_csr(gs.arrivals, n)
    start = time.perf_counter()
    zlo = K.lane_low_table(zcol, W)
    x = np.zeros((n, W), dtype=np.uint64)
    layers = np.zeros((k, n, W), dtype=np.uint64)
    rpoly = np.uint64(REDUCTION_POLY[config.bits])
    seed = np.uint64(config.seed)

    def run(w0, w1, acc):
        K.static_kernel(k, zcol, zlo, lowbits, w0, w1, ptr, tail, eid, seed, ROLE_Y, config.bits, rpoly, x, layers, acc)

    acc = _run_sliced(run, W, n, config.workers)
    return SieveOutcome.from_acc(acc, k, config, words, time.perf_counter() - start)


def eval_junction_sieve(
    gs: StaticProjection,
    k: int,
    shades: ShadeAssignment,
    config: SieveConfig,
    coloring: VertexColoring | None = None,
) -> SieveOutcome:
    """Flags every vertex lying on some properly colored static k-path.

    R_u multiplies walks ending at u with walks leaving u (auxiliary y
    family); a multilinear product is a path through u.
    """
    pre = _precheck(gs.n, k, shades, config)
    if pre is not None:
        return pre
    coloring = coloring or VertexColoring.uniform(gs.n)
    zcol = shades.z_table(coloring)
    n = gs.n
    W, lowbits = _effective_lanes(k, config.lanes)
    words = 2 * k * n * W + 2 * n * W + n * k
    _check_cap(words, config)
    ptr, tail, eid = _static_csr(gs.arrivals, n)
    rptr, rtail, reid = _static_csr(gs.departures, n)
    start = time.perf_counter()
    zlo = K.lane_low_table(zcol, W)
    x = np.zeros((n, W), dtype=np.uint64)
    layers = np.zeros((k, n, W), dtype=np.uint64)
    sums = np.zeros((k, n, W), dtype=np.uint64)
    rpoly = np.uint64(REDUCTION_POLY[config.bits])
    seed = np.uint64(config.seed)

    def run(w0, w1, acc):
        K.junction_kernel(
            k, zcol, zlo, lowbits, w0, w1, ptr, tail, eid, rptr, rtail, reid,
            seed, ROLE_Y, ROLE_Y_AUX, config.bits, rpoly, x, layers, sums, acc,
        )

    acc = _run_sliced(run, W, n, config.workers)
    return SieveOutcome.from_acc(acc, k, config, words, time.perf_counter() - start)
