"""Synthetic temporal graphs: configuration-model regular and power-law
families with uniform timestamps and colors, plus planted matches."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .graph import TemporalGraph, TemporalPath, VertexColoring, from_edges
from .query import MotifQuery

log = logging.getLogger(__name__)


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    family: str = "regular"  # "regular" or "powerlaw"
    n: int = 1000
    d: int = 20  # regular degree
    D: float = 20.0  # power-law mean degree
    w: int = 100  # power-law support size
    alpha: float = -1.0
    t: int = 100
    colors: int = 5
    seed: int = 0
    directed: bool = False
    plant: int = 0
    plant_motif: tuple[int, ...] | None = None
    repair_rounds: int = 50

    def __post_init__(self):
        if self.family not in ("regular", "powerlaw"):
            raise InfeasibleSpec(f"unknown family {self.family!r}")
        if self.n < 1 or self.t < 1 or self.colors < 1:
            raise InfeasibleSpec("n, t and the color range must be >= 1")
        if self.family == "regular":
            if not 0 <= self.d < self.n:
                raise InfeasibleSpec("regular degree must satisfy 0 <= d < n")
            if (self.d * self.n) % 2:
                raise InfeasibleSpec("d * n must be even")
        else:
            if self.alpha >= 0:
                raise InfeasibleSpec("alpha must be negative")
            if self.w < 1 or self.D < 1:
                raise InfeasibleSpec("w and D must be >= 1")
            if self.D >= self.n - 1:
                raise InfeasibleSpec("mean degree D must be below n - 1")
            if self.w > self.n - 1:
                raise InfeasibleSpec("support size w must be below n")
        if self.plant and not self.plant_motif:
            raise InfeasibleSpec("planting needs a motif")


@dataclass
class Generated:
    graph: TemporalGraph
    coloring: VertexColoring
    planted: list[TemporalPath] = field(default_factory=list)
    residual_collisions: int = 0


def _rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64([seed, stream]))


def configuration_pairs(degrees: np.ndarray, rng: np.random.Generator, rounds: int = 50) -> tuple[np.ndarray, int]:
    """Random simple pairing of degree stubs.

    Self-loops and repeated pairs are repaired by swapping an endpoint with a
    random other pair; whatever is still bad after ``rounds`` sweeps is
    dropped.  Returns (pairs, dropped count).
    """
    degrees = np.asarray(degrees, dtype=np.int64)
    if degrees.sum() % 2:
        raise InfeasibleSpec("degree sum must be even")
    stubs = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2).copy()
    n = max(int(degrees.size), 1)

    def key(a, b):
        return min(a, b) * n + max(a, b)

    for _ in range(rounds):
        lo, hi = np.minimum(pairs[:, 0], pairs[:, 1]), np.maximum(pairs[:, 0], pairs[:, 1])
        keys = lo * n + hi
        bad = pairs[:, 0] == pairs[:, 1]
        _, first, counts = np.unique(keys, return_index=True, return_counts=True)
        dup = np.ones(keys.size, dtype=bool)
        dup[first] = False
        bad |= dup
        bad_idx = np.nonzero(bad)[0]
        if bad_idx.size == 0:
            return pairs, 0
        present = dict(zip(*np.unique(keys, return_counts=True)))
        for i in bad_idx.tolist():
            a, b = int(pairs[i, 0]), int(pairs[i, 1])
            j = int(rng.integers(pairs.shape[0]))
            if j == i:
                continue
            c, d = int(pairs[j, 0]), int(pairs[j, 1])
            if rng.integers(2):
                c, d = d, c
            if a == c or b == d:
                continue
            k1, k2 = key(a, c), key(b, d)
            if k1 == k2 or present.get(k1, 0) or present.get(k2, 0):
                continue
            for old in (key(a, b), key(c, d)):
                present[old] -= 1
            present[k1] = 1
            present[k2] = 1
            pairs[i] = (a, c)
            pairs[j] = (b, d)
    lo, hi = np.minimum(pairs[:, 0], pairs[:, 1]), np.maximum(pairs[:, 0], pairs[:, 1])
    keys = lo * n + hi
    _, first = np.unique(keys, return_index=True)
    good = np.zeros(keys.size, dtype=bool)
    good[first] = True
    good &= pairs[:, 0] != pairs[:, 1]
    dropped = int((~good).sum())
    if dropped:
        log.warning("configuration model: dropped %d residual colliding pairs", dropped)
    return pairs[good], dropped


def powerlaw_support(n: int, D: float, w: int, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Support points and vertex counts whose mean degree is closest to D."""

    def shape(dmax: int):
        if w == 1:
            pts = np.array([dmax], dtype=np.int64)
        else:
            pts = np.unique(np.round(np.geomspace(1, dmax, w)).astype(np.int64))
        p = pts.astype(float) ** alpha
        p /= p.sum()
        raw = p * n
        cnt = np.floor(raw).astype(np.int64)
        # largest remainders take the leftover vertices
        short = n - int(cnt.sum())
        if short:
            cnt[np.argsort(-(raw - cnt), kind="stable")[:short]] += 1
        return pts, cnt

    def mean(dmax: int) -> float:
        pts, cnt = shape(dmax)
        return float((pts * cnt).sum()) / n

    lo, hi = max(1, int(np.floor(D))), n - 1
    if mean(lo) >= D:
        hi = lo
    while lo < hi:
        mid = (lo + hi) // 2
        if mean(mid) < D:
            lo = mid + 1
        else:
            hi = mid
    best = min({lo, max(lo - 1, 1)}, key=lambda x: abs(mean(x) - D))
    return shape(best)


def powerlaw_degrees(n: int, D: float, w: int, alpha: float, rng: np.random.Generator) -> np.ndarray:
    pts, cnt = powerlaw_support(n, D, w, alpha)
    deg = np.repeat(pts, cnt)
    rng.shuffle(deg)
    target = int(round(D * n))
    target -= target % 2
    diff = target - int(deg.sum())
    # spread the remaining +-1 corrections over random vertices
    step = 1 if diff > 0 else -1
    order = rng.permutation(n)
    i = 0
    guard = 0
    while diff != 0 and guard < 4 * n + abs(diff) * 4:
        v = order[i % n]
        nd = deg[v] + step
        if 1 <= nd <= n - 1:
            deg[v] = nd
            diff -= step
        i += 1
        guard += 1
    if diff:
        raise InfeasibleSpec("cannot reach the requested degree sum")
    return deg


def _assemble(spec: GeneratorSpec, pairs: np.ndarray, rng: np.random.Generator):
    m = pairs.shape[0]
    ts = rng.integers(1, spec.t + 1, size=m)
    src, dst = pairs[:, 0], pairs[:, 1]
    if spec.directed:
        flip = rng.integers(0, 2, size=m).astype(bool)
        src, dst = np.where(flip, dst, src), np.where(flip, src, dst)
    colors = rng.integers(1, spec.colors + 1, size=spec.n)
    edges = np.stack([src, dst, ts], axis=1)
    return edges, colors


def _build(spec: GeneratorSpec, degrees: np.ndarray) -> Generated:
    pairs, dropped = configuration_pairs(degrees, _rng(spec.seed, 1), spec.repair_rounds)
    edges, colors = _assemble(spec, pairs, _rng(spec.seed, 2))
    g, c = from_edges(spec.n, edges.tolist(), colors.tolist(), directed=spec.directed, t=spec.t)
    g.t = spec.t
    out = Generated(g, c, residual_collisions=dropped)
    if spec.plant:
        query = MotifQuery.colors(spec.plant_motif)
        g2, c2, planted = plant_matches(g, c, query, spec.plant, spec.seed)
        out = Generated(g2, c2, planted, dropped)
    return out


def gen_regular(spec: GeneratorSpec) -> Generated:
    """d-regular configuration-model temporal graph."""
    if spec.family != "regular":
        raise InfeasibleSpec("gen_regular needs family='regular'")
    return _build(spec, np.full(spec.n, spec.d, dtype=np.int64))


def gen_powerlaw(spec: GeneratorSpec) -> Generated:
    """Power-law configuration-model temporal graph with degree sum ~ D n."""
    if spec.family != "powerlaw":
        raise InfeasibleSpec("gen_powerlaw needs family='powerlaw'")
    return _build(spec, powerlaw_degrees(spec.n, spec.D, spec.w, spec.alpha, _rng(spec.seed, 0)))


def generate(spec: GeneratorSpec) -> Generated:
    return gen_regular(spec) if spec.family == "regular" else gen_powerlaw(spec)


def plant_matches(
    g: TemporalGraph,
    coloring: VertexColoring,
    query: MotifQuery,
    count: int,
    seed: int,
    order=None,
) -> tuple[TemporalGraph, VertexColoring, list[TemporalPath]]:
    """Add ``count`` vertex-disjoint temporal paths realizing the query.

    Each path gets k-1 distinct uniform timestamps in increasing order and
    its vertices are recolored in the given order (or a random arrangement
    of the multiset).
    """
    k = query.k
    if count < 1:
        raise InfeasibleSpec("plant count must be >= 1")
    if count * k > g.n:
        raise InfeasibleSpec(f"need {count * k} disjoint vertices, graph has {g.n}")
    if k - 1 > g.t:
        raise InfeasibleSpec("not enough distinct timestamps for a planted path")
    rng = _rng(seed, 3)
    colors = [c for c, m in sorted(query.counts.items()) for _ in range(m)]
    verts = rng.permutation(g.n)[: count * k].reshape(count, k)
    base = coloring.base.copy()
    new_edges = []
    planted = []
    for row in verts:
        seq = list(order) if order is not None else list(rng.permutation(colors))
        times = np.sort(rng.choice(np.arange(1, g.t + 1), size=k - 1, replace=False))
        for v, c in zip(row, seq):
            base[v] = int(c)
        path_edges = [(int(a), int(b), int(t)) for a, b, t in zip(row[:-1], row[1:], times)]
        new_edges.extend(path_edges)
        planted.append(TemporalPath.from_edges(path_edges) if path_edges else TemporalPath.single(int(row[0])))
    edges = list(zip(g.src.tolist(), g.dst.tolist(), g.ts.tolist())) + new_edges
    g2, _ = from_edges(g.n, edges, None, directed=g.directed, t=g.t)
    g2.t = g.t
    return g2, VertexColoring(base), planted


def write_witnesses(paths, stream) -> None:
    for p in paths:
        stream.write(" ".join(f"{u} {v} {t}" for u, v, t in p.edges) + "\n")


def read_witnesses(stream) -> list[TemporalPath]:
    out = []
    for line in stream:
        vals = [int(x) for x in line.split()]
        if vals:
            out.append(TemporalPath.from_edges([vals[i : i + 3] for i in range(0, len(vals), 3)]))
    return out
