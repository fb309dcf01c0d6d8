"""Temporal graph data model, ingestion, projection and witness checking."""

from __future__ import annotations

import io
import logging
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .query import MotifQuery

log = logging.getLogger(__name__)


class GraphFormatError(ValueError):
    """Malformed graph or colors input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None, source: str = "graph"):
        self.line = line
        self.source = source
        where = f"{source} line {line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


def _csr(keys: np.ndarray, n: int) -> np.ndarray:
    """Row pointer for an array already sorted by ``keys`` in [0, n)."""
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(ptr, keys + 1, 1)
    return np.cumsum(ptr)


class TemporalGraph:
    """Immutable temporal graph with normalized timestamps 1..t.

    Edges are stored once (undirected edges as given, mirrored only in the
    adjacency indices).  ``edge_ids`` are stable across restrictions so that
    edge-indexed random values agree between a graph and its subgraphs.
    For directed graphs an edge (u, v, i) is traversed from u to v and
    ``N_i(u)`` means the in-neighbors of u at time i.
    """

    def __init__(
        self,
        n: int,
        src,
        dst,
        ts,
        t: int | None = None,
        directed: bool = False,
        edge_ids=None,
        transit=None,
        delay=None,
        labels: Sequence | None = None,
        ts_values=None,
    ):
        self.n = int(n)
        self.src = np.ascontiguousarray(src, dtype=np.int64)
        self.dst = np.ascontiguousarray(dst, dtype=np.int64)
        self.ts = np.ascontiguousarray(ts, dtype=np.int64)
        if not (self.src.shape == self.dst.shape == self.ts.shape):
            raise ValueError("edge arrays must have equal length")
        self.directed = bool(directed)
        self.t = int(t) if t is not None else (int(self.ts.max()) if self.ts.size else 0)
        self.edge_ids = (
            np.arange(self.src.size, dtype=np.int64)
            if edge_ids is None
            else np.ascontiguousarray(edge_ids, dtype=np.int64)
        )
        self.transit = None if transit is None else np.ascontiguousarray(transit, dtype=np.int64)
        self.delay = None if delay is None else np.ascontiguousarray(delay, dtype=np.int64)
        self.labels = list(labels) if labels is not None else None
        self.ts_values = None if ts_values is None else np.asarray(ts_values)
        self.dropped: dict[str, int] = {}
        if self.src.size:
            if self.src.min() < 0 or self.dst.min() < 0 or max(self.src.max(), self.dst.max()) >= self.n:
                raise ValueError("edge endpoint outside [0, n)")
            if self.ts.min() < 1 or self.ts.max() > self.t:
                raise ValueError("timestamp outside [1, t]")

    @property
    def m(self) -> int:
        return int(self.src.size)

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"TemporalGraph(n={self.n}, m={self.m}, t={self.t}, {kind})"

    def label(self, u: int):
        return self.labels[u] if self.labels is not None else u

    def transit_array(self) -> np.ndarray:
        if self.transit is None:
            return np.ones(self.m, dtype=np.int64)
        return self.transit

    def delay_array(self) -> np.ndarray:
        if self.delay is None:
            return np.ones(self.n, dtype=np.int64)
        return self.delay

    def _oriented(self):
        """All traversal orientations as (tail, head, ts, edge index)."""
        idx = np.arange(self.m, dtype=np.int64)
        if self.directed:
            return self.src, self.dst, self.ts, idx
        return (
            np.concatenate([self.src, self.dst]),
            np.concatenate([self.dst, self.src]),
            np.concatenate([self.ts, self.ts]),
            np.concatenate([idx, idx]),
        )

    @cached_property
    def arrivals(self) -> dict[str, np.ndarray]:
        """Traversals v -> u grouped by (ts, u); the per-timestamp adjacency."""
        tail, head, ts, idx = self._oriented()
        order = np.lexsort((tail, head, ts))
        return {"head": head[order], "tail": tail[order], "ts": ts[order], "edge": idx[order]}

    @cached_property
    def out_adjacency(self) -> dict[str, np.ndarray]:
        """Per-vertex departures sorted by (ts, neighbor)."""
        tail, head, ts, idx = self._oriented()
        order = np.lexsort((head, ts, tail))
        return {"ptr": _csr(tail[order], self.n), "nbr": head[order], "ts": ts[order], "edge": idx[order]}

    @cached_property
    def in_adjacency(self) -> dict[str, np.ndarray]:
        """Per-vertex arrivals sorted by (descending ts, neighbor)."""
        tail, head, ts, idx = self._oriented()
        order = np.lexsort((tail, -ts, head))
        return {"ptr": _csr(head[order], self.n), "nbr": tail[order], "ts": ts[order], "edge": idx[order]}

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int, int]]:
        tail, head, ts, _ = self._oriented()
        return frozenset(zip(tail.tolist(), head.tolist(), ts.tolist()))

    def neighbors(self, u: int, i: int) -> list[int]:
        arr = self.arrivals
        lo = np.searchsorted(arr["ts"], i, side="left")
        hi = np.searchsorted(arr["ts"], i, side="right")
        heads = arr["head"][lo:hi]
        return sorted(arr["tail"][lo:hi][heads == u].tolist())

    def degree_counts(self) -> np.ndarray:
        tail, _, _, _ = self._oriented()
        return np.bincount(tail, minlength=self.n)

    def replace(self, **changes) -> "TemporalGraph":
        fields = dict(
            n=self.n, src=self.src, dst=self.dst, ts=self.ts, t=self.t, directed=self.directed,
            edge_ids=self.edge_ids, transit=self.transit, delay=self.delay, labels=self.labels,
            ts_values=self.ts_values,
        )
        fields.update(changes)
        return TemporalGraph(**fields)

    def select_edges(self, mask: np.ndarray, t: int | None = None) -> "TemporalGraph":
        return self.replace(
            src=self.src[mask], dst=self.dst[mask], ts=self.ts[mask],
            edge_ids=self.edge_ids[mask],
            transit=None if self.transit is None else self.transit[mask],
            t=self.t if t is None else t,
        )


@dataclass(frozen=True, eq=False)
class VertexColoring:
    """Colors per vertex: a base color in [1..q] plus an optional wildcard.

    When ``wildcard`` is set every vertex also carries that color, so each
    color set is ``{base[u], wildcard}``.
    """

    base: np.ndarray
    wildcard: int | None = None

    def __post_init__(self):
        base = np.ascontiguousarray(self.base, dtype=np.int64)
        if base.size and base.min() < 1:
            raise ValueError("colors must be >= 1")
        object.__setattr__(self, "base", base)

    @classmethod
    def uniform(cls, n: int, color: int = 1) -> "VertexColoring":
        return cls(np.full(n, color, dtype=np.int64))

    @property
    def n(self) -> int:
        return int(self.base.size)

    @property
    def q(self) -> int:
        return int(self.base.max()) if self.base.size else 0

    def colors_of(self, u: int) -> frozenset[int]:
        c = int(self.base[u])
        return frozenset((c, self.wildcard)) if self.wildcard is not None else frozenset((c,))

    def has_color(self, color: int) -> np.ndarray:
        if self.wildcard is not None and color == self.wildcard:
            return np.ones(self.n, dtype=bool)
        return self.base == color

    def present_colors(self) -> frozenset[int]:
        present = set(np.unique(self.base).tolist())
        if self.wildcard is not None and self.n:
            present.add(self.wildcard)
        return frozenset(present)

    def with_wildcard(self, avoid=()) -> "VertexColoring":
        """Every vertex also gets a fresh color above q and above ``avoid``."""
        return VertexColoring(self.base, max([self.q, *avoid]) + 1)

    def recolored(self, changes: dict[int, int]) -> "VertexColoring":
        base = self.base.copy()
        for u, c in changes.items():
            base[u] = c
        return VertexColoring(base, self.wildcard)

    def subset(self, vertices: np.ndarray) -> "VertexColoring":
        return VertexColoring(self.base[vertices], self.wildcard)


@dataclass(frozen=True, eq=False)
class StaticProjection:
    """Timestamp-free view of a temporal graph.

    ``back_ptr``/``back_edges`` map static edge s to the temporal edge
    indices ``back_edges[back_ptr[s]:back_ptr[s+1]]`` it summarizes.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    directed: bool
    back_ptr: np.ndarray
    back_edges: np.ndarray

    @property
    def m(self) -> int:
        return int(self.src.size)

    def temporal_edges(self, s: int) -> np.ndarray:
        return self.back_edges[self.back_ptr[s] : self.back_ptr[s + 1]]

    @cached_property
    def arrivals(self) -> dict[str, np.ndarray]:
        idx = np.arange(self.m, dtype=np.int64)
        if self.directed:
            tail, head, eidx = self.src, self.dst, idx
        else:
            tail = np.concatenate([self.src, self.dst])
            head = np.concatenate([self.dst, self.src])
            eidx = np.concatenate([idx, idx])
        order = np.lexsort((tail, head))
        return {"head": head[order], "tail": tail[order], "edge": eidx[order]}

    @cached_property
    def departures(self) -> dict[str, np.ndarray]:
        """Reverse orientation: traversals u -> v grouped by u."""
        idx = np.arange(self.m, dtype=np.int64)
        if self.directed:
            tail, head, eidx = self.dst, self.src, idx
        else:
            tail = np.concatenate([self.dst, self.src])
            head = np.concatenate([self.src, self.dst])
            eidx = np.concatenate([idx, idx])
        order = np.lexsort((tail, head))
        return {"head": head[order], "tail": tail[order], "edge": eidx[order]}


@dataclass(frozen=True)
class TemporalPath:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_edges(cls, edges: Sequence[Sequence[int]]) -> "TemporalPath":
        edges = tuple((int(u), int(v), int(t)) for u, v, t in edges)
        if not edges:
            raise ValueError("a path given by edges needs at least one edge")
        return cls(tuple([edges[0][0]] + [e[1] for e in edges]), edges)

    @classmethod
    def single(cls, u: int) -> "TemporalPath":
        return cls((int(u),), ())

    @property
    def k(self) -> int:
        return len(self.vertices)

    @property
    def max_ts(self) -> int:
        return max((e[2] for e in self.edges), default=0)

    def as_lists(self) -> list[list[int]]:
        return [list(e) for e in self.edges]


@dataclass(frozen=True)
class PathVerdict:
    ok: bool
    clause: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


def _color_sets_match(color_sets: list[frozenset[int]], counts: dict[int, int]) -> bool:
    """Can each vertex pick one of its colors so the picks equal ``counts``?"""
    slots = [c for c, m in sorted(counts.items()) for _ in range(m)]
    if len(slots) != len(color_sets):
        return False
    owner = [-1] * len(slots)

    def augment(i: int, seen: set[int]) -> bool:
        for s, c in enumerate(slots):
            if c in color_sets[i] and s not in seen:
                seen.add(s)
                if owner[s] < 0 or augment(owner[s], seen):
                    owner[s] = i
                    return True
        return False

    return all(augment(i, set()) for i in range(len(color_sets)))


def validate_path(
    g: TemporalGraph,
    coloring: VertexColoring | None,
    p: TemporalPath,
    query: MotifQuery,
    edge_model: str = "instant",
) -> PathVerdict:
    """Check a witness against the graph and the query; report the first failure."""
    k = len(p.vertices)
    if k != query.k:
        return PathVerdict(False, f"path has {k} vertices, query needs {query.k}")
    if len(p.edges) != k - 1:
        return PathVerdict(False, "edge count is not vertex count minus one")
    if any(not 0 <= v < g.n for v in p.vertices):
        return PathVerdict(False, "vertex out of range")
    for i, (u, v, _) in enumerate(p.edges):
        if (u, v) != (p.vertices[i], p.vertices[i + 1]):
            return PathVerdict(False, f"edge {i} does not join consecutive vertices")
    if len(set(p.vertices)) != k:
        return PathVerdict(False, "not a path: repeated vertex")
    present = g.edge_set
    for e in p.edges:
        if e not in present:
            return PathVerdict(False, f"edge {e} not in graph")
    if not _timing_ok(g, p, edge_model):
        return PathVerdict(False, "timestamps not increasing")
    if query.times is not None and tuple(e[2] for e in p.edges) != query.times:
        return PathVerdict(False, "edge timestamps differ from the prescribed tuple")
    if query.has_colors:
        if coloring is None:
            return PathVerdict(False, "query has colors but no coloring given")
        sets = [coloring.colors_of(v) for v in p.vertices]
        if query.order is not None:
            for pos, (cs, want) in enumerate(zip(sets, query.order)):
                if want not in cs:
                    return PathVerdict(False, f"color order violated at position {pos}")
        elif not _color_sets_match(sets, query.counts):
            return PathVerdict(False, "colors do not match the query multiset")
    return PathVerdict(True)


def _timing_ok(g: TemporalGraph, p: TemporalPath, edge_model: str) -> bool:
    times = [e[2] for e in p.edges]
    if edge_model == "instant":
        return all(b > a for a, b in zip(times, times[1:]))
    # arrival slot = departure + transit - 1; next departure >= arrival + delay(v)
    eps = {}
    transit = g.transit_array()
    tail, head, ts, idx = g._oriented()
    for a, b, c, i in zip(tail.tolist(), head.tolist(), ts.tolist(), idx.tolist()):
        eps[(a, b, c)] = int(transit[i])
    delay = g.delay_array()
    use_transit = edge_model in ("transition", "transition+delay")
    use_delay = edge_model in ("delay", "transition+delay")
    for e, nxt in zip(p.edges, p.edges[1:]):
        arrive = e[2] + (eps[e] - 1 if use_transit else 0)
        wait = int(delay[e[1]]) if use_delay else 1
        if nxt[2] < arrive + wait:
            return False
    return True


# --------------------------------------------------------------------------- io


def _open_lines(stream) -> Iterable[str]:
    if stream is None:
        return []
    if isinstance(stream, (str, os.PathLike)):
        with open(stream) as fh:
            return fh.read().splitlines()
    if isinstance(stream, io.IOBase) or hasattr(stream, "read"):
        return stream.read().splitlines()
    return list(stream)


def _parse_label(tok: str):
    try:
        v = int(tok)
    except ValueError:
        return tok
    return v


def _label_key(label):
    return (0, label, "") if isinstance(label, int) else (1, 0, label)


def load_graph(edge_stream, colors_stream=None, directed: bool = False) -> tuple[TemporalGraph, VertexColoring]:
    """Parse "u v ts [transit]" records and optional "u c" color records.

    Vertex labels map to dense ids in sorted label order; raw timestamps map to
    dense ranks 1..t (ties share a rank).  Self-loops and repeated (u, v, ts)
    records are dropped and counted in ``graph.dropped``.
    """
    raw: list[tuple] = []
    has_transit = False
    for lineno, line in enumerate(_open_lines(edge_stream), start=1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) not in (3, 4):
            raise GraphFormatError(f"expected 'u v ts [transit]', got {line.strip()!r}", lineno)
        try:
            tsv = float(body[2])
        except ValueError:
            raise GraphFormatError(f"timestamp {body[2]!r} is not a number", lineno) from None
        if tsv < 0:
            raise GraphFormatError(f"negative timestamp {body[2]}", lineno)
        eps = 1
        if len(body) == 4:
            has_transit = True
            try:
                eps = int(body[3])
            except ValueError:
                raise GraphFormatError(f"transit time {body[3]!r} is not an integer", lineno) from None
            if eps < 1:
                raise GraphFormatError("transit time must be >= 1", lineno)
        raw.append((_parse_label(body[0]), _parse_label(body[1]), int(np.floor(tsv)), eps))

    color_recs: list[tuple] = []
    for lineno, line in enumerate(_open_lines(colors_stream), start=1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 2:
            raise GraphFormatError(f"expected 'u c', got {line.strip()!r}", lineno, "colors")
        try:
            c = int(body[1])
        except ValueError:
            raise GraphFormatError(f"color {body[1]!r} is not an integer", lineno, "colors") from None
        if c < 1:
            raise GraphFormatError("colors must be >= 1", lineno, "colors")
        color_recs.append((_parse_label(body[0]), c))

    labels = sorted({r[0] for r in raw} | {r[1] for r in raw} | {r[0] for r in color_recs}, key=_label_key)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)

    self_loops = sum(1 for r in raw if r[0] == r[1])
    raw = [r for r in raw if r[0] != r[1]]
    if self_loops:
        log.warning("dropped %d self-loop records", self_loops)

    src = np.array([index[r[0]] for r in raw], dtype=np.int64)
    dst = np.array([index[r[1]] for r in raw], dtype=np.int64)
    raw_ts = np.array([r[2] for r in raw], dtype=np.int64)
    transit = np.array([r[3] for r in raw], dtype=np.int64)
    ts_values, ts = np.unique(raw_ts, return_inverse=True)
    ts = ts.astype(np.int64) + 1
    if not directed:
        lo, hi = np.minimum(src, dst), np.maximum(src, dst)
        src, dst = lo, hi
    g, dups = _dedup(n, src, dst, ts, transit, directed)
    g.labels = labels
    g.ts_values = ts_values
    if not has_transit:
        g.transit = None
    g.dropped = {"self_loops": self_loops, "duplicates": dups}
    if dups:
        log.warning("dropped %d duplicate edge records", dups)

    base = np.ones(n, dtype=np.int64)
    for lab, c in color_recs:
        base[index[lab]] = c
    return g, VertexColoring(base)


def _dedup(n, src, dst, ts, transit, directed):
    if src.size == 0:
        return TemporalGraph(n, src, dst, ts, t=0, directed=directed, transit=transit), 0
    keys = np.stack([ts, src, dst], axis=1)
    _, first = np.unique(keys, axis=0, return_index=True)
    first = np.sort(first)
    order = np.lexsort((dst[first], src[first], ts[first]))
    keep = first[order]
    t = int(ts.max())
    g = TemporalGraph(n, src[keep], dst[keep], ts[keep], t=t, directed=directed, transit=transit[keep])
    return g, int(src.size - keep.size)


def load_delays(stream, g: TemporalGraph) -> TemporalGraph:
    """Attach per-vertex delays from "u delta" records (unlisted vertices keep 1)."""
    index = {lab: i for i, lab in enumerate(g.labels)} if g.labels is not None else None
    delay = g.delay_array().copy()
    for lineno, line in enumerate(_open_lines(stream), start=1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if len(body) != 2:
            raise GraphFormatError(f"expected 'u delta', got {line.strip()!r}", lineno, "delays")
        lab = _parse_label(body[0])
        u = index.get(lab) if index is not None else lab
        if u is None or not 0 <= u < g.n:
            raise GraphFormatError(f"unknown vertex {body[0]!r}", lineno, "delays")
        try:
            d = int(body[1])
        except ValueError:
            raise GraphFormatError(f"delay {body[1]!r} is not an integer", lineno, "delays") from None
        if d < 0:
            raise GraphFormatError("delay must be >= 0", lineno, "delays")
        delay[u] = d
    return g.replace(delay=delay)


def write_graph(g: TemporalGraph, stream, raw_timestamps: bool = False) -> None:
    transit = g.transit
    for i, (u, v, t) in enumerate(zip(g.src.tolist(), g.dst.tolist(), g.ts.tolist())):
        tv = int(g.ts_values[t - 1]) if raw_timestamps and g.ts_values is not None else t
        line = f"{g.label(u)} {g.label(v)} {tv}"
        if transit is not None:
            line += f" {int(transit[i])}"
        stream.write(line + "\n")


def write_colors(g: TemporalGraph, coloring: VertexColoring, stream) -> None:
    for u, c in enumerate(coloring.base.tolist()):
        stream.write(f"{g.label(u)} {c}\n")


def from_edges(
    n: int,
    edges: Iterable[Sequence[int]],
    colors: Sequence[int] | None = None,
    directed: bool = False,
    t: int | None = None,
) -> tuple[TemporalGraph, VertexColoring]:
    """Build a graph from already-dense (u, v, ts[, transit]) tuples."""
    edges = [tuple(int(x) for x in e) for e in edges]
    for e in edges:
        if e[2] < 1:
            raise ValueError("timestamps start at 1")
    edges = [e for e in edges if e[0] != e[1]]
    src = np.array([e[0] for e in edges], dtype=np.int64)
    dst = np.array([e[1] for e in edges], dtype=np.int64)
    ts = np.array([e[2] for e in edges], dtype=np.int64)
    has_transit = any(len(e) > 3 for e in edges)
    transit = np.array([e[3] if len(e) > 3 else 1 for e in edges], dtype=np.int64)
    if not directed:
        src, dst = np.minimum(src, dst), np.maximum(src, dst)
    g, _ = _dedup(n, src, dst, ts, transit, directed)
    if not has_transit:
        g.transit = None
    if t is not None:
        g.t = max(int(t), g.t)
    coloring = VertexColoring(np.asarray(colors, dtype=np.int64)) if colors is not None else VertexColoring.uniform(n)
    if coloring.n != n:
        raise ValueError("coloring length differs from n")
    return g, coloring


# ----------------------------------------------------------------- transforms


def project_static(g: TemporalGraph) -> StaticProjection:
    if g.m == 0:
        empty = np.zeros(0, dtype=np.int64)
        return StaticProjection(g.n, empty, empty, g.directed, np.zeros(1, dtype=np.int64), empty)
    pairs = np.stack([g.src, g.dst], axis=1)
    uniq, inverse = np.unique(pairs, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    ptr = _csr(inverse[order], uniq.shape[0])
    return StaticProjection(
        g.n,
        np.ascontiguousarray(uniq[:, 0]),
        np.ascontiguousarray(uniq[:, 1]),
        g.directed,
        ptr,
        order.astype(np.int64),
    )


def restrict_to(g: TemporalGraph, keep=None, max_ts: int | None = None) -> TemporalGraph:
    """Induced temporal subgraph on ``keep`` with timestamps <= ``max_ts``.

    Vertex ids are preserved; removed vertices become isolated.
    """
    max_ts = g.t if max_ts is None else int(max_ts)
    if not 1 <= max_ts <= max(g.t, 1):
        raise ValueError(f"max_ts must lie in [1, {g.t}]")
    mask = g.ts <= max_ts
    if keep is not None:
        alive = np.zeros(g.n, dtype=bool)
        alive[np.asarray(list(keep) if not isinstance(keep, np.ndarray) else keep, dtype=np.int64)] = True
        mask &= alive[g.src] & alive[g.dst]
    return g.select_edges(mask, t=max_ts)


def compact(g: TemporalGraph, coloring: VertexColoring, keep) -> tuple[TemporalGraph, VertexColoring, np.ndarray]:
    """Induced subgraph on ``keep`` with vertices renumbered 0..|keep|-1.

    Returns the new graph, its coloring and ``vmap`` with vmap[new] = old.
    """
    vmap = np.unique(np.asarray(list(keep) if not isinstance(keep, np.ndarray) else keep, dtype=np.int64))
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[vmap] = np.arange(vmap.size)
    mask = (new_id[g.src] >= 0) & (new_id[g.dst] >= 0)
    sub = g.select_edges(mask)
    labels = [g.label(int(u)) for u in vmap] if g.labels is not None else None
    sub = sub.replace(
        n=int(vmap.size), src=new_id[sub.src], dst=new_id[sub.dst], labels=labels,
        delay=None if g.delay is None else g.delay[vmap],
    )
    return sub, coloring.subset(vmap), vmap


def lift_path(p: TemporalPath, vmap: np.ndarray) -> TemporalPath:
    """Map a witness found on a compacted graph back to original ids."""
    return TemporalPath(
        tuple(int(vmap[v]) for v in p.vertices),
        tuple((int(vmap[u]), int(vmap[v]), t) for u, v, t in p.edges),
    )
