"""Motif queries: what a sought temporal path must look like."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

SIZE_ONLY = "size-only"
MULTISET = "multiset"
ORDERED = "ordered-colors"
EC_MULTISET = "ordered-timestamps+multiset"
EC_SIZE = "ordered-timestamps-only"

KINDS = (SIZE_ONLY, MULTISET, ORDERED, EC_MULTISET, EC_SIZE)


@dataclass(frozen=True)
class MotifQuery:
    kind: str
    k: int
    multiset: tuple[tuple[int, int], ...] = ()
    order: tuple[int, ...] | None = None
    times: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown query kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("query size k must be >= 1")
        if self.multiset:
            if sum(c for _, c in self.multiset) != self.k:
                raise ValueError("multiset size does not match k")
            if any(c < 1 or col < 1 for col, c in self.multiset):
                raise ValueError("colors and multiplicities must be positive")
        if self.order is not None and len(self.order) != self.k:
            raise ValueError("ordered query needs exactly k colors")
        if self.times is not None:
            if len(self.times) != self.k - 1:
                raise ValueError("edge-constrained query needs k-1 timestamps")
            if any(b <= a for a, b in zip(self.times, self.times[1:])):
                raise ValueError("timestamps must be strictly increasing")
            if self.times and self.times[0] < 1:
                raise ValueError("timestamps start at 1")

    @classmethod
    def size(cls, k: int) -> "MotifQuery":
        return cls(SIZE_ONLY, k)

    @classmethod
    def colors(cls, colors: Iterable[int]) -> "MotifQuery":
        cnt = Counter(int(c) for c in colors)
        return cls(MULTISET, sum(cnt.values()), tuple(sorted(cnt.items())))

    @classmethod
    def ordered(cls, order: Sequence[int]) -> "MotifQuery":
        order = tuple(int(c) for c in order)
        cnt = Counter(order)
        return cls(ORDERED, len(order), tuple(sorted(cnt.items())), order=order)

    @classmethod
    def edge_constrained(cls, times: Sequence[int], colors: Iterable[int] | None = None) -> "MotifQuery":
        times = tuple(int(x) for x in times)
        if colors is None:
            return cls(EC_SIZE, len(times) + 1, times=times)
        cnt = Counter(int(c) for c in colors)
        return cls(EC_MULTISET, sum(cnt.values()), tuple(sorted(cnt.items())), times=times)

    @property
    def counts(self) -> dict[int, int]:
        if not self.multiset:
            return {1: self.k}
        return dict(self.multiset)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.counts)

    @property
    def has_colors(self) -> bool:
        return self.kind not in (SIZE_ONLY, EC_SIZE)

    def as_multiset_query(self) -> "MotifQuery":
        """Drop ordering/time constraints, keep the color multiset."""
        return MotifQuery(MULTISET, self.k, tuple(sorted(self.counts.items())))

    def with_extra(self, color: int, count: int = 1) -> "MotifQuery":
        cnt = Counter(self.counts)
        cnt[color] += count
        return MotifQuery(MULTISET, self.k + count, tuple(sorted(cnt.items())))

    def describe(self) -> str:
        parts = [f"k={self.k}"]
        if self.has_colors:
            parts.append("colors=" + ",".join(f"{c}^{m}" if m > 1 else str(c) for c, m in self.multiset))
        if self.order is not None:
            parts.append("order=" + ",".join(map(str, self.order)))
        if self.times is not None:
            parts.append("times=" + ",".join(map(str, self.times)))
        return " ".join(parts)
