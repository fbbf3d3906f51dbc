"""Estimated utility co-occurrence structure (pairwise TWU)."""
from __future__ import annotations

from collections import defaultdict
from itertools import combinations
from typing import Iterable

from .dataset import Database
from .rulist import TotalOrder


class Eucs:
    """Sparse symmetric map of 2-itemset TWU values.

    Keys are ``(a, b)`` with ``a`` before ``b`` in the total order; pairs
    that never co-occur are absent and read as 0.
    """

    def __init__(self, order: TotalOrder):
        self.order = order
        self.pairs: dict[tuple[int, int], int] = {}

    def key(self, a: int, b: int) -> tuple[int, int]:
        return (a, b) if self.order.rank[a] < self.order.rank[b] else (b, a)

    def pair_twu(self, a: int, b: int) -> int:
        return self.pairs.get(self.key(a, b), 0)

    def __len__(self) -> int:
        return len(self.pairs)

    def to_csv(self, labels: list[str] | None = None) -> str:
        name = (lambda i: labels[i]) if labels else str
        rank = self.order.rank
        rows = sorted(self.pairs.items(), key=lambda kv: (rank[kv[0][0]], rank[kv[0][1]]))
        return "a,b,twu\n" + "".join(f"{name(a)},{name(b)},{v}\n" for (a, b), v in rows)


def build_eucs(db: Database, promising: Iterable[int], order: TotalOrder) -> Eucs:
    keep = set(promising)
    rank = order.rank
    acc: dict[tuple[int, int], int] = defaultdict(int)
    for t in db.transactions:
        row = sorted((i for i in t.items if i in keep), key=rank.__getitem__)
        if len(row) < 2:
            continue
        tu = t.tu
        for pair in combinations(row, 2):
            acc[pair] += tu
    eucs = Eucs(order)
    eucs.pairs = dict(acc)
    return eucs


def eucp_pass(a: int, b: int, min_util_abs: float, eucs: Eucs) -> bool:
    """False when no itemset containing both ``a`` and ``b`` can be high-utility."""
    return eucs.pair_twu(a, b) >= min_util_abs
