"""Exhaustive ground truth for small databases.

Every itemset that occurs in some transaction is scored straight from the
definitions, with no pruning and no vertical lists.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .dataset import Database, compute_item_twu, recency_table, total_utility
from .miner import RECENCY_EPS, PatternResult, canonical_key
from .rulist import build_total_order

MAX_ITEMS = 20


@dataclass
class PatternTruth:
    items: tuple[int, ...]
    utility: int
    recency: float
    twu: int
    support_tids: list[int]


def enumerate_all(db: Database, delta: float, max_items: int = MAX_ITEMS) -> list[PatternTruth]:
    longest = max((len(t.items) for t in db.transactions), default=0)
    if longest > max_items:
        raise ValueError(f"transaction with {longest} items exceeds the oracle guard of {max_items}")
    rec = recency_table(db.n, delta)
    table: dict[frozenset, PatternTruth] = {}
    for t in db.transactions:
        util = dict(zip(t.items, t.utilities))
        tu = t.tu
        for k in range(1, len(t.items) + 1):
            for combo in combinations(sorted(t.items), k):
                key = frozenset(combo)
                truth = table.get(key)
                if truth is None:
                    truth = table[key] = PatternTruth(combo, 0, 0.0, 0, [])
                truth.utility += sum(util[i] for i in combo)
                truth.recency += rec[t.tid]
                truth.twu += tu
                truth.support_tids.append(t.tid)
    return list(table.values())


def brute_rhups(db: Database, delta: float, min_re: float, min_util: float,
                abs_util: float | None = None) -> list[PatternResult]:
    min_abs = abs_util if abs_util is not None else min_util * total_utility(db)
    order = build_total_order(compute_item_twu(db))
    out = [
        PatternResult(order.sort(p.items), p.utility, p.recency)
        for p in enumerate_all(db, delta)
        if p.utility >= min_abs and p.recency >= min_re - RECENCY_EPS
    ]
    out.sort(key=canonical_key(order))
    return out
