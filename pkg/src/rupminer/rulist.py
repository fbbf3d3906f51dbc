"""Recency-utility lists: one entry per supporting transaction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .dataset import Database, recency_table


class TotalOrder:
    """Ascending TWU, ties broken by ascending item id."""

    def __init__(self, twu: Mapping[int, int]):
        self.items = sorted(twu, key=lambda i: (twu[i], i))
        self.rank = {item: r for r, item in enumerate(self.items)}

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, item: int) -> bool:
        return item in self.rank

    def sort(self, items: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(items, key=self.rank.__getitem__))

    def precedes(self, a: int, b: int) -> bool:
        return self.rank[a] < self.rank[b]


def build_total_order(twu: Mapping[int, int]) -> TotalOrder:
    return TotalOrder(twu)


class RuEntry(NamedTuple):
    tid: int
    rec: float
    iu: int
    ru: int


@dataclass
class RuList:
    pattern: tuple[int, ...]
    tids: list[int] = field(default_factory=list)
    recs: list[float] = field(default_factory=list)
    ius: list[int] = field(default_factory=list)
    rus: list[int] = field(default_factory=list)
    re: float = 0.0
    iu: int = 0
    ru: int = 0

    def append(self, tid: int, rec: float, iu: int, ru: int) -> None:
        self.tids.append(tid)
        self.recs.append(rec)
        self.ius.append(iu)
        self.rus.append(ru)
        self.re += rec
        self.iu += iu
        self.ru += ru

    def __len__(self) -> int:
        return len(self.tids)

    @property
    def entries(self) -> list[RuEntry]:
        return [RuEntry(*e) for e in zip(self.tids, self.recs, self.ius, self.rus)]

    @property
    def last(self) -> int:
        return self.pattern[-1]

    def summarize(self) -> tuple[float, int, int]:
        return self.re, self.iu, self.ru

    def dump(self) -> str:
        """Debug text: one ``tid rec iu ru`` line per entry."""
        return "".join(f"{t} {r:.4f} {i} {u}\n" for t, r, i, u in zip(self.tids, self.recs, self.ius, self.rus))


def summarize(rulist: RuList) -> tuple[float, int, int]:
    return rulist.summarize()


def build_initial_rulists(db: Database, promising: Iterable[int], order: TotalOrder,
                          delta: float) -> dict[int, RuList]:
    """Single pass; items outside ``promising`` are dropped from every transaction."""
    keep = set(promising)
    rank = order.rank
    rec = recency_table(db.n, delta)
    lists = {i: RuList((i,)) for i in order.sort(keep)}
    for t in db.transactions:
        row = sorted(((rank[i], i, u) for i, u in zip(t.items, t.utilities) if i in keep), reverse=True)
        remaining = 0
        r = rec[t.tid]
        for _, item, u in row:
            lists[item].append(t.tid, r, u, remaining)
            remaining += u
    return lists


def join(prefix: RuList | None, xa: RuList, xb: RuList) -> RuList:
    """Two-pointer intersection of ``xa`` and ``xb``, both extensions of ``prefix``."""
    if xa.pattern[:-1] != xb.pattern[:-1]:
        raise ValueError(f"{xa.pattern} and {xb.pattern} do not share a prefix")
    has_prefix = prefix is not None and len(prefix.pattern) > 0
    if has_prefix and prefix.pattern != xa.pattern[:-1]:
        raise ValueError(f"prefix {prefix.pattern} does not match {xa.pattern}")
    if not has_prefix and len(xa.pattern) > 1:
        raise ValueError(f"prefix list required to join {xa.pattern} and {xb.pattern}")

    a_tids, b_tids = xa.tids, xb.tids
    a_recs, a_ius, b_ius, b_rus = xa.recs, xa.ius, xb.ius, xb.rus
    na, nb = len(a_tids), len(b_tids)
    if has_prefix:
        p_tids, p_ius = prefix.tids, prefix.ius
        np_ = len(p_tids)
    tids, recs, ius, rus = [], [], [], []
    re = 0.0
    i = j = k = 0
    while i < na and j < nb:
        ta, tb = a_tids[i], b_tids[j]
        if ta < tb:
            i += 1
        elif ta > tb:
            j += 1
        else:
            iu = a_ius[i] + b_ius[j]
            if has_prefix:
                while k < np_ and p_tids[k] < ta:
                    k += 1
                if k == np_ or p_tids[k] != ta:
                    raise ValueError(f"prefix {prefix.pattern} has no entry for tid {ta}")
                iu -= p_ius[k]
            tids.append(ta)
            recs.append(a_recs[i])
            re += a_recs[i]
            ius.append(iu)
            rus.append(b_rus[j])
            i += 1
            j += 1
    return RuList(xa.pattern + (xb.last,), tids, recs, ius, rus, re, sum(ius), sum(rus))
