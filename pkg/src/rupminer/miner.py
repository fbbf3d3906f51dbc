"""Depth-first RHUP search over the recency-utility enumeration tree."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable

from .dataset import Database, compute_item_recency, compute_item_twu, total_utility
from .eucs import Eucs, build_eucs, eucp_pass
from .rulist import RuList, TotalOrder, build_initial_rulists, build_total_order, join

# absolute slack on recency comparisons
RECENCY_EPS = 1e-9

VARIANTS = ("baseline", "rup1", "rup2")


@dataclass(frozen=True)
class MinerConfig:
    delta: float
    min_re: float
    min_util: float
    variant: str = "rup2"
    # absolute money threshold; overrides min_util when set
    abs_util: float | None = None

    def __post_init__(self):
        if not 0 < self.delta <= 1:
            raise ValueError(f"delta must be in (0, 1], got {self.delta}")
        if self.min_re < 0:
            raise ValueError(f"min_re must be >= 0, got {self.min_re}")
        if not 0 <= self.min_util <= 1:
            raise ValueError(f"min_util must be a fraction in [0, 1], got {self.min_util}")
        if self.abs_util is not None and self.abs_util < 0:
            raise ValueError(f"abs_util must be >= 0, got {self.abs_util}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")

    @property
    def use_eucp(self) -> bool:
        return self.variant in ("rup1", "rup2")

    @property
    def use_list_check(self) -> bool:
        return self.variant == "rup2"

    def min_util_abs(self, tu: int) -> float:
        return self.abs_util if self.abs_util is not None else self.min_util * tu


@dataclass(frozen=True)
class PatternResult:
    items: tuple[int, ...]
    utility: int
    recency: float


@dataclass
class MiningStats:
    visited_nodes: int = 0
    rulists_built: int = 0
    eucp_skips: int = 0
    recency_prunes: int = 0
    ub_prunes: int = 0
    empty_list_skips: int = 0
    promising_items: int = 0
    elapsed: float = 0.0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["elapsed_ms"] = d.pop("elapsed") * 1000.0
        return d


def canonical_key(order: TotalOrder) -> Callable[[PatternResult], tuple]:
    """Sort key: length first, then lexicographic in the total order."""
    rank = order.rank
    return lambda p: (len(p.items), tuple(rank[i] for i in p.items))


def filter_promising_items(db: Database, config: MinerConfig):
    """Items whose TWU and recency both clear the thresholds."""
    twu = compute_item_twu(db)
    rec = compute_item_recency(db, config.delta)
    min_abs = config.min_util_abs(total_utility(db))
    keep = {i for i in twu if twu[i] >= min_abs and rec[i] >= config.min_re - RECENCY_EPS}
    return keep, twu, rec


def rhup_search(prefix: RuList | None, extensions: list[RuList], config: MinerConfig,
                min_util_abs: float, eucs: Eucs | None, stats: MiningStats,
                out: list[PatternResult], trace: list | None = None) -> None:
    """Explore every extension of ``prefix`` depth-first, appending RHUPs to ``out``.

    Uses an explicit stack so depth is not bounded by the interpreter.  When
    ``trace`` is given, ``(event, pattern)`` pairs are appended to it, with
    event one of visit, recency_prune, ub_prune, eucp_skip, list_skip.
    """
    min_re = config.min_re - RECENCY_EPS
    check_pairs = config.use_eucp and eucs is not None
    check_lists = config.use_list_check
    stack = [(prefix, extensions, 0)]
    while stack:
        parent, exts, idx = stack.pop()
        if idx >= len(exts):
            continue
        stack.append((parent, exts, idx + 1))

        xa = exts[idx]
        stats.visited_nodes += 1
        if trace is not None:
            trace.append(("visit", xa.pattern))
        if len(xa) and xa.iu >= min_util_abs and xa.re >= min_re:
            out.append(PatternResult(xa.pattern, xa.iu, xa.re))

        if xa.re < min_re:
            stats.recency_prunes += 1
            if trace is not None:
                trace.append(("recency_prune", xa.pattern))
            continue
        if xa.iu + xa.ru < min_util_abs:
            stats.ub_prunes += 1
            if trace is not None:
                trace.append(("ub_prune", xa.pattern))
            continue

        children = []
        a = xa.last
        for xb in exts[idx + 1:]:
            if check_pairs and not eucp_pass(a, xb.last, min_util_abs, eucs):
                stats.eucp_skips += 1
                if trace is not None:
                    trace.append(("eucp_skip", xa.pattern + (xb.last,)))
                continue
            xab = join(parent, xa, xb)
            stats.rulists_built += 1
            if check_lists and (len(xab) == 0 or xab.re < min_re):
                stats.empty_list_skips += 1
                if trace is not None:
                    trace.append(("list_skip", xab.pattern))
                continue
            children.append(xab)
        if children:
            stack.append((xa, children, 0))


def mine(db: Database, config: MinerConfig,
         trace: list | None = None) -> tuple[list[PatternResult], MiningStats]:
    start = time.perf_counter()
    stats = MiningStats()
    min_abs = config.min_util_abs(total_utility(db))

    promising, twu, _ = filter_promising_items(db, config)
    order = build_total_order({i: twu[i] for i in promising})
    stats.promising_items = len(order)
    lists = build_initial_rulists(db, promising, order, config.delta)
    stats.rulists_built = len(lists)
    eucs = build_eucs(db, promising, order) if config.use_eucp else None

    results: list[PatternResult] = []
    rhup_search(None, [lists[i] for i in order], config, min_abs, eucs, stats, results, trace)
    results.sort(key=canonical_key(order))
    stats.elapsed = time.perf_counter() - start
    return results, stats


def recency_ratio(rhups: int, hups: int) -> float:
    """Share of high-utility patterns that are also recent, in percent."""
    if hups <= 0:
        raise ValueError("recency ratio is undefined when there are no HUPs")
    if rhups > hups:
        raise ValueError(f"more RHUPs ({rhups}) than HUPs ({hups})")
    return 100.0 * rhups / hups


def outdated_ratio(rhups: int, hups: int) -> float:
    return 100.0 - recency_ratio(rhups, hups)
