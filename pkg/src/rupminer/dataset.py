"""Quantitative temporal transaction databases.

Transactions are kept in chronological order and their 1-based position
(the tid) is the only time axis used for decay.  Utilities are integers,
recencies are floats.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Mapping, Sequence

import numpy as np


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass
class ProfitTable:
    labels: list[str] = field(default_factory=list)
    profits: list[int] = field(default_factory=list)
    index: dict[str, int] = field(default_factory=dict)

    def add(self, label: str, profit: int) -> int:
        if label in self.index:
            raise ValueError(f'duplicate item "{label}"')
        if profit < 0:
            raise ValueError(f'negative profit for item "{label}"')
        self.index[label] = len(self.labels)
        self.labels.append(label)
        self.profits.append(profit)
        return self.index[label]

    def profit(self, label: str) -> int:
        return self.profits[self.index[label]]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.labels, self.profits))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self.index

    def to_text(self) -> str:
        return "".join(f"{l} {p}\n" for l, p in zip(self.labels, self.profits))


@dataclass(frozen=True)
class Transaction:
    tid: int
    items: tuple[int, ...]
    utilities: tuple[int, ...]
    # None when the input carried utilities directly
    quantities: tuple[int, ...] | None = None

    @property
    def tu(self) -> int:
        return sum(self.utilities)

    def __contains__(self, item: int) -> bool:
        return item in self.items

    def utility_of(self, item: int) -> int:
        try:
            return self.utilities[self.items.index(item)]
        except ValueError:
            raise KeyError(f"item {item} not in transaction {self.tid}") from None


@dataclass
class Database:
    transactions: list[Transaction]
    labels: list[str]
    ptable: ProfitTable | None = None

    @property
    def n(self) -> int:
        return len(self.transactions)

    @property
    def m(self) -> int:
        return len(self.labels)

    def item_id(self, label: str) -> int:
        return self.labels.index(label)

    def ids(self, labels: Iterable[str]) -> tuple[int, ...]:
        lookup = {l: i for i, l in enumerate(self.labels)}
        return tuple(lookup[l] for l in labels)

    def names(self, items: Iterable[int]) -> list[str]:
        return [self.labels[i] for i in items]

    def head(self, k: int) -> Database:
        return Database(self.transactions[:k], self.labels, self.ptable)

    def to_native_text(self) -> str:
        if any(t.quantities is None for t in self.transactions):
            raise ValueError("database has no quantities; use to_utility_text()")
        out = []
        for t in self.transactions:
            out.append(" ".join(f"{self.labels[i]}:{q}" for i, q in zip(t.items, t.quantities)))
        return "\n".join(out) + ("\n" if out else "")

    def to_utility_text(self) -> str:
        out = []
        for t in self.transactions:
            names = " ".join(self.labels[i] for i in t.items)
            utils = " ".join(str(u) for u in t.utilities)
            out.append(f"{names}:{t.tu}:{utils}")
        return "\n".join(out) + ("\n" if out else "")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_int(token: str, what: str, lineno: int) -> int:
    if not re.fullmatch(r"[+-]?\d+", token):
        raise ParseError(f"{what} {token!r} is not an integer", lineno)
    return int(token)


def parse_profit_table(text: str) -> ProfitTable:
    table = ProfitTable()
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected '<label> <profit>', got {line!r}", lineno)
        label, raw = parts
        profit = _parse_int(raw, "profit", lineno)
        if profit < 0:
            raise ParseError(f'negative profit {profit} for item "{label}"', lineno)
        if label in table:
            raise ParseError(f'duplicate item "{label}"', lineno)
        table.add(label, profit)
    return table


def _merge(pairs: list[tuple[int, int]]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    merged: dict[int, int] = {}
    for item, value in pairs:
        merged[item] = merged.get(item, 0) + value
    return tuple(merged), tuple(merged.values())


def _check_timestamp(token: str, last: datetime | None, lineno: int) -> datetime:
    try:
        stamp = datetime.fromisoformat(token[1:])
    except ValueError:
        raise ParseError(f"bad timestamp {token!r}", lineno) from None
    if last is not None and stamp < last:
        raise ParseError(f"timestamp {token[1:]} is earlier than the previous transaction", lineno)
    return stamp


def parse_transactions(text: str, ptable: ProfitTable) -> Database:
    """Parse ``label:qty`` lines; an optional leading ``@<iso-datetime>``
    token is checked for chronological order and otherwise ignored."""
    transactions = []
    last_stamp = None
    for lineno, line in _lines(text):
        tokens = line.split()
        if tokens[0].startswith("@"):
            last_stamp = _check_timestamp(tokens[0], last_stamp, lineno)
            tokens = tokens[1:]
            if not tokens:
                raise ParseError("transaction has no items", lineno)
        pairs = []
        for tok in tokens:
            label, sep, raw = tok.rpartition(":")
            if not sep or not label:
                raise ParseError(f"expected '<label>:<qty>', got {tok!r}", lineno)
            qty = _parse_int(raw, "quantity", lineno)
            if qty <= 0:
                raise ParseError(f'quantity {qty} of item "{label}" must be positive', lineno)
            if label not in ptable:
                raise ParseError(f'unknown item "{label}"', lineno)
            pairs.append((ptable.index[label], qty))
        items, qtys = _merge(pairs)
        utils = tuple(q * ptable.profits[i] for i, q in zip(items, qtys))
        transactions.append(Transaction(len(transactions) + 1, items, utils, qtys))
    return Database(transactions, list(ptable.labels), ptable)


def parse_utility_format(text: str) -> Database:
    """Parse ``<labels>:<tu>:<utilities>`` lines (the SPMF utility format)."""
    index: dict[str, int] = {}
    labels: list[str] = []
    transactions = []
    for lineno, line in _lines(text):
        parts = line.split(":")
        if len(parts) != 3:
            raise ParseError(f"expected '<items>:<tu>:<utilities>', got {line!r}", lineno)
        names = parts[0].split()
        stated = _parse_int(parts[1].strip(), "transaction utility", lineno)
        utils = [_parse_int(u, "utility", lineno) for u in parts[2].split()]
        if not names:
            raise ParseError("transaction has no items", lineno)
        if len(names) != len(utils):
            raise ParseError(f"{len(names)} items but {len(utils)} utilities", lineno)
        if any(u < 0 for u in utils):
            raise ParseError("negative utility", lineno)
        if stated != sum(utils):
            raise ParseError(f"stated transaction utility {stated} != sum of utilities {sum(utils)}", lineno)
        pairs = []
        for name, u in zip(names, utils):
            if name not in index:
                index[name] = len(labels)
                labels.append(name)
            pairs.append((index[name], u))
        items, merged = _merge(pairs)
        transactions.append(Transaction(len(transactions) + 1, items, merged))
    return Database(transactions, labels)


def transaction_recency(n: int, q: int, delta: float) -> float:
    if not 1 <= q <= n:
        raise ValueError(f"tid {q} outside 1..{n}")
    if not 0 < delta <= 1:
        raise ValueError(f"decay factor {delta} outside (0, 1]")
    return (1.0 - delta) ** (n - q)


def recency_table(n: int, delta: float) -> list[float]:
    """Recency of every tid, indexed by tid (slot 0 unused)."""
    return [0.0] + [transaction_recency(n, q, delta) for q in range(1, n + 1)]


def item_utility(item: int, t: Transaction) -> int:
    return t.utility_of(item)


def pattern_utility(items: Iterable[int], db: Database | Sequence[Transaction]) -> int:
    transactions = db.transactions if isinstance(db, Database) else db
    wanted = set(items)
    if not wanted:
        raise ValueError("pattern must be non-empty")
    total = 0
    for t in transactions:
        if wanted.issubset(t.items):
            total += sum(u for i, u in zip(t.items, t.utilities) if i in wanted)
    return total


def transaction_utility(t: Transaction) -> int:
    return t.tu


def total_utility(db: Database) -> int:
    return sum(t.tu for t in db.transactions)


def compute_item_twu(db: Database) -> dict[int, int]:
    twu = dict.fromkeys(range(db.m), 0)
    for t in db.transactions:
        tu = t.tu
        for i in t.items:
            twu[i] += tu
    return twu


def compute_item_recency(db: Database, delta: float) -> dict[int, float]:
    rec = recency_table(db.n, delta)
    out = dict.fromkeys(range(db.m), 0.0)
    for t in db.transactions:
        for i in t.items:
            out[i] += rec[t.tid]
    return out


@dataclass(frozen=True)
class GeneratorParams:
    n_transactions: int
    n_items: int
    avg_transaction_length: int
    seed: int = 0
    quantity_range: tuple[int, int] = (1, 5)
    profit_range: tuple[int, int] = (1, 1000)

    def validate(self) -> None:
        for name in ("n_transactions", "n_items", "avg_transaction_length"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if self.avg_transaction_length > self.n_items:
            raise ValueError("avg_transaction_length cannot exceed n_items")
        for name in ("quantity_range", "profit_range"):
            lo, hi = getattr(self, name)
            if not 1 <= lo <= hi:
                raise ValueError(f"{name} must satisfy 1 <= low <= high")


def _lognormal_ints(rng: np.random.Generator, size: int, lo: int, hi: int, sigma: float = 0.5) -> np.ndarray:
    mu = math.log((lo + hi) / 2)
    return np.clip(np.rint(rng.lognormal(mu, sigma, size)), lo, hi).astype(np.int64)


def generate_synthetic(params: GeneratorParams) -> tuple[Database, ProfitTable]:
    """Random database with log-normal quantities and profits.

    Transaction lengths are Poisson around the average; items are drawn
    without replacement from a Zipf-like popularity profile so that some
    itemsets co-occur often, as in Quest-style data.
    """
    params.validate()
    rng = np.random.default_rng(params.seed)
    ptable = ProfitTable()
    for i, p in enumerate(_lognormal_ints(rng, params.n_items, *params.profit_range)):
        ptable.add(str(i + 1), int(p))

    popularity = 1.0 / np.arange(1, params.n_items + 1) ** 0.8
    popularity = rng.permutation(popularity)
    popularity /= popularity.sum()

    lengths = np.clip(rng.poisson(params.avg_transaction_length, params.n_transactions), 1, params.n_items)
    transactions = []
    for tid, length in enumerate(lengths, start=1):
        items = rng.choice(params.n_items, size=int(length), replace=False, p=popularity)
        items = tuple(int(i) for i in np.sort(items))
        qtys = tuple(int(q) for q in _lognormal_ints(rng, len(items), *params.quantity_range))
        utils = tuple(q * ptable.profits[i] for i, q in zip(items, qtys))
        transactions.append(Transaction(tid, items, utils, qtys))
    return Database(transactions, list(ptable.labels), ptable), ptable


def running_example() -> tuple[Database, ProfitTable]:
    """The ten-transaction e-commerce database used throughout the tests."""
    ptable = parse_profit_table(RUNNING_EXAMPLE_PROFITS)
    return parse_transactions(RUNNING_EXAMPLE_DB, ptable), ptable


RUNNING_EXAMPLE_PROFITS = "a 6\nb 1\nc 10\nd 7\ne 5\n"
RUNNING_EXAMPLE_DB = """\
@2016-01-02T09:30 a:2 c:1 d:2
@2016-01-02T10:20 b:1 d:2
@2016-01-03T19:35 b:2 c:1 e:3
@2016-01-03T20:20 a:3 c:2
@2016-01-05T10:00 a:1 b:3 d:4 e:1
@2016-01-05T13:45 b:4 e:1
@2016-01-06T09:10 a:3 c:3 d:2
@2016-01-06T09:44 b:2 d:3
@2016-01-06T16:10 c:1 d:2 e:2
@2016-01-08T10:35 a:2 c:2 d:1
"""


def as_mapping(db: Database, values: Mapping[int, object]) -> dict[str, object]:
    """Re-key an item-id map by label."""
    return {db.labels[i]: v for i, v in values.items()}
