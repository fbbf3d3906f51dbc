"""Deterministic serialization of mining runs."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .dataset import Database
from .miner import MinerConfig, MiningStats, PatternResult


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and every float printed with 6 decimals.

    Re-parsing the output and dumping again gives the same bytes.
    """
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return f"{obj:.6f}"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {dumps(v, indent, _level + 1)}"
                          for k, v in sorted(obj.items()))
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        body = ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def pattern_records(db: Database, patterns: list[PatternResult]) -> list[dict]:
    return [{"items": db.names(p.items), "utility": p.utility, "recency": float(p.recency)}
            for p in patterns]


def patterns_csv(db: Database, patterns: list[PatternResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["items", "utility", "recency"])
    for p in patterns:
        writer.writerow([" ".join(db.names(p.items)), p.utility, f"{p.recency:.6f}"])
    return buf.getvalue()


def stats_record(stats: MiningStats) -> dict:
    return stats.as_dict()


@dataclass
class RunReport:
    config: MinerConfig
    patterns: list[dict]
    stats: dict
    counts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        cfg = {
            "delta": float(self.config.delta),
            "min_re": float(self.config.min_re),
            "min_util": float(self.config.min_util),
            "abs_util": None if self.config.abs_util is None else float(self.config.abs_util),
            "variant": self.config.variant,
        }
        return {"config": cfg, "patterns": self.patterns, "stats": self.stats, "counts": self.counts}

    def to_json(self) -> str:
        return dumps(self.to_dict()) + "\n"
