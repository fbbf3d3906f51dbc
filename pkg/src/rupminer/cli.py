"""Command-line front end: ``rupminer mine|compare|gen``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dataset import (GeneratorParams, ParseError, generate_synthetic, parse_profit_table,
                      parse_transactions, parse_utility_format)
from .miner import VARIANTS, MinerConfig, mine, outdated_ratio, recency_ratio
from .report import RunReport, dumps, pattern_records, patterns_csv, stats_record


class CliError(Exception):
    pass


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not a fraction in [0, 1]")
    return value


def _delta(text: str) -> float:
    value = float(text)
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in (0, 1]")
    return value


def _non_negative(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--db", required=True, type=Path)
    p.add_argument("--format", choices=("native", "utility"), default="native")
    p.add_argument("--profits", type=Path)
    p.add_argument("--delta", type=_delta, required=True)
    p.add_argument("--min-rec", type=_non_negative, required=True)
    p.add_argument("--min-util", type=_fraction, default=0.0)
    p.add_argument("--abs-util", type=_non_negative, default=None,
                   help="absolute utility threshold, overrides --min-util")
    p.add_argument("--algo", choices=VARIANTS, default="rup2")
    p.add_argument("--out", type=Path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rupminer", description="Mine recent high-utility patterns.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine recent high-utility patterns")
    _add_data_flags(p)
    p.add_argument("--stats-out", type=Path)
    p.add_argument("--csv", action="store_true", help="write patterns as CSV instead of JSON")

    p = sub.add_parser("compare", help="count RHUPs against all HUPs")
    _add_data_flags(p)

    p = sub.add_parser("gen", help="generate a synthetic database")
    p.add_argument("--transactions", type=_positive_int, required=True)
    p.add_argument("--items", type=_positive_int, required=True)
    p.add_argument("--avg-len", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-db", type=Path, required=True)
    p.add_argument("--out-profits", type=Path, required=True)
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


def _write(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot write {path}: {e.strerror}") from None


def _parse(path: Path, parse, *extra):
    try:
        return parse(_read(path), *extra)
    except ParseError as e:
        raise CliError(f"{path}: {e}") from None


def _load(args):
    if args.format == "native":
        ptable = _parse(args.profits, parse_profit_table)
        return _parse(args.db, parse_transactions, ptable)
    return _parse(args.db, parse_utility_format)


def _config(args, min_re=None) -> MinerConfig:
    return MinerConfig(delta=args.delta, min_re=args.min_rec if min_re is None else min_re,
                       min_util=args.min_util, variant=args.algo, abs_util=args.abs_util)


def cmd_mine(args) -> int:
    db = _load(args)
    if db.n == 0:
        raise CliError(f"{args.db}: database is empty")
    patterns, stats = mine(db, _config(args))
    if args.csv:
        _write(args.out, patterns_csv(db, patterns))
    else:
        _write(args.out, dumps(pattern_records(db, patterns)) + "\n")
    if args.stats_out:
        _write(args.stats_out, dumps(stats_record(stats)) + "\n")
    print(f"{len(patterns)} patterns, {stats.visited_nodes} nodes visited", file=sys.stderr)
    return 0


def cmd_compare(args) -> int:
    db = _load(args)
    if db.n == 0:
        raise CliError(f"{args.db}: database is empty")
    config = _config(args)
    rhups, rstats = mine(db, config)
    hups, hstats = mine(db, _config(args, min_re=0.0))
    counts = {"rhups": len(rhups), "hups": len(hups)}
    if hups:
        counts["recency_ratio"] = recency_ratio(len(rhups), len(hups))
        counts["outdated_ratio"] = outdated_ratio(len(rhups), len(hups))
    else:
        counts["recency_ratio"] = counts["outdated_ratio"] = "undefined"
    report = RunReport(config, pattern_records(db, rhups),
                       {"rhups": stats_record(rstats), "hups": stats_record(hstats)}, counts)
    _write(args.out, report.to_json())
    return 0


def cmd_gen(args) -> int:
    params = GeneratorParams(args.transactions, args.items, args.avg_len, args.seed)
    db, ptable = generate_synthetic(params)
    _write(args.out_db, db.to_native_text())
    _write(args.out_profits, ptable.to_text())
    return 0


COMMANDS = {"mine": cmd_mine, "compare": cmd_compare, "gen": cmd_gen}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("mine", "compare") and args.format == "native" and args.profits is None:
        parser.error("--format native requires --profits")
    if args.command == "gen":
        try:
            GeneratorParams(args.transactions, args.items, args.avg_len, args.seed).validate()
        except ValueError as e:
            parser.error(str(e))
    try:
        return COMMANDS[args.command](args)
    except CliError as e:
        print(f"rupminer: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
