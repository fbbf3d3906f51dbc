"""Mining recent high-utility patterns from temporal transaction databases."""
from .dataset import (Database, GeneratorParams, ParseError, ProfitTable, Transaction,
                      generate_synthetic, parse_profit_table, parse_transactions,
                      parse_utility_format, running_example)
from .eucs import Eucs, build_eucs, eucp_pass
from .miner import MinerConfig, MiningStats, PatternResult, mine, recency_ratio
from .oracle import brute_rhups, enumerate_all
from .rulist import RuList, build_initial_rulists, build_total_order, join

__version__ = "0.1.0"
