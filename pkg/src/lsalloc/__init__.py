"""k-ary cuckoo allocation with label-guided local-search insertion."""

from .core import (
    AllocationTable,
    InsertReport,
    Item,
    MoveStats,
    Outcome,
    UNREACHABLE,
    distances_to_free,
    insert_lsa,
    insert_lsa_capacity,
    insert_random_walk,
    new_table,
    stats,
)
from .engine import RunOutput, check_assignment, run_lsa, run_lsa_capacity, run_random_walk
from .graphio import BipartiteGraph, load_edge_list, write_edge_list
from .instances import InstanceSpec, choices_matrix, gen_instance
from .matching import MatchingResult, feasible, hopcroft_karp, match_lsa, match_lsa_sweep
from .results import CSV_COLUMNS, RunRecord, read_csv, write_csv
from .thresholds import ThresholdResult, solve_threshold

__version__ = "0.1.0"

__all__ = [
    "AllocationTable",
    "BipartiteGraph",
    "CSV_COLUMNS",
    "InsertReport",
    "InstanceSpec",
    "Item",
    "MatchingResult",
    "MoveStats",
    "Outcome",
    "RunOutput",
    "RunRecord",
    "ThresholdResult",
    "UNREACHABLE",
    "check_assignment",
    "choices_matrix",
    "distances_to_free",
    "feasible",
    "gen_instance",
    "hopcroft_karp",
    "insert_lsa",
    "insert_lsa_capacity",
    "insert_random_walk",
    "load_edge_list",
    "match_lsa",
    "match_lsa_sweep",
    "new_table",
    "read_csv",
    "run_lsa",
    "run_lsa_capacity",
    "run_random_walk",
    "solve_threshold",
    "stats",
    "write_csv",
    "write_edge_list",
]
