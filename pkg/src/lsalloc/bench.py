"""Experiment runners behind the CLI: instance sweeps, the capacity
variant, matching cap sweeps, and the invariant verification suite.

Every runner emits ``RunRecord`` rows in config order.  Runs are
replayable: instance i uses seed ``seed_base + i`` (the documented
splitting rule), and the per-purpose streams hang off that seed.
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import core
from .engine import check_assignment, run_lsa, run_lsa_capacity, run_random_walk
from .graphio import BipartiteGraph, load_edge_list
from .instances import InstanceSpec, choices_matrix, gen_instance
from .matching import feasible, hopcroft_karp, match_lsa
from .results import RunRecord
from .thresholds import solve_threshold

ABOVE_THRESHOLD_MAX_N = 10_000


@dataclass
class ExperimentConfig:
    """Carrier for one CLI invocation's parameters."""

    ns: list[int] = field(default_factory=list)
    k: int = 3
    cs: list[float] = field(default_factory=list)
    m: int | None = None
    m_range: tuple[int, int] | None = None
    s: int = 1
    seeds: int = 1
    seed_base: int = 0
    caps: list[int] = field(default_factory=list)
    algos: list[str] = field(default_factory=lambda: ["lsa", "rw"])
    max_moves: int | None = None
    one_based: bool = False
    distinct: bool = False
    trace: bool = False
    jobs: int = 1
    allow_above_threshold: bool = False


def _run_one(n, k, m, c_label, s, variant, seed, max_moves, distinct) -> RunRecord:
    spec = InstanceSpec(n=n, k=k, m=m, s=s, seed=seed, distinct=distinct)
    choices = choices_matrix(spec)
    algo = "rw" if variant == "rw" else "lsa"
    t0 = time.perf_counter_ns()
    if variant == "unit":
        out = run_lsa(n, choices, table_seed=seed)
    elif variant == "cap":
        out = run_lsa_capacity(n, choices, s, table_seed=seed)
    elif variant == "rw":
        out = run_random_walk(n, choices, max_moves if max_moves else n, seed=seed)
    else:
        raise ValueError(f"unknown engine variant {variant!r}")
    wall = time.perf_counter_ns() - t0
    if not check_assignment(choices, out.assignment, n, s):
        raise RuntimeError(f"invalid allocation from {algo} run (n={n}, seed={seed})")
    return RunRecord(
        n=n, k=k, c=c_label, s=s, algo=algo, seed=seed,
        total_moves=out.total_moves, max_moves=out.max_moves,
        max_label=out.max_label, label_sum=out.label_sum,
        outcome=out.outcome.value, wall_ns=wall,
    )


def _run_one_traced(n, k, m, c_label, s, variant, seed, max_moves, distinct) -> RunRecord:
    """Reference-engine run that prints eviction chains, one line per
    insertion, to stderr.  Matches the batch engine move for move."""
    from .streams import WALK_STREAM, stream_rng

    spec = InstanceSpec(n=n, k=k, m=m, s=s, seed=seed, distinct=distinct)
    table = core.new_table(n, s, seed=seed)
    walk_rng = stream_rng(seed, WALK_STREAM)
    algo = "rw" if variant == "rw" else "lsa"
    outcome = core.Outcome.PLACED
    t0 = time.perf_counter_ns()
    for item in gen_instance(spec):
        if variant != "rw":
            insert = core.insert_lsa if variant == "unit" else core.insert_lsa_capacity
            rep = insert(table, item, trace=True)
            chain = "".join(f"({v},{e if e is not None else '_'})" for v, e in rep.chain)
            print(f"item={item.id} moves={rep.moves} chain={chain}", file=sys.stderr)
        else:
            rep = core.insert_random_walk(table, item, max_moves if max_moves else n, walk_rng)
            print(f"item={item.id} moves={rep.moves}", file=sys.stderr)
        if rep.outcome is not core.Outcome.PLACED:
            outcome = rep.outcome
            break
    wall = time.perf_counter_ns() - t0
    st = core.stats(table)
    return RunRecord(
        n=n, k=k, c=c_label, s=s, algo=algo, seed=seed,
        total_moves=st.total_moves, max_moves=st.max_moves,
        max_label=st.max_label, label_sum=st.label_sum,
        outcome=outcome.value, wall_ns=wall,
    )


def _record_task(task: tuple) -> RunRecord:
    return _run_one(*task)


def _dispatch(tasks: list[tuple], config: ExperimentConfig) -> list[RunRecord]:
    if config.trace:
        return [_run_one_traced(*t) for t in tasks]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_record_task, tasks))
    return [_run_one(*t) for t in tasks]


def run_sweep_n(config: ExperimentConfig) -> list[RunRecord]:
    """Fixed k and c, varying n; one row per (n, seed, algo)."""
    if not config.ns:
        raise ValueError("sweep-n needs at least one n")
    if len(config.cs) != 1 or config.m is not None:
        raise ValueError("sweep-n needs exactly one density c (m is not supported)")
    if config.seeds < 1:
        raise ValueError("seeds must be >= 1")
    c = config.cs[0]
    tasks = []
    for n in config.ns:
        m = int(c * n)
        for i in range(config.seeds):
            seed = config.seed_base + i
            for algo in config.algos:
                variant = "rw" if algo == "rw" else "unit"
                tasks.append((n, config.k, m, c, 1, variant, seed, config.max_moves, config.distinct))
    return _dispatch(tasks, config)


def run_sweep_c(config: ExperimentConfig) -> list[RunRecord]:
    """Fixed n, ascending density list."""
    if len(config.ns) != 1:
        raise ValueError("sweep-c needs exactly one n")
    if not config.cs:
        raise ValueError("sweep-c needs at least one density")
    if sorted(config.cs) != config.cs:
        raise ValueError("sweep-c densities must be ascending")
    if config.seeds < 1:
        raise ValueError("seeds must be >= 1")
    n = config.ns[0]
    if config.k >= 3:
        c_star = solve_threshold(config.k).c_star
        if max(config.cs) >= c_star:
            if not config.allow_above_threshold:
                raise ValueError(
                    f"density {max(config.cs)} is at or above the threshold "
                    f"{c_star:.4f} for k={config.k}; pass --allow-above-threshold"
                )
            if n > ABOVE_THRESHOLD_MAX_N:
                raise ValueError(
                    f"above-threshold runs are limited to n <= {ABOVE_THRESHOLD_MAX_N} "
                    "(failure detection is quadratic)"
                )
    tasks = []
    for c in config.cs:
        m = int(c * n)
        for i in range(config.seeds):
            seed = config.seed_base + i
            for algo in config.algos:
                variant = "rw" if algo == "rw" else "unit"
                tasks.append((n, config.k, m, c, 1, variant, seed, config.max_moves, config.distinct))
    return _dispatch(tasks, config)


def run_capacity(config: ExperimentConfig) -> list[RunRecord]:
    """Capacity-s insertion across n; allocations are validity-checked."""
    if not config.ns:
        raise ValueError("capacity sweep needs at least one n")
    if config.s < 1:
        raise ValueError("capacity must be >= 1")
    if (len(config.cs) == 1) == (config.m is not None):
        raise ValueError("capacity sweep needs exactly one of c or m")
    if config.seeds < 1:
        raise ValueError("seeds must be >= 1")
    tasks = []
    for n in config.ns:
        m = config.m if config.m is not None else int(config.cs[0] * n)
        c_label = config.cs[0] if config.cs else m / n
        for i in range(config.seeds):
            seed = config.seed_base + i
            tasks.append((n, config.k, m, c_label, config.s, "cap", seed, None, config.distinct))
    return _dispatch(tasks, config)


def _uniform_degree(graph: BipartiteGraph) -> int:
    degrees = {len(a) for a in graph.adjacency if a}
    return degrees.pop() if len(degrees) == 1 else 0


def run_match(config: ExperimentConfig, edge_list_path: str) -> list[RunRecord]:
    """Cap sweep of the capped matcher plus one Hopcroft-Karp reference row.

    Schema mapping for matcher rows: s carries the move cap (0 for the
    reference row) and outcome carries ``size=<matched>``.
    """
    graph = load_edge_list(edge_list_path, one_based=config.one_based)
    caps = [cap if cap > 0 else graph.right_count for cap in config.caps]
    if not caps:
        raise ValueError("match needs at least one cap")
    k = _uniform_degree(graph)
    c = graph.left_count / graph.right_count if graph.right_count else 0.0
    rows = []
    for cap in caps:
        t0 = time.perf_counter_ns()
        res = match_lsa(graph, cap, config.seed_base)
        wall = time.perf_counter_ns() - t0
        rows.append(RunRecord(
            n=graph.right_count, k=k, c=c, s=cap, algo="lsa", seed=config.seed_base,
            total_moves=res.total_moves, max_moves=res.max_moves,
            max_label=res.max_label, label_sum=res.label_sum,
            outcome=f"size={res.size}", wall_ns=wall,
        ))
    t0 = time.perf_counter_ns()
    res = hopcroft_karp(graph)
    wall = time.perf_counter_ns() - t0
    rows.append(RunRecord(
        n=graph.right_count, k=k, c=c, s=0, algo="hk", seed=config.seed_base,
        total_moves=0, max_moves=0, max_label=0, label_sum=0,
        outcome=f"size={res.size}", wall_ns=wall,
    ))
    return rows


@dataclass
class VerifyReport:
    instances: int = 0
    insert_checks: int = 0
    prop1_violations: int = 0
    accounting_violations: int = 0
    feasibility_checks: int = 0
    feasibility_disagreements: int = 0
    oracle_feasible_exits: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.prop1_violations == 0
            and self.accounting_violations == 0
            and self.feasibility_disagreements == 0
        )

    def summary_lines(self) -> list[str]:
        return [
            f"instances:                 {self.instances}",
            f"label<=distance checks:    {self.insert_checks} ({self.prop1_violations} violations)",
            f"move accounting checks:    {self.instances} ({self.accounting_violations} violations)",
            f"feasibility agreements:    {self.feasibility_checks} ({self.feasibility_disagreements} disagreements)",
            f"oracle-feasible exits:     {self.oracle_feasible_exits}",
            f"verdict:                   {'PASS' if self.ok else 'FAIL'}",
        ]


def _verify_m_values(config: ExperimentConfig) -> list[int]:
    n = config.ns[0]
    if config.m_range is not None:
        lo, hi = config.m_range
        if lo > hi:
            raise ValueError(f"bad m range {lo}:{hi}")
        span = hi - lo + 1
        return [lo + (i % span) for i in range(config.seeds)]
    if config.m is not None:
        return [config.m] * config.seeds
    if len(config.cs) == 1:
        return [int(config.cs[0] * n)] * config.seeds
    raise ValueError("verify needs one of m, m-range, or a single c")


def run_verify(config: ExperimentConfig) -> VerifyReport:
    """Invariant suite on the reference engine: the label lower bound
    against the BFS distance oracle after every insertion, move
    accounting, and success/failure agreement with the matching oracle."""
    if len(config.ns) != 1:
        raise ValueError("verify needs exactly one n")
    if config.seeds < 1:
        raise ValueError("nothing to verify (seeds must be >= 1)")
    n = config.ns[0]
    report = VerifyReport()
    for i, m in enumerate(_verify_m_values(config)):
        spec = InstanceSpec(n=n, k=config.k, m=m, seed=config.seed_base + i, distinct=config.distinct)
        items = list(gen_instance(spec))
        table = core.new_table(n)
        success = True
        for item in items:
            rep = core.insert_lsa(table, item)
            dist = core.distances_to_free(table)
            report.insert_checks += 1
            if any(lab > d for lab, d in zip(table.labels, dist)):
                report.prop1_violations += 1
            if rep.outcome is not core.Outcome.PLACED:
                success = False
                break
        st = core.stats(table)
        if not (st.total_moves <= st.label_sum <= n * n):
            report.accounting_violations += 1
        feas = feasible(items, n, 1)
        report.feasibility_checks += 1
        if feas != success:
            report.feasibility_disagreements += 1
            if feas and not success:
                report.oracle_feasible_exits += 1
        report.instances += 1
    return report
