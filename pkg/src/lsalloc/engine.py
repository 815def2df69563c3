"""Array-based batch kernels for benchmark-scale runs.

Same algorithms as ``lsalloc.core``, compiled with numba over flat int64
arrays and driven by the same PCG64 streams, so a batch run reproduces the
reference implementation move for move (the test suite asserts exact
agreement on labels, assignments, and per-item move counts).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import Outcome
from .streams import VICTIM_STREAM, WALK_STREAM, stream_rng

_HUGE = np.iinfo(np.int64).max


@dataclass
class RunOutput:
    """Whole-instance result: counters plus the final table arrays."""

    outcome: Outcome
    placed: int
    total_moves: int
    max_moves: int
    label_sum: int
    max_label: int
    failed_item: int
    labels: np.ndarray
    assignment: np.ndarray      # item -> location, -1 if not placed
    moves_per_item: np.ndarray


@njit(cache=True)
def _lsa_unit(labels, resident, choices, exit_label, moves_out, assign):
    m, k = choices.shape
    total = 0
    maxm = 0
    for i in range(m):
        cur = i
        moves = 0
        while True:
            best_j = 0
            best = labels[choices[cur, 0]]
            for j in range(1, k):
                lab = labels[choices[cur, j]]
                if lab < best:
                    best = lab
                    best_j = j
            v = choices[cur, best_j]
            if best >= exit_label:
                total += moves
                if moves > maxm:
                    maxm = moves
                moves_out[i] = moves
                return 1, i, total, maxm
            nl = _HUGE
            for j in range(k):
                if j != best_j:
                    lab = labels[choices[cur, j]]
                    if lab < nl:
                        nl = lab
            labels[v] = nl + 1
            occ = resident[v]
            resident[v] = cur
            assign[cur] = v
            moves += 1
            if occ < 0:
                break
            assign[occ] = -1
            cur = occ
        total += moves
        if moves > maxm:
            maxm = moves
        moves_out[i] = moves
    return 0, -1, total, maxm


@njit(cache=True)
def _lsa_cap(labels, slots, counts, choices, s, exit_label, rng, moves_out, assign):
    m, k = choices.shape
    total = 0
    maxm = 0
    for i in range(m):
        cur = i
        moves = 0
        while True:
            # lexicographic min of (label, full flag); scan order keeps the
            # lowest position on full ties
            best_j = 0
            c = choices[cur, 0]
            best = labels[c]
            best_full = 1 if counts[c] >= s else 0
            for j in range(1, k):
                c = choices[cur, j]
                lab = labels[c]
                full = 1 if counts[c] >= s else 0
                if lab < best or (lab == best and full < best_full):
                    best = lab
                    best_full = full
                    best_j = j
            v = choices[cur, best_j]
            if best >= exit_label:
                total += moves
                if moves > maxm:
                    maxm = moves
                moves_out[i] = moves
                return 1, i, total, maxm
            if counts[v] >= s:
                nl = _HUGE
                for j in range(k):
                    if j != best_j:
                        lab = labels[choices[cur, j]]
                        if lab < nl:
                            nl = lab
                labels[v] = nl + 1
                b = rng.integers(0, s)
                evicted = slots[v, b]
                slots[v, b] = cur
                assign[cur] = v
                assign[evicted] = -1
                moves += 1
                cur = evicted
            else:
                slots[v, counts[v]] = cur
                counts[v] += 1
                assign[cur] = v
                moves += 1
                break
        total += moves
        if moves > maxm:
            maxm = moves
        moves_out[i] = moves
    return 0, -1, total, maxm


@njit(cache=True)
def _random_walk(resident, choices, max_moves, rng, moves_out, assign):
    m, k = choices.shape
    total = 0
    maxm = 0
    for i in range(m):
        cur = i
        moves = 0
        placed = False
        while moves < max_moves:
            j = rng.integers(0, k)
            v = choices[cur, j]
            occ = resident[v]
            resident[v] = cur
            assign[cur] = v
            moves += 1
            if occ < 0:
                placed = True
                break
            assign[occ] = -1
            cur = occ
        total += moves
        if moves > maxm:
            maxm = moves
        moves_out[i] = moves
        if not placed:
            return 2, i, total, maxm
    return 0, -1, total, maxm


def _as_choices(choices: np.ndarray, n: int) -> np.ndarray:
    choices = np.ascontiguousarray(choices, dtype=np.int64)
    if choices.ndim != 2 or choices.shape[1] < 2:
        raise ValueError(f"choices must be (m, k>=2), got shape {choices.shape}")
    if choices.size and (choices.min() < 0 or choices.max() >= n):
        raise ValueError(f"choices outside [0, {n})")
    return choices


def _package_lsa(status, fail, total, maxm, labels, assign, moves_out) -> RunOutput:
    outcome = Outcome.PLACED if status == 0 else Outcome.NO_ALLOCATION
    return RunOutput(
        outcome=outcome,
        placed=int((assign >= 0).sum()),
        total_moves=int(total),
        max_moves=int(maxm),
        label_sum=int(labels.sum()),
        max_label=int(labels.max()),
        failed_item=int(fail),
        labels=labels,
        assignment=assign,
        moves_per_item=moves_out,
    )


def run_lsa(n: int, choices: np.ndarray, table_seed: int = 0) -> RunOutput:
    """Insert items 0..m-1 into a unit-capacity table with the
    always-update label rule; stops at the first failed insertion.
    ``table_seed`` is accepted for interface symmetry (no randomness)."""
    del table_seed
    if n < 1:
        raise ValueError("need n >= 1")
    choices = _as_choices(choices, n)
    m = choices.shape[0]
    labels = np.zeros(n, dtype=np.int64)
    moves_out = np.zeros(m, dtype=np.int64)
    assign = np.full(m, -1, dtype=np.int64)
    resident = np.full(n, -1, dtype=np.int64)
    status, fail, total, maxm = _lsa_unit(labels, resident, choices, n - 1, moves_out, assign)
    return _package_lsa(status, fail, total, maxm, labels, assign, moves_out)


def run_lsa_capacity(n: int, choices: np.ndarray, capacity: int, table_seed: int = 0) -> RunOutput:
    """Capacity-s variant (labels stay 0 until a location fills; victims
    drawn from the table seed's victim stream), including s = 1."""
    if n < 1 or capacity < 1:
        raise ValueError("need n >= 1 and capacity >= 1")
    choices = _as_choices(choices, n)
    m = choices.shape[0]
    labels = np.zeros(n, dtype=np.int64)
    moves_out = np.zeros(m, dtype=np.int64)
    assign = np.full(m, -1, dtype=np.int64)
    slots = np.full((n, capacity), -1, dtype=np.int64)
    counts = np.zeros(n, dtype=np.int64)
    rng = stream_rng(table_seed, VICTIM_STREAM)
    status, fail, total, maxm = _lsa_cap(
        labels, slots, counts, choices, capacity, n - 1, rng, moves_out, assign
    )
    return _package_lsa(status, fail, total, maxm, labels, assign, moves_out)


def run_random_walk(n: int, choices: np.ndarray, max_moves: int, seed: int = 0) -> RunOutput:
    """Random-walk baseline over the same instance layout (capacity 1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if max_moves < 1:
        raise ValueError(f"max_moves must be >= 1, got {max_moves}")
    choices = _as_choices(choices, n)
    m = choices.shape[0]
    resident = np.full(n, -1, dtype=np.int64)
    moves_out = np.zeros(m, dtype=np.int64)
    assign = np.full(m, -1, dtype=np.int64)
    rng = stream_rng(seed, WALK_STREAM)
    status, fail, total, maxm = _random_walk(resident, choices, max_moves, rng, moves_out, assign)
    outcome = Outcome.PLACED if status == 0 else Outcome.MOVE_CAP_EXCEEDED
    return RunOutput(
        outcome=outcome,
        placed=int((assign >= 0).sum()),
        total_moves=int(total),
        max_moves=int(maxm),
        label_sum=0,
        max_label=0,
        failed_item=int(fail),
        labels=np.zeros(n, dtype=np.int64),
        assignment=assign,
        moves_per_item=moves_out,
    )


def check_assignment(choices: np.ndarray, assignment: np.ndarray, n: int, capacity: int) -> bool:
    """Every placed item sits in one of its own choices and no location
    exceeds capacity."""
    placed = assignment >= 0
    if not placed.any():
        return True
    locs = assignment[placed]
    in_choice = (choices[placed] == locs[:, None]).any(axis=1)
    if not bool(in_choice.all()):
        return False
    loads = np.bincount(locs, minlength=n)
    return int(loads.max()) <= capacity
