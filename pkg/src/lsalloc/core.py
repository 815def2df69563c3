"""k-ary cuckoo allocation engine with label-guided local-search insertion.

Each of ``n`` locations carries an integer label that lower-bounds its
distance to the nearest location with spare capacity.  Insertion always
displaces along the minimum-label choice, so eviction chains head toward
free space instead of wandering.  A random-walk insertion baseline and a
BFS distance oracle (used to validate the label invariant) live here too.

This module is the readable reference implementation; ``lsalloc.engine``
provides array-based batch kernels that match it move for move.
"""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .streams import VICTIM_STREAM, WALK_STREAM, stream_rng

UNREACHABLE = float("inf")


class Outcome(enum.Enum):
    """Result of a single insertion (or of a whole run, in the bench layer)."""

    PLACED = "Placed"
    NO_ALLOCATION = "NoAllocation"
    MOVE_CAP_EXCEEDED = "MoveCapExceeded"


@dataclass(frozen=True)
class Item:
    """An item and its k candidate locations.

    ``choices`` is an ordered tuple; duplicates are allowed (multiset
    semantics, choices are drawn with replacement).
    """

    id: int
    choices: tuple[int, ...]

    def __init__(self, id: int, choices: Sequence[int]):
        object.__setattr__(self, "id", int(id))
        object.__setattr__(self, "choices", tuple(int(c) for c in choices))
        if len(self.choices) < 2:
            raise ValueError(f"item {id} needs at least 2 choices, got {len(self.choices)}")


@dataclass
class InsertReport:
    """Outcome of one insertion.

    ``moves`` counts every placement into a slot with spare capacity and
    every replacement of a resident item.  ``chain`` records
    (location, evicted item id or None) per move when tracing is enabled.
    """

    outcome: Outcome
    moves: int
    chain: list[tuple[int, int | None]] | None = None


@dataclass(frozen=True)
class MoveStats:
    total_moves: int
    max_moves: int
    label_sum: int
    max_label: int


class AllocationTable:
    """Labels, slot lists, and move counters for ``n`` locations.

    Single-writer: no concurrent mutation.  ``seed`` feeds the table's
    eviction-victim stream (only consumed when capacity > 1), so a whole
    run replays from (instance seed, table seed).
    """

    def __init__(self, n: int, capacity: int = 1, seed: int = 0):
        if n < 1:
            raise ValueError(f"need at least one location, got n={n}")
        if capacity < 1:
            raise ValueError(f"capacity must be >= 1, got {capacity}")
        self.n = n
        self.capacity = capacity
        self.labels: list[int] = [0] * n
        self.total_moves = 0
        self.max_moves = 0
        self._slots: list[list[int]] = [[] for _ in range(n)]
        self._choices_of: dict[int, tuple[int, ...]] = {}
        self._location_of: dict[int, int] = {}
        self._victim_rng = stream_rng(seed, VICTIM_STREAM)

    @property
    def slots(self) -> list[list[int]]:
        """Copy of the per-location resident lists."""
        return [list(s) for s in self._slots]

    @property
    def free_count(self) -> int:
        return sum(1 for s in self._slots if len(s) < self.capacity)

    def residents(self, v: int) -> list[int]:
        return list(self._slots[v])

    def item_choices(self, item_id: int) -> tuple[int, ...]:
        return self._choices_of[item_id]

    def assignment(self) -> dict[int, int]:
        """Mapping of item id -> location for all currently placed items."""
        return dict(self._location_of)

    def _register(self, item: Item) -> tuple[int, ...]:
        for c in item.choices:
            if not 0 <= c < self.n:
                raise ValueError(f"choice {c} of item {item.id} outside [0, {self.n})")
        if item.id in self._location_of:
            raise ValueError(f"item {item.id} is already placed")
        self._choices_of[item.id] = item.choices
        return item.choices

    def _account(self, moves: int) -> None:
        self.total_moves += moves
        if moves > self.max_moves:
            self.max_moves = moves


def new_table(n: int, capacity: int = 1, seed: int = 0) -> AllocationTable:
    """Fresh table: all labels 0, all slots empty."""
    return AllocationTable(n, capacity, seed)


def insert_lsa(table: AllocationTable, item: Item, *, trace: bool = False) -> InsertReport:
    """Insert into a unit-capacity table by always displacing along the
    minimum-label choice.

    The chosen location's label is rewritten to 1 + the minimum label of
    the item's other choice positions on every move, including placement
    into a free location.  Returns ``NO_ALLOCATION`` when the chosen
    minimum label has reached n - 1; the table keeps its consistent
    intermediate state (no rollback).
    """
    if table.capacity != 1:
        raise ValueError("insert_lsa requires a unit-capacity table")
    choices = table._register(item)
    labels = table.labels
    slots = table._slots
    exit_label = table.n - 1
    chain: list[tuple[int, int | None]] | None = [] if trace else None

    cur = item.id
    moves = 0
    while True:
        k = len(choices)
        best_j = 0
        best = labels[choices[0]]
        for j in range(1, k):
            lab = labels[choices[j]]
            if lab < best:
                best, best_j = lab, j
        v = choices[best_j]
        if best >= exit_label:
            table._location_of.pop(cur, None)
            table._account(moves)
            return InsertReport(Outcome.NO_ALLOCATION, moves, chain)
        # Position-wise exclusion: only the selected position is dropped
        # from the min, so duplicate choice values still update.
        labels[v] = 1 + min(labels[choices[j]] for j in range(k) if j != best_j)
        slot = slots[v]
        if slot:
            evicted = slot[0]
            slot[0] = cur
            table._location_of[cur] = v
            del table._location_of[evicted]
            moves += 1
            if chain is not None:
                chain.append((v, evicted))
            cur = evicted
            choices = table._choices_of[cur]
        else:
            slot.append(cur)
            table._location_of[cur] = v
            moves += 1
            if chain is not None:
                chain.append((v, None))
            table._account(moves)
            return InsertReport(Outcome.PLACED, moves, chain)


def insert_lsa_capacity(table: AllocationTable, item: Item, *, trace: bool = False) -> InsertReport:
    """Capacity-s variant: a location's label stays 0 until it is full.

    Selection prefers, among the minimum-label choices, one with spare
    capacity (then the lowest position).  Only a full location gets its
    label rewritten; its eviction victim is drawn uniformly from the s
    residents using the table's victim stream.
    """
    choices = table._register(item)
    labels = table.labels
    slots = table._slots
    s = table.capacity
    exit_label = table.n - 1
    rng = table._victim_rng
    chain: list[tuple[int, int | None]] | None = [] if trace else None

    cur = item.id
    moves = 0
    while True:
        k = len(choices)
        best_j = 0
        c = choices[0]
        best = (labels[c], len(slots[c]) >= s)
        for j in range(1, k):
            c = choices[j]
            key = (labels[c], len(slots[c]) >= s)
            if key < best:
                best, best_j = key, j
        v = choices[best_j]
        if best[0] >= exit_label:
            table._location_of.pop(cur, None)
            table._account(moves)
            return InsertReport(Outcome.NO_ALLOCATION, moves, chain)
        slot = slots[v]
        if len(slot) >= s:
            labels[v] = 1 + min(labels[choices[j]] for j in range(k) if j != best_j)
            b = int(rng.integers(0, s))
            evicted = slot[b]
            slot[b] = cur
            table._location_of[cur] = v
            del table._location_of[evicted]
            moves += 1
            if chain is not None:
                chain.append((v, evicted))
            cur = evicted
            choices = table._choices_of[cur]
        else:
            slot.append(cur)
            table._location_of[cur] = v
            moves += 1
            if chain is not None:
                chain.append((v, None))
            table._account(moves)
            return InsertReport(Outcome.PLACED, moves, chain)


def insert_random_walk(
    table: AllocationTable,
    item: Item,
    max_moves: int,
    rng: int | np.random.Generator = 0,
) -> InsertReport:
    """Random-walk insertion baseline on a unit-capacity table.

    Each step picks one of the current item's k choices uniformly at
    random; a free location ends the walk, an occupied one is evicted.
    Labels are not consulted or maintained.  ``rng`` is either a seed
    (expanded to the walk stream) or a generator shared across a run.
    """
    if table.capacity != 1:
        raise ValueError("insert_random_walk requires a unit-capacity table")
    if max_moves < 1:
        raise ValueError(f"max_moves must be >= 1, got {max_moves}")
    if not isinstance(rng, np.random.Generator):
        rng = stream_rng(int(rng), WALK_STREAM)
    choices = table._register(item)
    slots = table._slots

    cur = item.id
    moves = 0
    while moves < max_moves:
        j = int(rng.integers(0, len(choices)))
        v = choices[j]
        slot = slots[v]
        moves += 1
        if slot:
            evicted = slot[0]
            slot[0] = cur
            table._location_of[cur] = v
            del table._location_of[evicted]
            cur = evicted
            choices = table._choices_of[cur]
        else:
            slot.append(cur)
            table._location_of[cur] = v
            table._account(moves)
            return InsertReport(Outcome.PLACED, moves)
    table._location_of.pop(cur, None)
    table._account(moves)
    return InsertReport(Outcome.MOVE_CAP_EXCEEDED, moves)


def distances_to_free(table: AllocationTable) -> list[int | float]:
    """Exact distance from every location to the nearest one with spare
    capacity, following displacement edges.

    A location occupied by an item has an edge to each *other* choice of
    that item.  Computed by multi-source BFS from the free set over the
    reversed edges; unreachable locations get ``UNREACHABLE``.  This is
    the independent oracle for the label lower-bound invariant.
    """
    n = table.n
    cap = table.capacity
    slots = table._slots
    in_adj: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for item_id in slots[v]:
            for w in table._choices_of[item_id]:
                if w != v:
                    in_adj[w].append(v)

    dist: list[int | float] = [UNREACHABLE] * n
    queue: deque[int] = deque()
    for v in range(n):
        if len(slots[v]) < cap:
            dist[v] = 0
            queue.append(v)
    while queue:
        x = queue.popleft()
        d = dist[x] + 1
        for u in in_adj[x]:
            if dist[u] == UNREACHABLE:
                dist[u] = d
                queue.append(u)
    return dist


def stats(table: AllocationTable) -> MoveStats:
    """Current move counters and label aggregates."""
    return MoveStats(
        total_moves=table.total_moves,
        max_moves=table.max_moves,
        label_sum=sum(table.labels),
        max_label=max(table.labels),
    )
