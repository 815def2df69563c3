"""Bipartite maximum matching.

``match_lsa`` treats left vertices as items and right vertices as
locations and runs the label-guided insertion with a per-vertex move cap;
an aborted chain is not unwound, so every intermediate state is a valid
partial matching.  ``hopcroft_karp`` is the exact reference, used both as
a product feature and as the feasibility oracle for the allocation
engine's tests.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Item
from .graphio import BipartiteGraph

_NO_LAYER = -1


@dataclass
class MatchingResult:
    size: int
    pairs: dict[int, int]
    total_moves: int | None = None
    per_cap_sizes: dict[int, int] | None = None
    # diagnostics, filled by match_lsa only
    max_moves: int = 0
    label_sum: int = 0
    max_label: int = 0
    skipped: int = 0


def _check_matching(graph: BipartiteGraph, pairs: dict[int, int]) -> None:
    used_right: set[int] = set()
    for u, v in pairs.items():
        if v in used_right:
            raise AssertionError(f"right vertex {v} matched twice")
        used_right.add(v)
        if v not in graph.adjacency[u]:
            raise AssertionError(f"pair ({u}, {v}) is not an edge")


def match_lsa(graph: BipartiteGraph, move_cap: int, seed: int = 0) -> MatchingResult:
    """Greedy label-guided matcher with a per-vertex move cap.

    Left vertices are processed in index order; vertices with empty
    adjacency are skipped and counted.  A chain that exhausts the cap (or
    whose minimum label reaches right_count - 1) leaves the displaced
    items where the chain put them and the item in hand unmatched.  The
    ``seed`` parameter is reserved; processing and tie-breaks are
    deterministic.
    """
    del seed
    if move_cap < 1:
        raise ValueError(f"move_cap must be >= 1, got {move_cap}")
    nr = graph.right_count
    adj = graph.adjacency
    labels = [0] * nr
    resident = [-1] * nr
    exit_label = nr - 1
    total_moves = 0
    max_moves = 0
    skipped = 0

    for start in range(graph.left_count):
        if not adj[start]:
            skipped += 1
            continue
        cur = start
        moves = 0
        while True:
            neigh = adj[cur]
            k = len(neigh)
            best_j = 0
            best = labels[neigh[0]]
            for j in range(1, k):
                lab = labels[neigh[j]]
                if lab < best:
                    best, best_j = lab, j
            v = neigh[best_j]
            if best >= exit_label:
                break  # unmatchable from here; leave cur unmatched
            if k > 1:
                labels[v] = 1 + min(labels[neigh[j]] for j in range(k) if j != best_j)
            else:
                # Degree-1 vertex: no alternative choice, so a location it
                # occupies can never be vacated; saturate the label.
                labels[v] = nr
            evicted = resident[v]
            resident[v] = cur
            moves += 1
            if evicted < 0:
                break
            cur = evicted
            if moves >= move_cap:
                break  # cap reached with an item still in hand
        total_moves += moves
        if moves > max_moves:
            max_moves = moves

    pairs = {who: v for v, who in enumerate(resident) if who >= 0}
    _check_matching(graph, pairs)
    return MatchingResult(
        size=len(pairs),
        pairs=pairs,
        total_moves=total_moves,
        max_moves=max_moves,
        label_sum=sum(labels),
        max_label=max(labels, default=0),
        skipped=skipped,
    )


def match_lsa_sweep(graph: BipartiteGraph, caps: list[int], seed: int = 0) -> MatchingResult:
    """Run the capped matcher per cap; returns the largest-cap result with
    per_cap_sizes filled."""
    if not caps:
        raise ValueError("need at least one cap")
    sizes: dict[int, int] = {}
    last = None
    for cap in sorted(caps):
        last = match_lsa(graph, cap, seed)
        sizes[cap] = last.size
    last.per_cap_sizes = sizes
    return last


def hopcroft_karp(graph: BipartiteGraph) -> MatchingResult:
    """Maximum-cardinality matching via layered BFS and iterative DFS
    augmentation phases."""
    nl, nr = graph.left_count, graph.right_count
    adj = graph.adjacency
    pair_l = [-1] * nl
    pair_r = [-1] * nr
    layer = [_NO_LAYER] * nl
    size = 0

    def bfs() -> int:
        """Layer the graph from unmatched left vertices; returns the layer
        of the shortest augmenting path, or _NO_LAYER if none exists."""
        queue: deque[int] = deque()
        for u in range(nl):
            if pair_l[u] < 0:
                layer[u] = 0
                queue.append(u)
            else:
                layer[u] = _NO_LAYER
        goal = _NO_LAYER
        while queue:
            u = queue.popleft()
            if goal != _NO_LAYER and layer[u] >= goal:
                continue
            for v in adj[u]:
                w = pair_r[v]
                if w < 0:
                    if goal == _NO_LAYER:
                        goal = layer[u] + 1
                elif layer[w] == _NO_LAYER:
                    layer[w] = layer[u] + 1
                    queue.append(w)
        return goal

    def augment(root: int, goal: int, ptr: list[int], vpath: list[int]) -> bool:
        stack = [root]
        while stack:
            u = stack[-1]
            advanced = False
            while ptr[u] < len(adj[u]):
                v = adj[u][ptr[u]]
                ptr[u] += 1
                w = pair_r[v]
                if w < 0:
                    if layer[u] + 1 == goal:
                        vpath[len(stack) - 1] = v
                        for depth in range(len(stack) - 1, -1, -1):
                            lu = stack[depth]
                            rv = vpath[depth]
                            pair_l[lu] = rv
                            pair_r[rv] = lu
                        return True
                elif layer[w] == layer[u] + 1:
                    vpath[len(stack) - 1] = v
                    stack.append(w)
                    advanced = True
                    break
            if not advanced:
                layer[u] = _NO_LAYER  # dead end for this phase
                stack.pop()
        return False

    while True:
        goal = bfs()
        if goal == _NO_LAYER:
            break
        ptr = [0] * nl
        vpath = [0] * (nl + 1)
        for u in range(nl):
            if pair_l[u] < 0 and augment(u, goal, ptr, vpath):
                size += 1

    pairs = {u: v for u, v in enumerate(pair_l) if v >= 0}
    _check_matching(graph, pairs)
    return MatchingResult(size=size, pairs=pairs)


def feasible(items: list[Item], n: int, capacity: int = 1) -> bool:
    """Exact feasibility of placing every item in one of its choices with
    at most ``capacity`` items per location.

    Reduction to matching: replicate each location ``capacity`` times and
    ask Hopcroft-Karp for a perfect left matching.  Test-scale only.
    """
    adjacency = []
    for item in items:
        adjacency.append(sorted({c * capacity + t for c in item.choices for t in range(capacity)}))
    graph = BipartiteGraph(len(items), n * capacity, adjacency)
    return hopcroft_karp(graph).size == len(items)
