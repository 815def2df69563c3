"""Bipartite graphs and the edge-list interchange format.

Files hold whitespace-separated ``left right`` pairs, one per line, with
'#' comments and an optional ``p <left_count> <right_count>`` header.
Indices are 0-based unless loaded with one_based=True.  Duplicate edges
collapse on load; the written form is canonical (header plus edges sorted
by left then right).
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class BipartiteGraph:
    left_count: int
    right_count: int
    adjacency: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        if self.left_count < 0 or self.right_count < 0:
            raise ValueError("vertex counts must be non-negative")
        if not self.adjacency:
            self.adjacency = [[] for _ in range(self.left_count)]
        if len(self.adjacency) != self.left_count:
            raise ValueError(
                f"adjacency has {len(self.adjacency)} lists for {self.left_count} left vertices"
            )
        for u, neigh in enumerate(self.adjacency):
            for v in neigh:
                if not 0 <= v < self.right_count:
                    raise ValueError(f"neighbor {v} of left vertex {u} outside [0, {self.right_count})")

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency)

    @classmethod
    def from_edges(
        cls,
        edges: list[tuple[int, int]],
        left_count: int | None = None,
        right_count: int | None = None,
    ) -> "BipartiteGraph":
        if left_count is None:
            left_count = 1 + max((u for u, _ in edges), default=-1)
        if right_count is None:
            right_count = 1 + max((v for _, v in edges), default=-1)
        adjacency: list[set[int]] = [set() for _ in range(left_count)]
        for u, v in edges:
            if not 0 <= u < left_count:
                raise ValueError(f"left index {u} outside [0, {left_count})")
            adjacency[u].add(v)
        return cls(left_count, right_count, [sorted(a) for a in adjacency])


def load_edge_list(path: str, one_based: bool = False) -> BipartiteGraph:
    """Parse an edge-list file; malformed lines raise with their number."""
    shift = 1 if one_based else 0
    left_count: int | None = None
    right_count: int | None = None
    edges: list[tuple[int, int]] = []
    saw_header = False
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] == "p":
                if saw_header or edges:
                    raise ValueError(f"{path}:{lineno}: unexpected header line")
                if len(fields) != 3:
                    raise ValueError(f"{path}:{lineno}: header must be 'p <left> <right>'")
                try:
                    left_count, right_count = int(fields[1]), int(fields[2])
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: non-integer header counts") from None
                saw_header = True
                continue
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'left right', got {line!r}")
            try:
                u, v = int(fields[0]) - shift, int(fields[1]) - shift
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-integer endpoint in {line!r}") from None
            if u < 0 or v < 0:
                raise ValueError(f"{path}:{lineno}: negative index in {line!r}")
            if left_count is not None and (u >= left_count or v >= right_count):
                raise ValueError(f"{path}:{lineno}: edge ({u}, {v}) outside declared {left_count}x{right_count}")
            edges.append((u, v))
    if not saw_header and not edges:
        raise ValueError(f"{path}: empty edge-list file")
    return BipartiteGraph.from_edges(edges, left_count, right_count)


def write_edge_list(graph: BipartiteGraph, path: str) -> None:
    """Write the canonical form: header, then sorted deduplicated edges."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p {graph.left_count} {graph.right_count}\n")
        for u, neigh in enumerate(graph.adjacency):
            for v in neigh:
                fh.write(f"{u} {v}\n")
