"""CSV result schema shared by every benchmark runner."""

from __future__ import annotations

import csv
from collections.abc import Iterable
from dataclasses import dataclass, fields

CSV_COLUMNS = (
    "n", "k", "c", "s", "algo", "seed",
    "total_moves", "max_moves", "max_label", "label_sum",
    "outcome", "wall_ns",
)


@dataclass(frozen=True)
class RunRecord:
    """One (instance, algorithm) run."""

    n: int
    k: int
    c: float
    s: int
    algo: str
    seed: int
    total_moves: int
    max_moves: int
    max_label: int
    label_sum: int
    outcome: str
    wall_ns: int

    def as_row(self) -> list:
        return [getattr(self, name) for name in CSV_COLUMNS]

    @classmethod
    def from_row(cls, row: list[str]) -> "RunRecord":
        if len(row) != len(CSV_COLUMNS):
            raise ValueError(f"expected {len(CSV_COLUMNS)} columns, got {len(row)}")
        types = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for name, raw in zip(CSV_COLUMNS, row):
            kwargs[name] = float(raw) if types[name] == "float" else (raw if types[name] == "str" else int(raw))
        return cls(**kwargs)


def write_csv(rows: Iterable[RunRecord], path: str) -> None:
    """Write records under the fixed 12-column header."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in rows:
            writer.writerow(rec.as_row())


def read_csv(path: str) -> list[RunRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != list(CSV_COLUMNS):
            raise ValueError(f"{path}: unexpected header {header}")
        return [RunRecord.from_row(row) for row in reader]
