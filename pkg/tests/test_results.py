"""CSV schema and round trips."""

import csv

import pytest

from lsalloc import CSV_COLUMNS, RunRecord, read_csv, write_csv


def rec(**overrides):
    base = dict(
        n=1000, k=3, c=0.9, s=1, algo="lsa", seed=7,
        total_moves=1234, max_moves=17, max_label=5, label_sum=2222,
        outcome="Placed", wall_ns=123456789,
    )
    base.update(overrides)
    return RunRecord(**base)


def test_header_only(tmp_path):
    path = tmp_path / "r.csv"
    write_csv([], str(path))
    assert path.read_text().strip() == ",".join(CSV_COLUMNS)
    assert read_csv(str(path)) == []


def test_round_trip(tmp_path):
    path = tmp_path / "r.csv"
    rows = [rec(), rec(algo="rw", outcome="MoveCapExceeded", c=0.915)]
    write_csv(rows, str(path))
    assert read_csv(str(path)) == rows


def test_twelve_columns(tmp_path):
    path = tmp_path / "r.csv"
    write_csv([rec()], str(path))
    with open(path, newline="") as fh:
        parsed = list(csv.reader(fh))
    assert len(parsed[0]) == 12
    assert all(len(row) == 12 for row in parsed)


def test_rejects_foreign_header(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("a,b,c\n")
    with pytest.raises(ValueError):
        read_csv(str(path))


def test_missing_path_has_context():
    with pytest.raises(OSError) as err:
        write_csv([], "/nonexistent/dir/out.csv")
    assert "out.csv" in str(err.value)
