"""Benchmark runners and the command-line harness."""

import csv
import io
from dataclasses import replace

import pytest

from lsalloc import CSV_COLUMNS, Outcome, read_csv, write_edge_list, BipartiteGraph
from lsalloc.bench import (
    ExperimentConfig,
    run_capacity,
    run_match,
    run_sweep_c,
    run_sweep_n,
    run_verify,
)
from lsalloc.cli import main


def strip_wall(rows):
    return [replace(r, wall_ns=0) for r in rows]


class TestSweepN:
    def test_row_count_and_order(self):
        config = ExperimentConfig(ns=[500, 1000], cs=[0.9], seeds=3)
        rows = run_sweep_n(config)
        assert len(rows) == 12  # |n| * seeds * 2 algos
        assert [r.n for r in rows[:6]] == [500] * 6
        assert [r.algo for r in rows[:4]] == ["lsa", "rw", "lsa", "rw"]
        assert {r.seed for r in rows} == {0, 1, 2}

    def test_deterministic_except_wall(self):
        config = ExperimentConfig(ns=[400], cs=[0.9], seeds=2)
        assert strip_wall(run_sweep_n(config)) == strip_wall(run_sweep_n(config))

    def test_jobs_preserve_order(self):
        config = ExperimentConfig(ns=[300, 600], cs=[0.85], seeds=2)
        serial = strip_wall(run_sweep_n(config))
        parallel = strip_wall(run_sweep_n(replace(config, jobs=2)))
        assert serial == parallel

    def test_lsa_accounting_in_rows(self):
        config = ExperimentConfig(ns=[2000], cs=[0.9], seeds=3)
        for r in run_sweep_n(config):
            if r.algo == "lsa":
                assert r.total_moves <= r.label_sum <= r.n * r.n

    def test_validation(self):
        with pytest.raises(ValueError):
            run_sweep_n(ExperimentConfig(ns=[], cs=[0.9]))
        with pytest.raises(ValueError):
            run_sweep_n(ExperimentConfig(ns=[10], cs=[]))
        with pytest.raises(ValueError):
            run_sweep_n(ExperimentConfig(ns=[10], cs=[0.9], seeds=0))


class TestSweepC:
    def test_moves_grow_toward_threshold(self):
        # means over 20 seeds are nondecreasing in c, and every run at
        # c <= 0.915 succeeds
        config = ExperimentConfig(
            ns=[100_000], cs=[0.80, 0.85, 0.90, 0.915], seeds=20, algos=["lsa"]
        )
        rows = run_sweep_c(config)
        means = []
        for c in config.cs:
            sub = [r for r in rows if r.c == c]
            assert len(sub) == 20
            means.append(sum(r.total_moves for r in sub) / len(sub))
        assert means == sorted(means)
        placed = [r for r in rows if r.outcome == Outcome.PLACED.value]
        assert len(placed) >= 0.99 * len(rows)

    def test_above_threshold_mostly_fails(self):
        config = ExperimentConfig(
            ns=[1000], cs=[0.93], seeds=20, algos=["lsa"], allow_above_threshold=True
        )
        rows = run_sweep_c(config)
        failures = [r for r in rows if r.outcome == Outcome.NO_ALLOCATION.value]
        assert len(failures) > len(rows) / 2

    def test_above_threshold_needs_flag(self):
        with pytest.raises(ValueError, match="threshold"):
            run_sweep_c(ExperimentConfig(ns=[1000], cs=[0.93], seeds=1, algos=["lsa"]))

    def test_above_threshold_needs_small_n(self):
        config = ExperimentConfig(
            ns=[50_000], cs=[0.95], seeds=1, algos=["lsa"], allow_above_threshold=True
        )
        with pytest.raises(ValueError, match="n <="):
            run_sweep_c(config)

    def test_requires_ascending(self):
        with pytest.raises(ValueError, match="ascending"):
            run_sweep_c(ExperimentConfig(ns=[100], cs=[0.9, 0.8], seeds=1))


class TestCapacity:
    def test_rows_and_validity(self):
        config = ExperimentConfig(ns=[2000, 4000], k=3, cs=[1.5], s=2, seeds=2)
        rows = run_capacity(config)
        assert len(rows) == 4  # |n| * seeds
        assert all(r.algo == "lsa" and r.s == 2 for r in rows)
        assert all(r.outcome == Outcome.PLACED.value for r in rows)

    def test_explicit_m(self):
        rows = run_capacity(ExperimentConfig(ns=[100], k=3, m=50, s=2, seeds=1))
        assert rows[0].c == 0.5

    def test_s1_uses_delayed_label_semantics(self):
        # the capacity runner keeps labels at 0 until a location fills even
        # at s=1, unlike the sweep runners' always-update rule; at low
        # density that shows up as a near-zero label sum
        cap_row = run_capacity(ExperimentConfig(ns=[1000], k=3, cs=[0.5], s=1, seeds=1))[0]
        unit_row = run_sweep_n(ExperimentConfig(ns=[1000], cs=[0.5], seeds=1, algos=["lsa"]))[0]
        assert cap_row.outcome == unit_row.outcome == Outcome.PLACED.value
        assert cap_row.label_sum < unit_row.label_sum

    def test_two_per_location_at_density_above_one(self):
        from lsalloc import choices_matrix, run_lsa_capacity
        from lsalloc.instances import InstanceSpec
        import numpy as np

        spec = InstanceSpec(n=10_000, k=3, c=1.7, s=2, seed=0)
        out = run_lsa_capacity(spec.n, choices_matrix(spec), 2, table_seed=0)
        assert out.outcome.value == "Placed"
        loads = np.bincount(out.assignment, minlength=spec.n)
        assert int(loads.max()) <= 2


class TestMatch:
    def test_identity_graph_all_caps_full(self, tmp_path):
        g = BipartiteGraph.from_edges([(i, i) for i in range(10)])
        path = tmp_path / "id.txt"
        write_edge_list(g, str(path))
        config = ExperimentConfig(caps=[1, 2, 5, 0])  # 0 resolves to right_count
        rows = run_match(config, str(path))
        assert len(rows) == 5
        assert all(r.outcome == "size=10" for r in rows)
        assert rows[-1].algo == "hk" and rows[-1].s == 0
        assert [r.s for r in rows[:4]] == [1, 2, 5, 10]

    def test_sizes_weakly_increase(self, tmp_path):
        from lsalloc import choices_matrix
        from lsalloc.instances import InstanceSpec

        ch = choices_matrix(InstanceSpec(n=500, k=3, m=450, seed=2, distinct=True))
        g = BipartiteGraph.from_edges(
            [(u, int(v)) for u, row in enumerate(ch) for v in row], 450, 500
        )
        path = tmp_path / "g.txt"
        write_edge_list(g, str(path))
        rows = run_match(ExperimentConfig(caps=[1, 2, 4, 5, 10, 0]), str(path))
        sizes = [int(r.outcome.split("=")[1]) for r in rows if r.algo == "lsa"]
        assert sizes == sorted(sizes)
        hk = int(rows[-1].outcome.split("=")[1])
        assert sizes[-1] == hk
        assert rows[0].k == 3  # uniform left degree detected


class TestVerify:
    def test_clean_report(self):
        config = ExperimentConfig(ns=[60], k=3, cs=[0.85], seeds=5)
        report = run_verify(config)
        assert report.ok
        assert report.instances == 5
        assert report.prop1_violations == 0
        assert report.feasibility_disagreements == 0

    def test_m_range_cycles(self):
        config = ExperimentConfig(ns=[30], k=3, m_range=(20, 23), seeds=8)
        report = run_verify(config)
        assert report.instances == 8
        assert report.ok

    def test_nothing_to_verify(self):
        with pytest.raises(ValueError, match="verify"):
            run_verify(ExperimentConfig(ns=[30], k=3, m=20, seeds=0))


class TestCli:
    def test_thresholds_output(self, capsys):
        assert main(["thresholds", "--k", "3,4"]) == 0
        out = capsys.readouterr().out
        assert "k=3" in out and "c_star=0.917935" in out

    def test_thresholds_rejects_small_k(self, capsys):
        assert main(["thresholds", "--k", "2"]) == 2

    def test_sweep_n_stdout_schema(self, capsys):
        assert main(["sweep-n", "--n", "200,400", "--c", "0.9", "--seeds", "1"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[0] == list(CSV_COLUMNS)
        assert len(rows) == 1 + 4
        assert all(len(r) == 12 for r in rows)

    def test_sweep_n_out_file(self, tmp_path, capsys):
        out = tmp_path / "rows.csv"
        assert main(["sweep-n", "--n", "200", "--c", "0.9", "--seeds", "2", "--out", str(out)]) == 0
        rows = read_csv(str(out))
        assert len(rows) == 4

    def test_match_cli(self, tmp_path, capsys):
        g = BipartiteGraph.from_edges([(i, i) for i in range(4)])
        path = tmp_path / "g.txt"
        write_edge_list(g, str(path))
        assert main(["match", "--edge-list", str(path), "--caps", "1,n"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 1 + 3

    def test_match_missing_file(self, capsys):
        assert main(["match", "--edge-list", "/nonexistent.txt"]) == 2
        assert "error" in capsys.readouterr().err

    def test_verify_exit_codes(self, capsys):
        assert main(["verify", "--n", "40", "--c", "0.8", "--seeds", "3"]) == 0
        assert "PASS" in capsys.readouterr().out
        assert main(["verify", "--n", "40", "--c", "0.8", "--seeds", "0"]) == 2

    def test_usage_error_exits_2(self):
        with pytest.raises(SystemExit) as err:
            main(["sweep-n", "--badflag"])
        assert err.value.code == 2

    def test_trace_emits_chains(self, capsys):
        assert main(["sweep-n", "--n", "20", "--c", "0.8", "--seeds", "1",
                     "--algo", "lsa", "--trace"]) == 0
        err = capsys.readouterr().err
        assert "chain=" in err

    def test_capacity_cli(self, capsys):
        assert main(["capacity", "--n", "500", "--c", "1.5", "--s", "2", "--seeds", "2"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert len(rows) == 1 + 2
        assert rows[1][4] == "lsa" and rows[1][3] == "2"

    def test_jobs_flag_cli(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep-n", "--n", "300", "--c", "0.9", "--seeds", "2"]
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--jobs", "2", "--out", str(out2)]) == 0
        assert strip_wall(read_csv(str(out1))) == strip_wall(read_csv(str(out2)))

    def test_distinct_choices_flag(self, capsys):
        assert main(["sweep-n", "--n", "200", "--c", "0.5", "--seeds", "1",
                     "--algo", "lsa", "--distinct-choices"]) == 0
        rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert rows[1][10] == "Placed"

    def test_trace_rows_match_engine(self, capsys):
        config = ExperimentConfig(ns=[300], cs=[0.9], seeds=2)
        plain = strip_wall(run_sweep_n(config))
        traced = strip_wall(run_sweep_n(replace(config, trace=True)))
        capsys.readouterr()
        assert plain == traced
