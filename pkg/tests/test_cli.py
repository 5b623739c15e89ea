import csv
import json
from pathlib import Path

import pytest

from relbel.cli import main
from relbel.report import validate_report

BERNOULLI_CONFIG = {
    "model": {"family": "bernoulli"},
    "grid": {"points": [0.0, 0.5, 1.0]},
    "prior": {"family": "uniform"},
    "data": {"values": [1]},
    "hypotheses": [{"value": 0.5, "delta": 0.1}],
    "gamma": 0.7,
    "q": 1.0,
    "seed": 5,
    "bias": {"method": "exact", "alternatives": [1.0]},
}


def write_config(tmp_path, payload) -> Path:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def read_tree(root: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(root.iterdir()) if p.is_file()}


class TestAnalyze:
    def test_end_to_end_matches_the_library(self, tmp_path):
        config = write_config(tmp_path, BERNOULLI_CONFIG)
        out = tmp_path / "out"
        assert main(["analyze", "--config", str(config), "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        validate_report(report)
        assert report["posterior"]["masses"] == pytest.approx([0.0, 1 / 3, 2 / 3], abs=1e-12)
        assert report["rb_curve"]["rb"] == pytest.approx([0.0, 1.0, 2.0], abs=1e-12)
        assert report["mrbe"]["value"] == 1.0
        verdict = report["verdicts"][0]
        assert verdict["direction"] == "neutral" and verdict["rb"] == pytest.approx(1.0)
        with open(out / "rb_curve.csv", newline="", encoding="utf-8") as handle:
            rows = list(csv.DictReader(handle))
        assert [row["psi"] for row in rows] == ["0.0", "0.5", "1.0"]
        assert float(rows[2]["rb"]) == pytest.approx(2.0)
        assert (out / "rb_plot.svg").exists()
        assert (out / "regions.csv").exists()
        assert (out / "bias.csv").exists()

    def test_bad_prior_total_exits_2(self, tmp_path):
        payload = dict(BERNOULLI_CONFIG, prior={"masses": [0.3, 0.3, 0.3]})
        config = write_config(tmp_path, payload)
        assert main(["analyze", "--config", str(config), "--out", str(tmp_path / "o")]) == 2

    def test_impossible_data_exits_3(self, tmp_path):
        payload = dict(BERNOULLI_CONFIG, prior={"masses": [1.0, 0.0, 0.0]})
        payload.pop("bias")
        payload["hypotheses"] = [{"value": 0.0}]
        config = write_config(tmp_path, payload)
        assert main(["analyze", "--config", str(config), "--out", str(tmp_path / "o")]) == 3

    def test_reruns_are_byte_identical(self, tmp_path):
        config = write_config(tmp_path, BERNOULLI_CONFIG)
        first, second = tmp_path / "one", tmp_path / "two"
        assert main(["analyze", "--config", str(config), "--out", str(first)]) == 0
        assert main(["analyze", "--config", str(config), "--out", str(second)]) == 0
        assert read_tree(first) == read_tree(second)

    def test_gaussian_monte_carlo_run(self, tmp_path):
        payload = {
            "model": {"family": "gaussian_mean", "n": 50},
            "grid": {"lo": -160.0, "hi": 160.0, "cells": 5000},
            "prior": {"family": "normal", "mean": 0.0, "sd": 20.0},
            "data": {"mean": 0.27718585822512665, "n": 50},
            "hypotheses": [{"value": 0.016, "delta": 0.01}],
            "seed": 13,
            "bias": {"method": "monte_carlo", "reps": 20000, "alternatives": [0.4]},
        }
        # hypothesis must be a grid point: use the cell midpoint nearest zero
        from relbel import make_uniform_grid

        grid = make_uniform_grid(-160.0, 160.0, 5000)
        payload["hypotheses"][0]["value"] = grid.points[grid.nearest_index(0.0)]
        config = write_config(tmp_path, payload)
        out = tmp_path / "out"
        assert main(["analyze", "--config", str(config), "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["bias"]["method"] == "monte_carlo"
        assert 0.0 <= report["bias"]["against"] <= 1.0


class TestParadoxCli:
    def test_jeffreys_lindley_row_contains_headline_numbers(self, tmp_path, capsys):
        out = tmp_path / "jl"
        code = main(
            ["paradox", "jeffreys-lindley", "--n", "50", "--sigma2", "400", "--zbar", "1.96",
             "--grid-cells", "20000", "--out", str(out)]
        )
        assert code == 0
        with open(out / "jl_table.csv", newline="", encoding="utf-8") as handle:
            rows = {float(r["sigma2"]): r for r in csv.DictReader(handle)}
        headline = rows[400.0]
        assert round(float(headline["bf_rb"]), 2) == 20.72
        assert round(float(headline["strength"]), 2) == 0.05
        assert float(headline["bias_against"]) == pytest.approx(0.00165, abs=5e-5)
        assert float(headline["bias_in_favor"]) == pytest.approx(0.1176, abs=1e-3)
        check = json.loads((out / "jl_check.json").read_text())
        assert check["grid_check"]["bf_relative_error"] < 0.01
        assert (out / "jl_sweep.svg").exists()

    def test_optional_stopping_exceeds_alpha(self, tmp_path):
        out = tmp_path / "stop"
        code = main(
            ["paradox", "optional-stopping", "--alpha", "0.05", "--reps", "20000",
             "--seed", "7", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads((out / "optional_stopping.json").read_text())
        assert payload["exceeds_alpha_by_3_se"] is True
        assert payload["quadrature_gap_in_se"] <= 3.0

    def test_likelihood_word_emits_the_pathology(self, tmp_path):
        out = tmp_path / "word"
        code = main(
            ["paradox", "likelihood-word", "--k", "100", "--M", "2", "--delta", "0.01",
             "--gamma", "0.85", "--out", str(out)]
        )
        assert code == 0
        summary = json.loads((out / "word_summary.json").read_text())
        assert summary["region"] == ["1,1"]
        assert summary["prob_truncated_next"]["exact"] == "9899/10100"
        assert summary["prob_truncated_next"]["float"] == pytest.approx(0.9801, abs=1e-4)

    def test_confidence_mixture_window(self, tmp_path):
        out = tmp_path / "mix"
        code = main(
            ["paradox", "confidence-mixture", "--alpha", "0.05", "--x-count", "261",
             "--out", str(out)]
        )
        assert code == 0
        summary = json.loads((out / "mixture_summary.json").read_text())
        left, right = summary["acceptance_interval"]
        assert left == pytest.approx(-1.68148, abs=5e-4)
        assert right == pytest.approx(2.68148, abs=5e-4)
        assert summary["full_region_width"] > 3.0

    def test_map_invariance_reports_a_moved_argmax(self, tmp_path):
        out = tmp_path / "mapinv"
        assert main(["paradox", "map-invariance", "--out", str(out)]) == 0
        payload = json.loads((out / "map_invariance.json").read_text())
        assert payload["argmax_moved"] is True

    def test_birnbaum_report(self, tmp_path):
        out = tmp_path / "birn"
        code = main(
            ["paradox", "birnbaum", "--x-cap", "2", "--denominators", "3", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads((out / "birnbaum_report.json").read_text())
        assert payload["s_violations"] == 0
        assert payload["c_violations"] == 0
        assert payload["closure_within_l"] is True

    def test_unknown_paradox_name_is_a_usage_error(self, tmp_path):
        assert main(["paradox", "no-such-demo"]) == 2

    def test_seeded_paradox_reruns_are_byte_identical(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        argv = ["paradox", "optional-stopping", "--reps", "5000", "--seed", "3"]
        assert main(argv + ["--out", str(first)]) == 0
        assert main(argv + ["--out", str(second)]) == 0
        assert read_tree(first) == read_tree(second)


class TestPrinciplesCli:
    def test_enumerate_writes_universe(self, tmp_path):
        out = tmp_path / "uni"
        code = main(
            ["principles", "enumerate", "--x-cap", "2", "--denominators", "3", "--out", str(out)]
        )
        assert code == 0
        summary = json.loads((out / "universe_summary.json").read_text())
        assert summary["total"] == len(
            (out / "universe.txt").read_text().strip().split("\n\n")
        )

    def test_check_matches_paradox_birnbaum(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        flags = ["--x-cap", "2", "--denominators", "3"]
        assert main(["principles", "check", *flags, "--out", str(a)]) == 0
        assert main(["paradox", "birnbaum", *flags, "--out", str(b)]) == 0
        assert (a / "birnbaum_report.json").read_bytes() == (b / "birnbaum_report.json").read_bytes()
