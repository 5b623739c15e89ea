import json
import math
import pytest

from relbel import ConfigError
from relbel.config import load_config, resolve
from relbel.report import (
    atomic_write_text,
    csv_text,
    dumps_canonical,
    fmt_float,
    load_schema,
    validate_report,
)


class TestFormatting:
    def test_fmt_float_has_full_precision(self):
        assert fmt_float(0.1) == "0.10000000000000001"
        assert float(fmt_float(1.0 / 3.0)) == 1.0 / 3.0

    def test_fmt_float_rejects_non_finite(self):
        with pytest.raises(Exception):
            fmt_float(math.nan)

    def test_canonical_json_round_trips(self):
        payload = {
            "a": 1,
            "b": [1.5, None, True, "x"],
            "c": {"nested": [0.1, {"deep": False}]},
            "empty_list": [],
            "empty_obj": {},
        }
        text = dumps_canonical(payload)
        assert json.loads(text) == json.loads(json.dumps(payload))

    def test_nan_becomes_null(self):
        assert json.loads(dumps_canonical({"x": math.nan}))["x"] is None

    def test_csv_is_lf_terminated_with_header(self):
        text = csv_text(("a", "b"), [(1, 0.5), ("x,y", None)])
        lines = text.split("\n")
        assert lines[0] == "a,b"
        assert lines[1] == "1,0.5"
        assert lines[2] == '"x,y",'
        assert "\r" not in text


class TestAtomicWrite:
    def test_write_and_replace(self, tmp_path):
        target = tmp_path / "sub" / "file.txt"
        atomic_write_text(target, "one")
        atomic_write_text(target, "two")
        assert target.read_text() == "two"
        assert list(target.parent.iterdir()) == [target]


class TestSchema:
    def test_schema_loads(self):
        schema = load_schema()
        assert schema["type"] == "object"

    def test_rejects_missing_keys(self):
        with pytest.raises(Exception, match="missing required"):
            validate_report({"schema_version": 1})

    def test_accepts_minimal_valid_report(self):
        report = {
            "schema_version": 1,
            "config": {},
            "posterior": {"points": [0.0], "masses": [1.0]},
            "rb_curve": {
                "points": [0.0],
                "prior_mass": [1.0],
                "posterior_mass": [1.0],
                "rb": [1.0],
            },
            "mrbe": {"value": 0.0, "index": 0, "tied": False},
            "verdicts": [],
            "regions": {
                "gamma_region": {"gamma": 0.95, "points": [0.0], "content": 1.0},
                "plausible_region": {"q": 1.0, "points": [], "content": 0.0},
            },
        }
        validate_report(report)


BASE_CONFIG = {
    "model": {"family": "bernoulli"},
    "grid": {"points": [0.0, 0.5, 1.0]},
    "prior": {"family": "uniform"},
    "data": {"values": [1]},
    "hypotheses": [{"value": 0.5, "delta": 0.1}],
}


class TestConfigResolution:
    def test_valid_config_resolves(self):
        resolved = resolve(dict(BASE_CONFIG))
        assert resolved.grid.points == (0.0, 0.5, 1.0)
        assert resolved.gamma == 0.95
        assert resolved.hypotheses[0]["value"] == 0.5

    def test_missing_field_names_the_path(self):
        config = {k: v for k, v in BASE_CONFIG.items() if k != "prior"}
        with pytest.raises(ConfigError) as err:
            resolve(config)
        assert "config.prior" in str(err.value)

    def test_prior_masses_must_sum_to_one(self):
        config = dict(BASE_CONFIG, prior={"masses": [0.3, 0.3, 0.3]})
        with pytest.raises(ConfigError, match="sum"):
            resolve(config)

    def test_hypothesis_must_sit_on_the_grid(self):
        config = dict(BASE_CONFIG, hypotheses=[{"value": 0.25}])
        with pytest.raises(ConfigError, match="hypotheses"):
            resolve(config)

    def test_unknown_transform(self):
        config = dict(BASE_CONFIG, map={"transform": "cube"})
        with pytest.raises(ConfigError, match="transform"):
            resolve(config)

    def test_monte_carlo_bias_requires_a_seed(self):
        config = dict(
            BASE_CONFIG,
            bias={"method": "monte_carlo", "alternatives": [1.0]},
        )
        with pytest.raises(ConfigError, match="seed"):
            resolve(config)

    def test_gaussian_mean_infers_n_from_values(self):
        config = {
            "model": {"family": "gaussian_mean"},
            "grid": {"lo": -2.0, "hi": 2.0, "cells": 21},
            "prior": {"family": "normal", "mean": 0.0, "sd": 1.0},
            "data": {"values": [0.2, 0.4, 0.9]},
        }
        resolved = resolve(config)
        assert resolved.model.n == 3
        assert resolved.observed_summary == pytest.approx(0.5)

    def test_csv_data_source(self, tmp_path):
        csv_path = tmp_path / "data.csv"
        csv_path.write_text("x,y\n0.1,9\n0.3,9\n", encoding="utf-8")
        config = {
            "model": {"family": "gaussian_mean"},
            "grid": {"lo": -2.0, "hi": 2.0, "cells": 21},
            "prior": {"family": "normal", "mean": 0.0, "sd": 1.0},
            "data": {"csv": "data.csv", "column": "x"},
        }
        resolved = resolve(config, tmp_path)
        assert resolved.observed_summary == pytest.approx(0.2)

    def test_missing_data_file(self, tmp_path):
        config = {
            "model": {"family": "gaussian_mean"},
            "grid": {"lo": -2.0, "hi": 2.0, "cells": 21},
            "prior": {"family": "normal", "mean": 0.0, "sd": 1.0},
            "data": {"csv": "absent.csv"},
        }
        with pytest.raises(ConfigError, match="does not exist"):
            resolve(config, tmp_path)

    def test_load_config_reports_json_position(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\n  broken\n}", encoding="utf-8")
        with pytest.raises(ConfigError, match="line 2"):
            load_config(bad)


class TestPlotDeterminism:
    def test_same_inputs_same_bytes(self, tmp_path):
        from relbel.plotting import rb_figure

        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        args = ((0.0, 0.5, 1.0), [0.3, 0.3, 0.4], [0.0, 0.4, 0.6], [0.0, 1.2, 1.6])
        rb_figure(a, *args)
        rb_figure(b, *args)
        assert a.read_bytes() == b.read_bytes()
