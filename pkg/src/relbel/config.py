"""Analysis configuration: JSON in, validated computation plan out.

A config fully determines an analysis: model family, grid, prior,
optional marginal map, data, hypotheses with their application-supplied
meaningful differences, region thresholds, strength variant, and an
optional bias block. Validation happens before any computation and
failures name the offending field.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bias import BiasSpec, NormalPrior
from .errors import ConfigError
from .grids import MarginalMap, MassTable, ParamGrid, make_uniform_grid
from .models import EvalModel, GaussianMeanModel, TabularModel, bernoulli_model

NAMED_TRANSFORMS = {
    "identity": lambda t: t,
    "square": lambda t: t * t,
    "absolute": abs,
}


@dataclass(frozen=True)
class ResolvedAnalysis:
    """Everything an analysis run needs, validated and ready to execute."""

    echo: dict
    model: EvalModel
    grid: ParamGrid
    prior: MassTable
    mapping: MarginalMap | None
    observations: tuple
    observed_summary: object
    hypotheses: tuple[dict, ...]
    gamma: float
    q: float
    strength_variant: str
    bias: BiasSpec | None
    bias_prior: object
    seed: int | None
    comparisons: bool


def _require(config: dict, field: str, path: str):
    if field not in config:
        raise ConfigError(f"{path}.{field}", "missing required field")
    return config[field]


def _number(value, path: str, *, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if not math.isfinite(float(value)):
        raise ConfigError(path, "must be finite")
    if positive and float(value) <= 0.0:
        raise ConfigError(path, "must be positive")
    return float(value)


def _integer(value, path: str, *, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(path, f"must be at least {minimum}")
    return value


def _resolve_grid(section, path: str) -> ParamGrid:
    if not isinstance(section, dict):
        raise ConfigError(path, "expected an object")
    if "points" in section:
        points = section["points"]
        if not isinstance(points, list) or not points:
            raise ConfigError(f"{path}.points", "expected a nonempty list")
        pts = tuple(tuple(p) if isinstance(p, list) else p for p in points)
        volumes = section.get("volumes", [1.0] * len(pts))
        try:
            return ParamGrid(pts, np.asarray(volumes, dtype=float))
        except Exception as exc:
            raise ConfigError(path, str(exc)) from exc
    for key in ("lo", "hi", "cells"):
        _require(section, key, path)
    lo = _number(section["lo"], f"{path}.lo")
    hi = _number(section["hi"], f"{path}.hi")
    cells = _integer(section["cells"], f"{path}.cells", minimum=1)
    if not lo < hi:
        raise ConfigError(path, "lo must be strictly below hi")
    return make_uniform_grid(lo, hi, cells)


def _resolve_prior(section, grid: ParamGrid, path: str) -> tuple[MassTable, object]:
    """Returns the grid prior plus the analytic form for bias, when there is one."""
    if not isinstance(section, dict):
        raise ConfigError(path, "expected an object")
    if "masses" in section:
        masses = section["masses"]
        if not isinstance(masses, list) or len(masses) != len(grid):
            raise ConfigError(f"{path}.masses", f"expected {len(grid)} masses")
        total = math.fsum(float(m) for m in masses)
        if abs(total - 1.0) > 1e-10:
            raise ConfigError(f"{path}.masses", f"sum is {total!r}, must be 1 within 1e-10")
        try:
            return MassTable(grid, np.asarray(masses, dtype=float)), None
        except Exception as exc:
            raise ConfigError(f"{path}.masses", str(exc)) from exc
    family = _require(section, "family", path)
    if family == "uniform":
        return MassTable.uniform(grid), None
    if family == "normal":
        mean = _number(_require(section, "mean", path), f"{path}.mean")
        sd = _number(_require(section, "sd", path), f"{path}.sd", positive=True)
        if not grid.is_numeric:
            raise ConfigError(path, "a normal prior needs a numeric grid")
        z = (np.asarray(grid.points, dtype=float) - mean) / sd
        weights = np.exp(-0.5 * z * z) * grid.volumes
        if float(np.sum(weights)) <= 0.0:
            raise ConfigError(path, "normal prior has no mass on the grid")
        return MassTable.from_weights(grid, weights), NormalPrior(mean, sd * sd)
    raise ConfigError(f"{path}.family", f"unknown prior family {family!r}")


def _resolve_model(section, grid: ParamGrid, path: str):
    if not isinstance(section, dict):
        raise ConfigError(path, "expected an object")
    family = _require(section, "family", path)
    if family == "bernoulli":
        if not grid.is_numeric:
            raise ConfigError(path, "a bernoulli model needs a numeric grid")
        values = np.asarray(grid.points, dtype=float)
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ConfigError(path, "bernoulli success probabilities must lie in [0, 1]")
        return bernoulli_model(grid.points)
    if family == "gaussian_mean":
        return "gaussian_mean"
    if family == "tabular":
        samples = _require(section, "sample_points", path)
        likelihood = _require(section, "likelihood", path)
        volumes = section.get("sample_volumes", [1.0] * len(samples))
        pts = tuple(tuple(p) if isinstance(p, list) else p for p in samples)
        try:
            return TabularModel(grid.points, pts, np.asarray(likelihood, float), np.asarray(volumes, float))
        except Exception as exc:
            raise ConfigError(path, str(exc)) from exc
    raise ConfigError(f"{path}.family", f"unknown model family {family!r}")


def _read_csv_column(path_value: str, column, base_dir: Path, path: str) -> list[float]:
    file_path = (base_dir / path_value).resolve()
    if not file_path.exists():
        raise ConfigError(path, f"referenced file does not exist: {file_path}")
    with open(file_path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(path, "data file is empty") from None
        if isinstance(column, str):
            if column not in header:
                raise ConfigError(path, f"column {column!r} not in header {header}")
            idx = header.index(column)
        else:
            idx = _integer(column, f"{path}.column", minimum=0)
            if idx >= len(header):
                raise ConfigError(path, f"column index {idx} out of range")
        values = []
        for row_no, row in enumerate(reader, start=2):
            try:
                values.append(float(row[idx]))
            except (IndexError, ValueError) as exc:
                raise ConfigError(path, f"line {row_no}: bad value in column {idx}") from exc
    if not values:
        raise ConfigError(path, "data file holds no rows")
    return values


def _resolve_data(section, family, base_dir: Path, path: str) -> tuple[tuple, object, int | None]:
    """Returns (raw observations, observed summary, gaussian n)."""
    if not isinstance(section, dict):
        raise ConfigError(path, "expected an object")
    if "csv" in section:
        values = _read_csv_column(section["csv"], section.get("column", 0), base_dir, path)
        section = {"values": values}
    if "values" in section:
        values = section["values"]
        if not isinstance(values, list) or not values:
            raise ConfigError(f"{path}.values", "expected a nonempty list")
        obs = tuple(tuple(v) if isinstance(v, list) else v for v in values)
        if family == "gaussian_mean":
            numeric = [_number(v, f"{path}.values") for v in obs]
            return obs, math.fsum(numeric) / len(numeric), len(numeric)
        return obs, (obs[0] if len(obs) == 1 else list(obs)), None
    if "mean" in section:
        if family != "gaussian_mean":
            raise ConfigError(path, "mean/n data is only for the gaussian_mean model")
        mean = _number(section["mean"], f"{path}.mean")
        n = _integer(_require(section, "n", path), f"{path}.n", minimum=1)
        return (mean,), mean, n
    raise ConfigError(path, "expected values, mean/n, or a csv reference")


def resolve(config: dict, base_dir: Path | str = ".") -> ResolvedAnalysis:
    """Validate a raw config mapping into an executable plan."""
    if not isinstance(config, dict):
        raise ConfigError("config", "top level must be an object")
    base_dir = Path(base_dir)

    grid = _resolve_grid(_require(config, "grid", "config"), "config.grid")
    model_or_tag = _resolve_model(_require(config, "model", "config"), grid, "config.model")
    prior, analytic_prior = _resolve_prior(_require(config, "prior", "config"), grid, "config.prior")
    family = config["model"]["family"]
    observations, observed_summary, gaussian_n = _resolve_data(
        _require(config, "data", "config"), family, base_dir, "config.data"
    )
    if model_or_tag == "gaussian_mean":
        n = config["model"].get("n", gaussian_n)
        if n is None:
            raise ConfigError("config.model.n", "gaussian_mean needs n (or data values to infer it)")
        n = _integer(n, "config.model.n", minimum=1)
        if gaussian_n is not None and "n" in config["model"] and n != gaussian_n:
            raise ConfigError("config.model.n", f"n={n} disagrees with the {gaussian_n} data values")
        model: EvalModel = GaussianMeanModel(n)
    else:
        model = model_or_tag

    mapping = None
    if "map" in config and config["map"] is not None:
        section = config["map"]
        if not isinstance(section, dict):
            raise ConfigError("config.map", "expected an object")
        if "values" in section:
            values = section["values"]
            if not isinstance(values, list) or len(values) != len(grid):
                raise ConfigError("config.map.values", f"expected {len(grid)} values")
            mapping = MarginalMap.from_assignment(grid, tuple(values))
        else:
            name = _require(section, "transform", "config.map")
            if name not in NAMED_TRANSFORMS:
                raise ConfigError(
                    "config.map.transform",
                    f"unknown transform {name!r}; known: {sorted(NAMED_TRANSFORMS)}",
                )
            if name != "identity" and not grid.is_numeric:
                raise ConfigError("config.map.transform", f"{name!r} needs a numeric grid")
            mapping = MarginalMap.from_function(grid, NAMED_TRANSFORMS[name])

    hypotheses = []
    for i, entry in enumerate(config.get("hypotheses", [])):
        if not isinstance(entry, dict) or "value" not in entry:
            raise ConfigError(f"config.hypotheses[{i}]", "expected an object with a value")
        value = entry["value"]
        value = tuple(value) if isinstance(value, list) else value
        delta = entry.get("delta", 0.0)
        if not isinstance(delta, (int, float)) or isinstance(delta, bool) or delta < 0:
            raise ConfigError(f"config.hypotheses[{i}].delta", "must be a number >= 0")
        codomain = mapping.codomain if mapping is not None else grid
        try:
            codomain.index_of(value)
        except Exception:
            raise ConfigError(
                f"config.hypotheses[{i}].value", f"{value!r} is not a grid (or codomain) point"
            ) from None
        hypotheses.append({"value": value, "delta": float(delta)})

    gamma = _number(config.get("gamma", 0.95), "config.gamma")
    if not 0.0 <= gamma <= 1.0:
        raise ConfigError("config.gamma", "must be in [0, 1]")
    q = _number(config.get("q", 1.0), "config.q")
    if q < 0.0:
        raise ConfigError("config.q", "must be >= 0")
    variant = config.get("strength_variant", "directional")
    if variant not in ("directional", "lower_tail"):
        raise ConfigError("config.strength_variant", f"unknown variant {variant!r}")
    seed = config.get("seed")
    if seed is not None:
        seed = _integer(seed, "config.seed", minimum=0)

    bias_spec = None
    if "bias" in config and config["bias"] is not None:
        section = config["bias"]
        if not isinstance(section, dict):
            raise ConfigError("config.bias", "expected an object")
        if not hypotheses:
            raise ConfigError("config.bias", "bias needs at least one hypothesis")
        method = section.get("method", "exact" if isinstance(model, TabularModel) else "quadrature")
        reps = _integer(section.get("reps", 100_000), "config.bias.reps", minimum=1)
        bias_seed = section.get("seed", seed)
        if method == "monte_carlo" and bias_seed is None:
            raise ConfigError("config.bias.seed", "monte_carlo requires a seed")
        alternatives = section.get("alternatives", [])
        if not isinstance(alternatives, list):
            raise ConfigError("config.bias.alternatives", "expected a list")
        alts = tuple(tuple(a) if isinstance(a, list) else a for a in alternatives)
        try:
            bias_spec = BiasSpec(
                hypothesis=hypotheses[0]["value"],
                alternatives=alts,
                meaningful_difference=hypotheses[0]["delta"],
                method=method,
                reps=reps,
                seed=0 if bias_seed is None else int(bias_seed),
            )
        except Exception as exc:
            raise ConfigError("config.bias", str(exc)) from exc

    echo = {
        "model": config["model"],
        "grid": config["grid"],
        "prior": config["prior"],
        "map": config.get("map"),
        "data": config["data"],
        "hypotheses": hypotheses,
        "gamma": gamma,
        "q": q,
        "strength_variant": variant,
        "bias": config.get("bias"),
        "seed": seed,
        "comparisons": bool(config.get("comparisons", True)),
    }
    return ResolvedAnalysis(
        echo=echo,
        model=model,
        grid=grid,
        prior=prior,
        mapping=mapping,
        observations=observations,
        observed_summary=observed_summary,
        hypotheses=tuple(hypotheses),
        gamma=gamma,
        q=q,
        strength_variant=variant,
        bias=bias_spec,
        bias_prior=analytic_prior if analytic_prior is not None else prior,
        seed=seed,
        comparisons=bool(config.get("comparisons", True)),
    )


def load_config(path: Path | str) -> dict:
    path = Path(path)
    if not path.exists():
        raise ConfigError("config", f"file does not exist: {path}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
