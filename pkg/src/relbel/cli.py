"""Command line entry points.

Verbs:

* ``analyze`` runs a config-driven evidence analysis and writes
  report.json, rb_curve.csv, regions.csv, bias.csv (when configured) and
  rb_plot.svg into the output directory.
* ``paradox <name>`` reproduces the stock pathologies as tables and
  figures: jeffreys-lindley, likelihood-word, confidence-mixture,
  optional-stopping, map-invariance, birnbaum.
* ``principles enumerate|check`` enumerates finite inference bases and
  verifies the sufficiency/conditionality/likelihood containments.

Exit codes: 0 success, 2 configuration or usage error, 3 numeric failure.
Every run is a pure function of its flags and seeds; outputs are
byte-reproducible.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import plotting
from .bayes import jeffreys_label, jl_bayes_factor, jl_strength, spike_slab_bf
from .bias import jl_bias_closed_form, measure_bias
from .config import ResolvedAnalysis, load_config, resolve
from .errors import ConfigError, NumericError, RelbelError, ValidationError
from .evidence import (
    gamma_region,
    mrbe,
    plausible_region,
    rb_curve,
    strength,
    strength_curve,
    verdict_for,
)
from .frequentist import (
    MixtureModelSpec,
    TestSpec,
    mixture_region_demo,
    optional_stopping_quadrature,
    optional_stopping_sim,
    p_value,
)
from .bayes import SpikeSlabPrior, bayes_factor, map_estimate
from .grids import MassTable, ParamGrid, condition, make_uniform_grid, pushforward
from .likelihood import LikelihoodCurve, WordModelSpec, likelihood_region, mle, word_model
from .models import GaussianMeanModel
from .principles import enumerate_universe, format_base, verify_birnbaum
from .report import validate_report, write_csv, write_json

ROYALL_GAMMA = 7.0 / 8.0  # relative likelihood 1/8, shipped only as a preset


def _point_json(point):
    if isinstance(point, tuple):
        return [_point_json(p) for p in point]
    if isinstance(point, (np.integer,)):
        return int(point)
    if isinstance(point, (np.floating,)):
        return float(point)
    return point


def _finite_or_none(value: float):
    value = float(value)
    return None if (math.isnan(value) or math.isinf(value)) else value


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _posterior(resolved: ResolvedAnalysis) -> MassTable:
    if isinstance(resolved.model, GaussianMeanModel):
        return condition(resolved.prior, resolved.model, resolved.observed_summary)
    table = resolved.prior
    for value in resolved.observations:
        table = condition(table, resolved.model, value)
    return table


def _likelihood_values(resolved: ResolvedAnalysis) -> np.ndarray:
    if isinstance(resolved.model, GaussianMeanModel):
        return np.asarray(
            resolved.model.likelihood_column(resolved.grid, resolved.observed_summary), float
        )
    values = np.ones(len(resolved.grid))
    for observation in resolved.observations:
        values = values * np.asarray(
            resolved.model.likelihood_column(resolved.grid, observation), float
        )
    return values


def _comparisons(resolved: ResolvedAnalysis, posterior: MassTable) -> dict:
    out: dict = {}
    estimate = map_estimate(posterior)
    out["map_estimate"] = {
        "value": _point_json(estimate.value),
        "index": estimate.index,
        "tied": estimate.tied,
    }
    try:
        curve = LikelihoodCurve(resolved.grid, _likelihood_values(resolved))
        top = mle(curve)
        region = likelihood_region(curve, ROYALL_GAMMA)
        out["mle"] = {"value": _point_json(top.value), "tied": top.tied}
        out["likelihood_region"] = {
            "gamma": ROYALL_GAMMA,
            "note": "relative likelihood >= 1/8, a conventional preset",
            "points": [_point_json(p) for p in region],
        }
    except RelbelError:
        pass
    per_hypothesis = []
    for entry in resolved.hypotheses:
        value = entry["value"]
        block: dict = {"hypothesis": _point_json(value)}
        if resolved.mapping is None:
            subset = lambda p, v=value: p == v
            prior_table, post_table = resolved.prior, posterior
        else:
            assign = dict(zip(resolved.mapping.grid.points, resolved.mapping.assignment))
            subset = lambda p, v=value: assign[p] == v
            prior_table, post_table = resolved.prior, posterior
        try:
            bf = bayes_factor(prior_table, post_table, subset)
            block["bayes_factor"] = _finite_or_none(bf.bf)
            if block["bayes_factor"] is not None:
                block["conventional_scale"] = jeffreys_label(bf.bf)
        except RelbelError as exc:
            block["bayes_factor"] = None
            block["bayes_factor_note"] = str(exc)
        if isinstance(resolved.model, GaussianMeanModel) and resolved.mapping is None:
            block["p_value_two_sided_z"] = p_value(
                TestSpec("z", "two_sided"),
                resolved.model,
                resolved.observed_summary,
                float(value),
            )
        per_hypothesis.append(block)
    if per_hypothesis:
        out["hypotheses"] = per_hypothesis
    out["note"] = "conventional scales (critiqued by the methodology)"
    return out


def run_analyze(config_path: str, out_dir: str, seed_override: int | None = None) -> int:
    raw = load_config(config_path)
    if seed_override is not None:
        raw = dict(raw)
        raw["seed"] = seed_override
    resolved = resolve(raw, Path(config_path).parent)
    out = Path(out_dir)

    posterior = _posterior(resolved)
    curve = rb_curve(resolved.prior, posterior, resolved.mapping)
    strengths = strength_curve(curve, resolved.strength_variant)
    estimate = mrbe(curve)
    g_region = gamma_region(curve, resolved.gamma)
    p_region = plausible_region(curve, resolved.q)

    verdicts = []
    for entry in resolved.hypotheses:
        value = entry["value"]
        rb_value = curve.value_at(value)
        s = strength(curve, value, resolved.strength_variant)
        verdict = verdict_for(rb_value, s, resolved.strength_variant)
        verdicts.append(
            {
                "hypothesis": _point_json(value),
                "meaningful_difference": entry["delta"],
                "rb": _finite_or_none(rb_value),
                "direction": verdict.direction,
                "strength": s,
                "strength_variant": resolved.strength_variant,
            }
        )

    bias_block = None
    if resolved.bias is not None:
        prior_for_bias = (
            resolved.bias_prior if isinstance(resolved.model, GaussianMeanModel) else resolved.prior
        )
        result = measure_bias(resolved.model, prior_for_bias, resolved.mapping, resolved.bias)
        bias_block = {
            "method": result.method,
            "hypothesis": _point_json(resolved.bias.hypothesis),
            "against": result.against,
            "in_favor": [
                {"alternative": _point_json(alt), "probability": value}
                for alt, value in result.in_favor.items()
            ],
            "std_errors": {key: value for key, value in result.std_errors.items()},
        }

    report = {
        "schema_version": 1,
        "config": resolved.echo,
        "posterior": {
            "points": [_point_json(p) for p in resolved.grid.points],
            "masses": posterior.masses.tolist(),
        },
        "rb_curve": {
            "points": [_point_json(p) for p in curve.grid.points],
            "prior_mass": curve.prior_mass.tolist(),
            "posterior_mass": curve.posterior_mass.tolist(),
            "rb": [_finite_or_none(v) for v in curve.rb.tolist()],
        },
        "mrbe": {
            "value": _point_json(estimate.value),
            "index": estimate.index,
            "tied": estimate.tied,
        },
        "verdicts": verdicts,
        "regions": {
            "gamma_region": {
                "gamma": resolved.gamma,
                "threshold_rb": _finite_or_none(g_region.threshold),
                "points": [_point_json(p) for p in g_region.points],
                "content": g_region.content,
            },
            "plausible_region": {
                "q": resolved.q,
                "points": [_point_json(p) for p in p_region.points],
                "content": p_region.content,
            },
        },
        "bias": bias_block,
        "comparisons": _comparisons(resolved, posterior) if resolved.comparisons else None,
    }
    validate_report(report)
    write_json(out / "report.json", report)

    rows = []
    for i, point in enumerate(curve.grid.points):
        rb_i = _finite_or_none(curve.rb[i])
        verdict = verdict_for(curve.rb[i]).direction if rb_i is not None else "undefined"
        strength_i = _finite_or_none(strengths[i])
        rows.append(
            (
                _csv_point(point),
                float(curve.prior_mass[i]),
                float(curve.posterior_mass[i]),
                rb_i,
                verdict,
                strength_i,
            )
        )
    write_csv(out / "rb_curve.csv", ("psi", "prior_mass", "posterior_mass", "rb", "verdict", "strength"), rows)

    region_rows = []
    for region, threshold in ((g_region, resolved.gamma), (p_region, resolved.q)):
        for point in region.points:
            region_rows.append((region.kind, float(threshold), region.content, _csv_point(point)))
    write_csv(out / "regions.csv", ("kind", "threshold", "content", "point"), region_rows)

    if bias_block is not None:
        bias_rows = [
            (
                "against",
                _csv_point(resolved.bias.hypothesis),
                "",
                bias_block["against"],
                bias_block["std_errors"].get("against"),
                bias_block["method"],
            )
        ]
        for item in bias_block["in_favor"]:
            bias_rows.append(
                (
                    "in_favor",
                    _csv_point(resolved.bias.hypothesis),
                    _csv_point(item["alternative"]),
                    item["probability"],
                    bias_block["std_errors"].get(f"in_favor:{item['alternative']}"),
                    bias_block["method"],
                )
            )
        write_csv(
            out / "bias.csv",
            ("kind", "hypothesis", "alternative", "probability", "std_error", "method"),
            bias_rows,
        )

    plotting.rb_figure(
        out / "rb_plot.svg",
        curve.grid.points,
        curve.prior_mass,
        curve.posterior_mass,
        np.where(np.isnan(curve.rb), 0.0, curve.rb),
    )
    print(f"analyze: wrote report.json and tables to {out}")
    print(f"analyze: MRBE = {estimate.value!r}, gamma-region content = {g_region.content:.6g}")
    return 0


def _csv_point(point) -> str:
    if isinstance(point, tuple):
        return "(" + " ".join(str(p) for p in point) + ")"
    return str(point)


# ---------------------------------------------------------------------------
# paradox runners
# ---------------------------------------------------------------------------


def run_jeffreys_lindley(args) -> int:
    out = Path(args.out)
    n, sigma2, zbar = args.n, args.sigma2, args.zbar
    xbar = zbar / math.sqrt(n)
    sweep = sorted(set([1.0, 10.0, 100.0, float(sigma2), 1e4, 1e6]))
    rows = []
    for s2 in sweep:
        rows.append(
            (
                s2,
                jl_bayes_factor(n, s2, zbar),
                jl_strength(n, s2, zbar),
                jl_bias_closed_form(n, s2, 0.0),
                jl_bias_closed_form(n, s2, xbar),
            )
        )
    write_csv(
        out / "jl_table.csv",
        ("sigma2", "bf_rb", "strength", "bias_against", "bias_in_favor"),
        rows,
    )

    cells = int(args.grid_cells)
    if cells % 2:
        cells += 1  # keep zero off the midpoint grid so the slab can exclude it
    span = 8.0 * math.sqrt(sigma2)
    slab_grid = make_uniform_grid(-span, span, cells)
    z = np.asarray(slab_grid.points) / math.sqrt(sigma2)
    slab = MassTable.from_weights(slab_grid, np.exp(-0.5 * z * z))
    model = GaussianMeanModel(n)
    grid_bf = spike_slab_bf(model, SpikeSlabPrior(0.5, 0.0, slab), xbar).bf
    posterior = condition(slab, model, xbar)
    slab_curve = rb_curve(slab, posterior)
    near_zero = slab_grid.points[slab_grid.nearest_index(0.0)]
    grid_strength = strength(slab_curve, near_zero, "lower_tail")
    closed_bf = jl_bayes_factor(n, sigma2, zbar)
    closed_strength = jl_strength(n, sigma2, zbar)
    check = {
        "n": n,
        "zbar": zbar,
        "sigma2": sigma2,
        "xbar": xbar,
        "alternative": xbar,
        "closed_form": {
            "bf_rb": closed_bf,
            "strength": closed_strength,
            "bias_against": jl_bias_closed_form(n, sigma2, 0.0),
            "bias_in_favor": jl_bias_closed_form(n, sigma2, xbar),
            "conventional_scale": jeffreys_label(closed_bf),
        },
        "grid_check": {
            "cells": cells,
            "span_sds": 8.0,
            "bf_rb": grid_bf,
            "strength": grid_strength,
            "bf_relative_error": abs(grid_bf - closed_bf) / closed_bf,
        },
    }
    write_json(out / "jl_check.json", check)
    plotting.jl_figure(
        out / "jl_sweep.svg",
        [r[0] for r in rows],
        [r[1] for r in rows],
        [r[2] for r in rows],
        [r[3] for r in rows],
        [r[4] for r in rows],
    )
    print(
        f"jeffreys-lindley: sigma2={sigma2:g} BF=RB={closed_bf:.2f} "
        f"strength={closed_strength:.2f} bias_against={check['closed_form']['bias_against']:.4f} "
        f"bias_in_favor={check['closed_form']['bias_in_favor']:.2f}"
    )
    print(
        f"jeffreys-lindley: grid check ({cells} cells) BF={grid_bf:.4f} "
        f"rel_err={check['grid_check']['bf_relative_error']:.2e} strength={grid_strength:.4f}"
    )
    return 0


def run_likelihood_word(args) -> int:
    out = Path(args.out)
    spec = WordModelSpec(args.k, args.word_length, Fraction(args.delta))
    model, meta = word_model(spec, state_cap=args.state_cap)
    observed = args.observed if args.observed is not None else ",".join(["1"] * args.word_length)
    if observed not in meta.lengths:
        raise ConfigError("observed", f"{observed!r} is not a word of this model")
    grid = ParamGrid(meta.words, np.ones(len(meta.words)))
    curve = LikelihoodCurve(grid, np.asarray(model.likelihood_column(grid, observed), float))
    region = likelihood_region(curve, args.gamma)
    top = mle(curve)
    parent = meta.parents[observed]

    support = [w for w, v in zip(meta.words, curve.values) if v > 0.0]
    top_value = float(np.max(curve.values))
    rows = [
        (w or "<empty>", meta.lengths[w], float(curve.values[grid.index_of(w)]) / top_value,
         w in region)
        for w in support
    ]
    write_csv(
        out / "word_region.csv",
        ("word", "length", "relative_likelihood", "in_region"),
        rows,
    )
    exact = meta.truncation_probability(parent)
    summary = {
        "alphabet_size": spec.alphabet_size,
        "max_length": spec.max_length,
        "delta": str(spec.delta),
        "gamma": args.gamma,
        "observed": observed or "<empty>",
        "mle": (top.value or "<empty>"),
        "region": [w or "<empty>" for w in region],
        "region_is_single_point": len(region) == 1,
        "truncated_value": parent or "<empty>",
        "prob_truncated_next": {"exact": str(exact), "float": float(exact)},
        "note": (
            "the region excludes the chopped word even though the process lands on "
            "a one-letter extension of the true word with the probability shown"
        ),
    }
    write_json(out / "word_summary.json", summary)
    print(
        f"likelihood-word: region={summary['region']} "
        f"P(next state extends truth)={float(exact):.4f} (exact {exact})"
    )
    return 0


def run_confidence_mixture(args) -> int:
    out = Path(args.out)
    grid = make_uniform_grid(0.0, 1.0, args.cells)
    spec = MixtureModelSpec(grid, args.shift)
    xs = np.linspace(args.x_min, args.x_max, args.x_count)
    demo = mixture_region_demo(spec, args.alpha, xs.tolist())
    rows = [
        (row.x, row.classification, row.theta_low, row.theta_high) for row in demo.rows
    ]
    write_csv(out / "mixture_region.csv", ("x", "region", "theta_low", "theta_high"), rows)
    window = demo.full_window
    summary = {
        "alpha": args.alpha,
        "shift": args.shift,
        "theta_cells": args.cells,
        "acceptance_interval": list(demo.acceptance_interval),
        "full_region_window": list(window) if window else None,
        "full_region_width": (window[1] - window[0]) if window else 0.0,
        "note": "inside the window the region is the entire parameter grid; outside it is empty",
    }
    write_json(out / "mixture_summary.json", summary)
    plotting.mixture_figure(
        out / "mixture_region.svg",
        [row.x for row in demo.rows],
        [row.classification for row in demo.rows],
        window,
    )
    left, right = demo.acceptance_interval
    print(f"confidence-mixture: region = [0,1] exactly for {left:.5f} <= x <= {right:.5f}")
    return 0


def run_optional_stopping(args) -> int:
    out = Path(args.out)
    result = optional_stopping_sim(args.alpha, args.n1, args.n2, args.reps, args.seed)
    quad = optional_stopping_quadrature(args.alpha, args.n1, args.n2)
    payload = {
        "alpha": result.alpha,
        "n1": result.n1,
        "n2": result.n2,
        "reps": result.reps,
        "seed": result.seed,
        "estimate": result.estimate,
        "std_error": result.std_error,
        "exceeds_alpha_by_3_se": result.exceeds_alpha,
        "quadrature": quad,
        "quadrature_gap_in_se": (
            abs(result.estimate - quad) / result.std_error if result.std_error else 0.0
        ),
    }
    write_json(out / "optional_stopping.json", payload)
    print(
        f"optional-stopping: P(reject at either look) = {result.estimate:.4f} "
        f"(+- {result.std_error:.4f}) vs alpha = {result.alpha}; quadrature {quad:.4f}"
    )
    return 0


def run_map_invariance(args) -> int:
    out = Path(args.out)
    grid = make_uniform_grid(0.0, 1.0, args.cells)
    theta = np.asarray(grid.points)
    posterior = MassTable.from_weights(grid, theta**2 * (1.0 - theta))
    before = map_estimate(posterior)
    pushed = pushforward(posterior, lambda t: t * t)
    after = map_estimate(pushed)
    transported = float(before.value) ** 2
    payload = {
        "cells": args.cells,
        "transform": "square",
        "map_before": float(before.value),
        "map_before_transformed": transported,
        "map_after": float(after.value),
        "argmax_moved": pushed.grid.nearest_index(transported) != after.index,
        "note": (
            "density argmax is not transport-invariant: the image cell volumes "
            "rescale by the local stretch of the transform"
        ),
    }
    write_json(out / "map_invariance.json", payload)
    print(
        f"map-invariance: argmax before^2 = {transported:.4f}, argmax after = "
        f"{float(after.value):.4f}, moved = {payload['argmax_moved']}"
    )
    return 0


def run_birnbaum(args) -> int:
    out = Path(args.out)
    report = verify_birnbaum(args.x_cap, 2, args.denominators)
    payload = {
        "max_sample_size": report.max_sample_size,
        "n_thetas": report.n_thetas,
        "denominator_cap": report.denominator_cap,
        "universe_size": report.universe_size,
        "l_pairs": report.l_pairs,
        "s_pairs": report.s_pairs,
        "c_pairs": report.c_pairs,
        "s_violations": report.s_violations,
        "c_violations": report.c_violations,
        "closure_pairs": report.closure_pairs,
        "closure_within_l": report.closure_within_l,
        "l_fraction_captured": report.l_fraction_captured,
        "c_nontransitive_witness_found": report.c_witness is not None,
    }
    write_json(out / "birnbaum_report.json", payload)
    if report.c_witness is not None:
        witness = report.c_witness
        text = (
            "conditionality is not transitive: related pairs (first, middle) and "
            "(middle, last), unrelated pair (first, last)\n\n"
            f"first (index {witness.first}):\n{witness.first_base}\n\n"
            f"middle (index {witness.middle}):\n{witness.middle_base}\n\n"
            f"last (index {witness.last}):\n{witness.last_base}\n"
        )
        from .report import atomic_write_text

        atomic_write_text(out / "birnbaum_witness.txt", text)
    print(
        f"birnbaum: universe={report.universe_size} S-violations={report.s_violations} "
        f"C-violations={report.c_violations} closure-within-L={report.closure_within_l} "
        f"L-fraction-captured={report.l_fraction_captured:.4f}"
    )
    return 0


def run_principles_enumerate(args) -> int:
    out = Path(args.out)
    bases = enumerate_universe(args.x_cap, 2, args.denominators)
    from .report import atomic_write_text

    atomic_write_text(out / "universe.txt", "\n\n".join(format_base(b) for b in bases) + "\n")
    by_size: dict[int, int] = {}
    for base in bases:
        by_size[base.n_samples] = by_size.get(base.n_samples, 0) + 1
    write_json(
        out / "universe_summary.json",
        {
            "max_sample_size": args.x_cap,
            "denominator_cap": args.denominators,
            "total": len(bases),
            "by_sample_size": {str(k): v for k, v in sorted(by_size.items())},
        },
    )
    print(f"principles enumerate: {len(bases)} bases written to {out}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relbel", description="measure statistical evidence with relative belief ratios"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="run a config-driven analysis")
    analyze.add_argument("--config", required=True, help="path to a JSON analysis config")
    analyze.add_argument("--out", default="relbel-out", help="output directory")
    analyze.add_argument("--seed", type=int, default=None, help="override the config seed")

    paradox = sub.add_parser("paradox", help="reproduce a classical pathology")
    psub = paradox.add_subparsers(dest="name", required=True)

    jl = psub.add_parser("jeffreys-lindley")
    jl.add_argument("--n", type=int, default=50)
    jl.add_argument("--sigma2", type=float, default=400.0)
    jl.add_argument("--zbar", type=float, default=1.96)
    jl.add_argument("--grid-cells", type=int, default=200_000)
    jl.add_argument("--out", default="relbel-out")

    word = psub.add_parser("likelihood-word")
    word.add_argument("--k", type=int, default=100)
    word.add_argument("--M", dest="word_length", type=int, default=2)
    word.add_argument("--delta", default="0.01", help="rational perturbation, e.g. 0.01 or 1/100")
    word.add_argument("--gamma", type=float, default=0.85)
    word.add_argument("--observed", default=None, help="word as comma-separated letters")
    word.add_argument("--state-cap", type=int, default=10**6)
    word.add_argument("--out", default="relbel-out")

    mix = psub.add_parser("confidence-mixture")
    mix.add_argument("--alpha", type=float, default=0.05)
    mix.add_argument("--shift", type=float, default=1.0)
    mix.add_argument("--cells", type=int, default=101)
    mix.add_argument("--x-min", type=float, default=-6.0)
    mix.add_argument("--x-max", type=float, default=7.0)
    mix.add_argument("--x-count", type=int, default=1301)
    mix.add_argument("--out", default="relbel-out")

    stop = psub.add_parser("optional-stopping")
    stop.add_argument("--alpha", type=float, default=0.05)
    stop.add_argument("--n1", type=int, default=50)
    stop.add_argument("--n2", type=int, default=50)
    stop.add_argument("--reps", type=int, default=100_000)
    stop.add_argument("--seed", type=int, default=0)
    stop.add_argument("--out", default="relbel-out")

    mapinv = psub.add_parser("map-invariance")
    mapinv.add_argument("--cells", type=int, default=40)
    mapinv.add_argument("--out", default="relbel-out")

    birn = psub.add_parser("birnbaum")
    birn.add_argument("--x-cap", type=int, default=3)
    birn.add_argument("--denominators", type=int, default=4)
    birn.add_argument("--out", default="relbel-out")

    principles = sub.add_parser("principles", help="finite inference-base relations")
    prsub = principles.add_subparsers(dest="mode", required=True)
    enum = prsub.add_parser("enumerate")
    enum.add_argument("--x-cap", type=int, default=3)
    enum.add_argument("--denominators", type=int, default=4)
    enum.add_argument("--out", default="relbel-out")
    check = prsub.add_parser("check")
    check.add_argument("--x-cap", type=int, default=3)
    check.add_argument("--denominators", type=int, default=4)
    check.add_argument("--out", default="relbel-out")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        if args.command == "analyze":
            return run_analyze(args.config, args.out, args.seed)
        if args.command == "paradox":
            runner = {
                "jeffreys-lindley": run_jeffreys_lindley,
                "likelihood-word": run_likelihood_word,
                "confidence-mixture": run_confidence_mixture,
                "optional-stopping": run_optional_stopping,
                "map-invariance": run_map_invariance,
                "birnbaum": run_birnbaum,
            }[args.name]
            return runner(args)
        if args.command == "principles":
            if args.mode == "enumerate":
                return run_principles_enumerate(args)
            return run_birnbaum(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
