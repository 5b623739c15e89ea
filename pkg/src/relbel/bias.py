"""A-priori bias of a prior-model pair: probabilities of misleading evidence.

Bias against a hypothesis value is the probability, with data generated
from that value's conditional prior predictive, that the evidence does
not come out in its favor (relative belief ratio <= 1). The same event
probability computed under a meaningfully different value is the bias in
favor: if it is small, the prior stacks the deck for the hypothesis.

Three backends: exact enumeration on tabular models, numeric inversion of
the evidence boundary plus normal tails on the gaussian-mean model, and
seeded Monte Carlo. They are implemented independently so they can check
each other. Bias is a post-hoc diagnostic of an elicited prior; nothing
here tunes a prior to look unbiased.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping

import numpy as np
from scipy.optimize import brentq

from .errors import NumericError, ValidationError
from .grids import MarginalMap, MassTable, Point, normal_cdf
from .models import GaussianMeanModel, TabularModel
from .sampling import bernoulli_mc

Method = Literal["exact", "quadrature", "monte_carlo"]

@dataclass(frozen=True)
class NormalPrior:
    """Analytic normal slab for the gaussian-mean backend."""

    mean: float
    variance: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and math.isfinite(self.variance)):
            raise ValidationError("NormalPrior: mean and variance must be finite")
        if self.variance <= 0.0:
            raise ValidationError("NormalPrior: variance must be positive")


@dataclass(frozen=True)
class BiasSpec:
    """What to measure: hypothesis value, alternatives, and the backend."""

    hypothesis: Point
    alternatives: tuple = ()
    meaningful_difference: float = 0.0
    method: Method = "exact"
    reps: int = 100_000
    seed: int = 0

    def __post_init__(self) -> None:
        alts = tuple(self.alternatives)
        if self.method not in ("exact", "quadrature", "monte_carlo"):
            raise ValidationError(f"BiasSpec: unknown method {self.method!r}")
        if self.method == "monte_carlo" and self.reps < 1:
            raise ValidationError("BiasSpec: reps must be positive")
        delta = float(self.meaningful_difference)
        for alt in alts:
            if alt == self.hypothesis:
                raise ValidationError("BiasSpec: alternatives must differ from the hypothesis")
            if delta > 0.0:
                try:
                    gap = abs(float(alt) - float(self.hypothesis))
                except (TypeError, ValueError):
                    continue
                if gap < delta:
                    raise ValidationError(
                        f"BiasSpec: alternative {alt!r} is within the meaningful "
                        f"difference {delta} of the hypothesis"
                    )
        object.__setattr__(self, "alternatives", alts)


@dataclass(frozen=True)
class BiasResult:
    against: float
    in_favor: Mapping[Point, float]
    std_errors: Mapping[str, float] = field(default_factory=dict)
    method: Method = "exact"


# ---------------------------------------------------------------------------
# evidence-against event
# ---------------------------------------------------------------------------


def _tabular_event(
    model: TabularModel, prior: MassTable, mapping: MarginalMap, hypothesis: Point
) -> tuple[np.ndarray, np.ndarray]:
    """Per-sample indicator of {rb(hypothesis) <= 1} and the conditional masses.

    Returns (indicator over sample points, probability of each sample
    under the hypothesis-conditional predictive).
    """
    if prior.grid.points != model.param_points:
        raise ValidationError("bias: prior grid must match the tabular model rows")
    dense = (
        model.likelihood.toarray()
        if hasattr(model.likelihood, "toarray")
        else np.asarray(model.likelihood, dtype=float)
    )
    cond_mass, cond_dens = _conditional_predictive_tabular(model, prior, mapping, hypothesis, dense)
    m_x = prior.masses @ dense
    indicator = cond_dens <= m_x
    return indicator, cond_mass


def _conditional_predictive_tabular(
    model: TabularModel,
    prior: MassTable,
    mapping: MarginalMap,
    value: Point,
    dense: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    try:
        idx = mapping.codomain.index_of(value)
    except ValidationError:
        idx = None
    if idx is not None:
        pre = list(mapping.preimages[idx])
        slice_mass = float(np.sum(prior.masses[pre]))
        if slice_mass > 0.0:
            dens = (prior.masses[pre] @ dense[pre]) / slice_mass
            return dens * model.sample_volumes, dens
    if mapping.assignment != mapping.grid.points:
        raise NumericError(
            f"bias: zero prior mass on the slice of {value!r} under a non-identity map"
        )
    try:
        dens = model.row_densities(value)
    except ValidationError as exc:
        raise NumericError(f"bias: cannot form a predictive for {value!r}") from exc
    return dens * model.sample_volumes, dens


def _gaussian_log_margin(model: GaussianMeanModel, prior, t: np.ndarray) -> np.ndarray:
    """log prior predictive density of the sample mean at t."""
    n = model.n
    if isinstance(prior, NormalPrior):
        var = prior.variance + 1.0 / n
        return -0.5 * (t - prior.mean) ** 2 / var - 0.5 * math.log(2.0 * math.pi * var)
    if isinstance(prior, MassTable):
        thetas = np.asarray(prior.grid.points, dtype=float)
        z2 = (t[:, None] - thetas[None, :]) ** 2 * n
        log_terms = -0.5 * z2 + 0.5 * math.log(n / (2.0 * math.pi))
        with np.errstate(divide="ignore"):
            log_w = np.where(prior.masses > 0, np.log(prior.masses), -np.inf)
        peak = np.max(log_terms + log_w, axis=1)
        return peak + np.log(np.sum(np.exp(log_terms + log_w - peak[:, None]), axis=1))
    raise ValidationError("bias: gaussian backend needs a NormalPrior or MassTable prior")


def _gaussian_log_conditional(model: GaussianMeanModel, hypothesis: float, t: np.ndarray) -> np.ndarray:
    n = model.n
    return -0.5 * (t - float(hypothesis)) ** 2 * n + 0.5 * math.log(n / (2.0 * math.pi))


def _gaussian_favor_interval(
    model: GaussianMeanModel, prior, hypothesis: float
) -> tuple[float, float] | None:
    """Interval of sample means where the evidence favors the hypothesis.

    Solves rb(hypothesis | t) = 1 numerically from the interval's interior
    outward. Returns None when no sample mean favors it (then the bias
    probabilities are 1).
    """
    n = model.n
    h = float(hypothesis)

    def gap(t: float) -> float:
        arr = np.array([t], dtype=float)
        return float(_gaussian_log_conditional(model, h, arr)[0] - _gaussian_log_margin(model, prior, arr)[0])

    center = h
    if gap(center) <= 0.0:
        # search a little around the hypothesis before giving up
        span = 1.0 / math.sqrt(n)
        candidates = [h + k * span for k in (-2, -1, 1, 2)]
        center = max(candidates, key=gap)
        if gap(center) <= 0.0:
            return None
    span = 4.0 / math.sqrt(n)
    lo = center - span
    while gap(lo) > 0.0:
        span *= 2.0
        lo = center - span
        if span > 1e9:
            raise NumericError("bias: could not bracket the evidence boundary")
    left = brentq(gap, lo, center, xtol=1e-13, maxiter=200)
    span = 4.0 / math.sqrt(n)
    hi = center + span
    while gap(hi) > 0.0:
        span *= 2.0
        hi = center + span
        if span > 1e9:
            raise NumericError("bias: could not bracket the evidence boundary")
    right = brentq(gap, center, hi, xtol=1e-13, maxiter=200)
    return float(left), float(right)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _event_probability(
    model,
    prior,
    mapping: MarginalMap | None,
    spec: BiasSpec,
    data_value: Point,
) -> tuple[float, float | None]:
    """P(evidence against hypothesis | data generated from data_value)."""
    if isinstance(model, TabularModel):
        if not isinstance(prior, MassTable):
            raise ValidationError("bias: tabular backend needs a MassTable prior")
        mapping = mapping or MarginalMap.identity(prior.grid)
        dense = (
            model.likelihood.toarray()
            if hasattr(model.likelihood, "toarray")
            else np.asarray(model.likelihood, dtype=float)
        )
        indicator, _ = _tabular_event(model, prior, mapping, spec.hypothesis)
        gen_mass, _ = _conditional_predictive_tabular(model, prior, mapping, data_value, dense)
        if spec.method in ("exact", "quadrature"):
            return float(np.sum(gen_mass[indicator])), None
        probs = gen_mass / float(np.sum(gen_mass))

        def chunk(rng: np.random.Generator, count: int) -> int:
            draws = rng.choice(len(probs), size=count, p=probs)
            return int(np.sum(indicator[draws]))

        est = bernoulli_mc(spec.reps, spec.seed, chunk)
        return est.estimate, est.std_error

    if isinstance(model, GaussianMeanModel):
        if mapping is not None and mapping.assignment != mapping.grid.points:
            raise ValidationError("bias: gaussian backend supports the identity map only")
        if spec.method == "exact":
            raise ValidationError("bias: exact enumeration needs a tabular model")
        interval = _gaussian_favor_interval(model, prior, float(spec.hypothesis))
        gen_mean = float(data_value)
        sd = 1.0 / math.sqrt(model.n)
        if spec.method == "quadrature":
            if interval is None:
                return 1.0, None
            left, right = interval
            p = normal_cdf((left - gen_mean) / sd) + 1.0 - normal_cdf((right - gen_mean) / sd)
            return float(p), None

        h = float(spec.hypothesis)

        def chunk(rng: np.random.Generator, count: int) -> int:
            t = rng.normal(gen_mean, sd, size=count)
            against = _gaussian_log_conditional(model, h, t) <= _gaussian_log_margin(
                model, prior, t
            )
            return int(np.sum(against))

        est = bernoulli_mc(spec.reps, spec.seed, chunk)
        return est.estimate, est.std_error

    raise ValidationError(f"bias: unsupported model type {type(model).__name__}")


def bias_against(model, prior, mapping: MarginalMap | None, spec: BiasSpec) -> float:
    """Probability of missing evidence for the hypothesis when it is true."""
    value, _ = _event_probability(model, prior, mapping, spec, spec.hypothesis)
    return value


def bias_in_favor(model, prior, mapping: MarginalMap | None, spec: BiasSpec) -> dict:
    """Per-alternative probability of missing evidence against the hypothesis.

    Small values mean the prior makes it hard to find evidence against
    the hypothesis even when a meaningfully different value is true.
    """
    if not spec.alternatives:
        raise ValidationError("bias_in_favor: spec lists no alternatives")
    out = {}
    for alt in spec.alternatives:
        value, _ = _event_probability(model, prior, mapping, spec, alt)
        out[alt] = value
    return out


def measure_bias(model, prior, mapping: MarginalMap | None, spec: BiasSpec) -> BiasResult:
    """Bias against and in favor in one pass, with MC standard errors."""
    against, se_against = _event_probability(model, prior, mapping, spec, spec.hypothesis)
    in_favor: dict = {}
    errors: dict = {}
    if se_against is not None:
        errors["against"] = se_against
    for alt in spec.alternatives:
        value, se = _event_probability(model, prior, mapping, spec, alt)
        in_favor[alt] = value
        if se is not None:
            errors[f"in_favor:{alt}"] = se
    return BiasResult(against=against, in_favor=in_favor, std_errors=errors, method=spec.method)


def jl_bias_closed_form(n: int, sigma2: float, theta: float) -> float:
    """Closed-form bias probability for the normal-mean spike at zero.

    Probability that the evidence comes out against the spike when the
    sample mean is generated from ``theta``. The cutoff in z units is
    ``sqrt((1 + 1/(n sigma2)) log(1 + n sigma2))``, obtained by solving
    the spike Bayes factor <= 1; it is validated against the Monte Carlo
    backend in the test suite rather than trusted on its own.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValidationError("jl_bias_closed_form: n must be an integer >= 1")
    sigma2 = float(sigma2)
    if sigma2 <= 0.0 or not math.isfinite(sigma2):
        raise ValidationError("jl_bias_closed_form: sigma2 must be finite and > 0")
    s = n * sigma2
    cutoff = math.sqrt(max(0.0, (1.0 + 1.0 / s) * math.log(1.0 + s)))
    shift = float(theta) * math.sqrt(n)
    return 1.0 - normal_cdf(cutoff - shift) + normal_cdf(-cutoff - shift)


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    against: float
    in_favor: float


def bias_convergence_study(
    sigma2: float,
    hypothesis: float,
    alternative: float,
    n_list: tuple[int, ...] | list[int],
    slab_mean: float = 0.0,
) -> tuple[ConvergenceRow, ...]:
    """Bias against and in favor along a ladder of sample sizes.

    With a fixed normal slab, more data drive the bias against the true
    value to 0 and the bias in favor (under the alternative) to 1; the
    default ladder in the command line and tests renders that crossing at
    desk scale.
    """
    if float(alternative) == float(hypothesis):
        raise ValidationError("bias_convergence_study: alternative must differ from hypothesis")
    rows = []
    for n in n_list:
        model = GaussianMeanModel(int(n))
        prior = NormalPrior(mean=float(slab_mean), variance=float(sigma2))
        spec = BiasSpec(
            hypothesis=float(hypothesis),
            alternatives=(float(alternative),),
            method="quadrature",
        )
        against, _ = _event_probability(model, prior, None, spec, float(hypothesis))
        favor, _ = _event_probability(model, prior, None, spec, float(alternative))
        rows.append(ConvergenceRow(n=int(n), against=against, in_favor=favor))
    return tuple(rows)
