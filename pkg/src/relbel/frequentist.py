"""Frequentist evidence machinery and its stock failure modes.

P-values, confidence regions by test inversion, the demonstration that a
p-value ignores sample size, the two-stage optional-stopping inflation,
and the two-component mixture whose best confidence region is either the
whole parameter space or nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Mapping, Sequence

import numpy as np
from scipy.optimize import brentq
from scipy.special import ndtr, ndtri

from .errors import NumericError, ValidationError
from .grids import ParamGrid, Point, normal_cdf
from .models import GaussianMeanModel, TabularModel
from .sampling import bernoulli_mc

Direction = Literal["greater", "two_sided"]


@dataclass(frozen=True)
class TestSpec:
    """A test statistic plus tail direction.

    ``statistic`` is either the string ``"z"`` (sample-mean z statistic on
    the gaussian backend) or a mapping from every tabular sample point to
    its statistic value.
    """

    __test__ = False  # despite the name, not a pytest class

    statistic: str | Mapping
    direction: Direction = "two_sided"

    def __post_init__(self) -> None:
        if isinstance(self.statistic, str):
            if self.statistic != "z":
                raise ValidationError(f"TestSpec: unknown named statistic {self.statistic!r}")
        elif not isinstance(self.statistic, Mapping):
            raise ValidationError("TestSpec: statistic must be 'z' or a value table")
        if self.direction not in ("greater", "two_sided"):
            raise ValidationError(f"TestSpec: unknown direction {self.direction!r}")


def p_value(test: TestSpec, model, observed: Point, theta: Point) -> float:
    """Tail probability of the statistic at the observed data under ``theta``.

    Tabular two-sided values double the smaller of the two tails, both
    taken inclusive of the observed atom, and cap at 1; that convention
    keeps the null distribution of the p-value subuniform on discrete
    sample spaces.
    """
    if isinstance(test.statistic, str):
        if not isinstance(model, GaussianMeanModel):
            raise ValidationError("p_value: the z statistic needs the gaussian mean backend")
        z = (float(observed) - float(theta)) * math.sqrt(model.n)
        if test.direction == "greater":
            return 1.0 - normal_cdf(z)
        return 2.0 * (1.0 - normal_cdf(abs(z)))

    if not isinstance(model, TabularModel):
        raise ValidationError("p_value: a tabular statistic needs a tabular model")
    table = test.statistic
    try:
        t_obs = float(table[observed])
    except KeyError as exc:
        raise ValidationError(f"p_value: statistic undefined at {observed!r}") from exc
    masses = model.row_masses(theta)
    values = []
    for x in model.sample_points:
        try:
            values.append(float(table[x]))
        except KeyError as exc:
            raise ValidationError(f"p_value: statistic undefined at {x!r}") from exc
    values_arr = np.asarray(values)
    upper = float(np.sum(masses[values_arr >= t_obs]))
    if test.direction == "greater":
        return min(upper, 1.0)
    lower = float(np.sum(masses[values_arr <= t_obs]))
    return min(1.0, 2.0 * min(upper, lower))


@dataclass(frozen=True)
class SampleSizeRow:
    n: int
    concentration: float
    p_value: float


def sample_size_insensitivity(
    theta0: float, n_list: Sequence[int], delta: float, z: float = 1.96
) -> tuple[SampleSizeRow, ...]:
    """Concentration of the sample mean vs. the p-value as n grows.

    The concentration column ``P(|mean - theta0| < delta)`` climbs to 1
    with n while the p-value of a fixed z score never moves: the p-value
    cannot register that virtually all mass sits within a meaningful
    distance of the null.
    """
    if float(delta) <= 0.0:
        raise ValidationError("sample_size_insensitivity: delta must be positive")
    if len(n_list) == 0:
        raise ValidationError("sample_size_insensitivity: n_list must be nonempty")
    p_fixed = 2.0 * (1.0 - normal_cdf(abs(float(z))))
    rows = []
    for n in n_list:
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise ValidationError("sample_size_insensitivity: sample sizes must be integers >= 1")
        root = float(delta) * math.sqrt(n)
        conc = normal_cdf(root) - normal_cdf(-root)
        rows.append(SampleSizeRow(n=int(n), concentration=conc, p_value=p_fixed))
    return tuple(rows)


TestFamily = Callable[[Point], TestSpec]


def confidence_region(
    test: TestSpec | TestFamily,
    model,
    grid: ParamGrid,
    observed: Point,
    alpha: float,
) -> tuple:
    """All grid values not rejected at level alpha: ``{theta : p(theta) > alpha}``."""
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValidationError("confidence_region: alpha must be inside (0, 1)")
    region = []
    for theta in grid.points:
        spec = test(theta) if callable(test) else test
        if p_value(spec, model, observed, theta) > alpha:
            region.append(theta)
    return tuple(region)


# ---------------------------------------------------------------------------
# two-component mixture confidence region
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MixtureModelSpec:
    """Location mixture ``(1 - theta) N(0,1) + theta N(shift, 1)`` on theta in [0, 1]."""

    grid: ParamGrid
    shift: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.shift) or self.shift == 0.0:
            raise ValidationError("MixtureModelSpec: shift must be finite and nonzero")
        pts = np.asarray(self.grid.points, dtype=float)
        if not self.grid.is_numeric or np.any(pts < 0.0) or np.any(pts > 1.0):
            raise ValidationError("MixtureModelSpec: grid must lie within [0, 1]")

    def density(self, theta: float, x: float) -> float:
        a = math.exp(-0.5 * x * x)
        b = math.exp(-0.5 * (x - self.shift) ** 2)
        return ((1.0 - theta) * a + theta * b) / math.sqrt(2.0 * math.pi)


def mixture_acceptance_interval(shift: float, alpha: float) -> tuple[float, float]:
    """The unbiased acceptance interval shared by every mixture parameter.

    Coverage of an interval is affine in theta, so requiring exact
    ``1 - alpha`` coverage with a stationary derivative forces equal
    coverage under both mixture components. That pins the interval to the
    symmetric window ``[l, shift - l]`` about ``shift / 2`` solving
    ``Phi(shift - l) - Phi(l) = 1 - alpha``, independent of theta.
    """
    alpha = float(alpha)
    shift = float(shift)
    if not 0.0 < alpha < 1.0:
        raise ValidationError("mixture_acceptance_interval: alpha must be inside (0, 1)")

    def gap(l: float) -> float:
        return (normal_cdf(shift - l) - normal_cdf(l)) - (1.0 - alpha)

    hi = shift / 2.0
    lo = hi - 1.0
    while gap(lo) < 0.0:
        lo -= 1.0
        if hi - lo > 60.0:
            raise NumericError("mixture_acceptance_interval: failed to bracket the window")
    left = brentq(gap, lo, hi, xtol=1e-12, maxiter=200)
    return float(left), float(shift - left)


@dataclass(frozen=True)
class MixtureRegionRow:
    x: float
    classification: Literal["full", "empty", "partial"]
    theta_low: float | None
    theta_high: float | None


@dataclass(frozen=True)
class MixtureRegionDemo:
    rows: tuple[MixtureRegionRow, ...]
    acceptance_interval: tuple[float, float]
    full_window: tuple[float, float] | None


def mixture_region_demo(
    spec: MixtureModelSpec, alpha: float, x_values: Sequence[float]
) -> MixtureRegionDemo:
    """Invert the mixture test over the theta grid for each observed x.

    Because the acceptance interval does not depend on theta, the region
    is the entire grid for x inside the window and empty outside: the
    region's size says nothing about theta. Endpoints are reported, not
    asserted, since they depend on the test construction.
    """
    left, right = mixture_acceptance_interval(spec.shift, alpha)
    rows = []
    full_xs = []
    for x in x_values:
        x = float(x)
        inside = left <= x <= right
        members = spec.grid.points if inside else ()
        if len(members) == len(spec.grid):
            cls: Literal["full", "empty", "partial"] = "full"
            full_xs.append(x)
        elif len(members) == 0:
            cls = "empty"
        else:
            cls = "partial"
        rows.append(
            MixtureRegionRow(
                x=x,
                classification=cls,
                theta_low=float(min(members)) if members else None,
                theta_high=float(max(members)) if members else None,
            )
        )
    window = (min(full_xs), max(full_xs)) if full_xs else None
    return MixtureRegionDemo(rows=tuple(rows), acceptance_interval=(left, right), full_window=window)


# ---------------------------------------------------------------------------
# optional stopping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OptionalStoppingResult:
    estimate: float
    std_error: float
    alpha: float
    n1: int
    n2: int
    reps: int
    seed: int
    exceeds_alpha: bool


def optional_stopping_sim(
    alpha: float, n1: int, n2: int, reps: int, seed: int
) -> OptionalStoppingResult:
    """Rejection probability of the look-twice z test under the null.

    Stage 1 runs a two-sided z test on n1 observations; if it fails to
    reject, the test is recomputed on the pooled n1 + n2 observations.
    The overall null rejection probability exceeds alpha whenever the
    second look exists, which is the whole point.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValidationError("optional_stopping_sim: alpha must be in (0, 1]")
    if not isinstance(n1, (int, np.integer)) or n1 < 1:
        raise ValidationError("optional_stopping_sim: n1 must be an integer >= 1")
    if not isinstance(n2, (int, np.integer)) or n2 < 0:
        raise ValidationError("optional_stopping_sim: n2 must be an integer >= 0")
    if reps < 1000:
        raise ValidationError("optional_stopping_sim: need at least 1000 repetitions")
    crit = float(ndtri(1.0 - alpha / 2.0))
    root_n1 = math.sqrt(n1)
    root_total = math.sqrt(n1 + n2)

    def chunk(rng: np.random.Generator, count: int) -> int:
        s1 = rng.normal(0.0, root_n1, size=count)
        s2 = rng.normal(0.0, math.sqrt(n2), size=count) if n2 > 0 else np.zeros(count)
        z1 = s1 / root_n1
        z_pooled = (s1 + s2) / root_total
        reject = (np.abs(z1) > crit) | (np.abs(z_pooled) > crit)
        return int(np.sum(reject))

    est = bernoulli_mc(int(reps), int(seed), chunk)
    return OptionalStoppingResult(
        estimate=est.estimate,
        std_error=est.std_error,
        alpha=alpha,
        n1=int(n1),
        n2=int(n2),
        reps=est.reps,
        seed=est.seed,
        exceeds_alpha=est.estimate > alpha + 3.0 * est.std_error,
    )


def optional_stopping_quadrature(alpha: float, n1: int, n2: int, nodes: int = 400) -> float:
    """Same rejection probability by quadrature over the two stage draws.

    The stage-1 z score is integrated with Gauss-Legendre over the
    acceptance window; the stage-2 increment integrates to closed-form
    normal tails inside, so the double integral reduces to one smooth
    quadrature. Serves as the independent cross-check for the simulator.
    """
    alpha = float(alpha)
    if not 0.0 < alpha <= 1.0:
        raise ValidationError("optional_stopping_quadrature: alpha must be in (0, 1]")
    if alpha == 1.0:
        return 1.0
    crit = float(ndtri(1.0 - alpha / 2.0))
    if n2 == 0:
        return alpha
    x, w = np.polynomial.legendre.leggauss(int(nodes))
    z = x * crit
    weights = w * crit
    density = np.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    total = math.sqrt(n1 + n2)
    hi = (crit * total - math.sqrt(n1) * z) / math.sqrt(n2)
    lo = (-crit * total - math.sqrt(n1) * z) / math.sqrt(n2)
    stage2 = 1.0 - ndtr(hi) + ndtr(lo)
    return alpha + float(np.sum(weights * density * stage2))
