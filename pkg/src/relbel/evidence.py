"""Relative belief ratios: evidence, strength, estimation, and regions.

The principle is minimal: data provide evidence in favor of a value
exactly when they raise its probability, so the relative belief ratio
(posterior over prior) is the measure of evidence. Its value carries the
direction; how strongly to believe the verdict is a separate posterior
tail probability, the strength. Keeping those two numbers apart is what
dissolves the classical paradoxes reproduced elsewhere in this package.

On a shared grid the ratio of masses equals the ratio of densities, so
the grid curve is also the discrete stand-in for the continuum limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import NumericError, ValidationError
from .grids import (
    ArgmaxResult,
    MarginalMap,
    MassTable,
    ParamGrid,
    Point,
    Predicate,
    _argmax_with_ties,
    marginalize,
    prob_of,
)

#: rb values within this distance of 1 are called neutral
NEUTRAL_TOL = 1e-12

StrengthVariant = Literal["directional", "lower_tail"]
Direction = Literal["in_favor", "against", "neutral"]


@dataclass(frozen=True)
class EvidenceVerdict:
    """Direction of the evidence for one value, with optional calibration."""

    direction: Direction
    rb_value: float
    strength: float | None = None
    strength_variant: StrengthVariant | None = None


def verdict_for(
    rb_value: float,
    strength: float | None = None,
    strength_variant: StrengthVariant | None = None,
) -> EvidenceVerdict:
    if abs(rb_value - 1.0) <= NEUTRAL_TOL:
        direction: Direction = "neutral"
    elif rb_value > 1.0:
        direction = "in_favor"
    else:
        direction = "against"
    return EvidenceVerdict(direction, float(rb_value), strength, strength_variant)


def rb_set(
    space: MassTable, conditioning: Predicate, target: Predicate
) -> tuple[float, EvidenceVerdict]:
    """Relative belief ratio of a target event given a conditioning event.

    Returns ``P(A|C) / P(A)`` together with its verdict. Both events need
    positive probability.
    """
    p_c = prob_of(space, conditioning)
    p_a = prob_of(space, target)
    if p_c <= 0.0:
        raise NumericError("rb_set: conditioning event has zero probability")
    if p_a <= 0.0:
        raise NumericError("rb_set: target event has zero probability")
    p_both = prob_of(space, lambda p: conditioning(p) and target(p))
    value = p_both / (p_c * p_a)
    return value, verdict_for(value)


@dataclass(frozen=True, eq=False)
class RBCurve:
    """Relative belief ratio over a (possibly marginal) grid.

    ``rb[i]`` is posterior mass over prior mass at codomain point ``i``,
    NaN where the prior mass is zero (the ratio is undefined there, never
    0 or infinity). The prior-weighted mean of rb is 1 by construction;
    the constructor re-checks it.
    """

    grid: ParamGrid
    prior_mass: np.ndarray
    posterior_mass: np.ndarray
    rb: np.ndarray

    def __post_init__(self) -> None:
        for name in ("prior_mass", "posterior_mass", "rb"):
            arr = np.array(getattr(self, name), dtype=float)
            if arr.ndim != 1 or len(arr) != len(self.grid):
                raise ValidationError(f"{name} must align with the grid")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        defined = ~np.isnan(self.rb)
        if np.any(self.rb[defined] < 0.0):
            raise ValidationError("rb values must be nonnegative")
        mean = float(np.sum(self.prior_mass[defined] * self.rb[defined]))
        covered = float(np.sum(self.posterior_mass[defined]))
        if abs(mean - covered) > 1e-10:
            raise ValidationError("prior-weighted mean of rb must equal the covered posterior mass")

    def value_at(self, value: Point) -> float:
        return float(self.rb[self.grid.index_of(value)])


def rb_curve(
    prior: MassTable,
    posterior: MassTable,
    mapping: MarginalMap | None = None,
    on_zero_prior: Literal["raise", "nan"] = "raise",
) -> RBCurve:
    """Relative belief ratio curve of a posterior against its prior.

    With a map the masses are first marginalized to the codomain. Codomain
    points with zero prior mass make the ratio undefined: by default that
    raises, ``on_zero_prior="nan"`` records NaN instead and the regions
    below exclude such points.
    """
    if prior.grid.points != posterior.grid.points:
        raise ValidationError("rb_curve: prior and posterior must share a grid")
    if mapping is None:
        # identity: skip building the trivial map, the grids already align
        prior_m, post_m = prior, posterior
        codomain = prior.grid
    else:
        prior_m = marginalize(prior, mapping)
        post_m = marginalize(posterior, mapping)
        codomain = mapping.codomain
    zero = prior_m.masses == 0.0
    if np.any(zero):
        if on_zero_prior == "raise":
            value = codomain.points[int(np.flatnonzero(zero)[0])]
            raise NumericError(f"rb_curve: zero marginal prior mass at {value!r}")
        rb = np.where(zero, np.nan, post_m.masses / np.where(zero, 1.0, prior_m.masses))
    else:
        rb = post_m.masses / prior_m.masses
    return RBCurve(codomain, prior_m.masses, post_m.masses, rb)


def strength(
    curve: RBCurve, value: Point, variant: StrengthVariant = "directional"
) -> float:
    """Posterior calibration of the evidence at one codomain value.

    The ``lower_tail`` variant is always the posterior probability of
    ``{rb <= rb(value)}``. The ``directional`` variant (default) flips to
    the upper tail when the verdict is in favor and returns 1 at a
    neutral value.
    """
    idx = curve.grid.index_of(value)
    rb0 = float(curve.rb[idx])
    if math.isnan(rb0):
        raise NumericError(f"strength: rb is undefined at {value!r}")
    defined = ~np.isnan(curve.rb)
    if variant == "lower_tail":
        keep = defined & (curve.rb <= rb0)
    elif variant == "directional":
        if abs(rb0 - 1.0) <= NEUTRAL_TOL:
            return 1.0
        if rb0 > 1.0:
            keep = defined & (curve.rb >= rb0)
        else:
            keep = defined & (curve.rb <= rb0)
    else:
        raise ValidationError(f"strength: unknown variant {variant!r}")
    return float(np.sum(curve.posterior_mass[keep]))


def mrbe(curve: RBCurve) -> ArgmaxResult:
    """Maximum relative belief estimate: the rb-maximizing codomain point."""
    values = np.where(np.isnan(curve.rb), -np.inf, curve.rb)
    return _argmax_with_ties(curve.grid, values)


def strength_curve(curve: RBCurve, variant: StrengthVariant = "directional") -> np.ndarray:
    """Strength at every codomain point at once (NaN where rb is undefined).

    Same tail definitions as :func:`strength`, computed with one sort and
    cumulative sums instead of a scan per point.
    """
    if variant not in ("directional", "lower_tail"):
        raise ValidationError(f"strength_curve: unknown variant {variant!r}")
    defined = ~np.isnan(curve.rb)
    vals = curve.rb[defined]
    weights = curve.posterior_mass[defined]
    order = np.argsort(vals, kind="stable")
    sorted_vals = vals[order]
    cum = np.cumsum(weights[order])
    total = float(cum[-1]) if len(cum) else 0.0

    def lower_tail(v: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(sorted_vals, v, side="right")
        return np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0.0)

    def upper_tail(v: np.ndarray) -> np.ndarray:
        idx = np.searchsorted(sorted_vals, v, side="left")
        below = np.where(idx > 0, cum[np.maximum(idx - 1, 0)], 0.0)
        return total - below

    out = np.full(len(curve.rb), np.nan)
    rb_def = curve.rb[defined]
    if variant == "lower_tail":
        out[defined] = lower_tail(rb_def)
    else:
        res = np.where(rb_def > 1.0, upper_tail(rb_def), lower_tail(rb_def))
        res = np.where(np.abs(rb_def - 1.0) <= NEUTRAL_TOL, 1.0, res)
        out[defined] = res
    return out


@dataclass(frozen=True)
class RegionResult:
    """A region of codomain points with its posterior content."""

    kind: Literal["gamma_region", "plausible_region"]
    points: tuple
    indices: tuple[int, ...]
    content: float
    threshold: float


def gamma_region(curve: RBCurve, gamma: float) -> RegionResult:
    """Smallest rb-superlevel set whose posterior content reaches gamma.

    Points are taken in decreasing rb order until the accumulated
    posterior mass reaches gamma; ties with the last rb value enter as a
    block so the region is a true superlevel set (content may then exceed
    gamma). Always contains the rb maximizer.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ValidationError("gamma_region: gamma must be in [0, 1]")
    rb = np.where(np.isnan(curve.rb), -np.inf, curve.rb)
    order = sorted(range(len(rb)), key=lambda i: (-rb[i], i))
    cutoff_rank = 0
    running = 0.0
    for rank, i in enumerate(order):
        running += float(curve.posterior_mass[i])
        cutoff_rank = rank
        if running >= gamma - 1e-12:
            break
    cutoff_value = rb[order[cutoff_rank]]
    chosen = sorted(i for i in range(len(rb)) if rb[i] >= cutoff_value)
    content = float(np.sum(curve.posterior_mass[chosen]))
    return RegionResult(
        kind="gamma_region",
        points=tuple(curve.grid.points[i] for i in chosen),
        indices=tuple(chosen),
        content=content,
        threshold=float(cutoff_value),
    )


def plausible_region(curve: RBCurve, q: float) -> RegionResult:
    """Points with rb strictly above q; content is their posterior mass."""
    q = float(q)
    if q < 0.0:
        raise ValidationError("plausible_region: q must be nonnegative")
    defined = ~np.isnan(curve.rb)
    chosen = sorted(int(i) for i in np.flatnonzero(defined & (curve.rb > q)))
    content = float(np.sum(curve.posterior_mass[chosen]))
    return RegionResult(
        kind="plausible_region",
        points=tuple(curve.grid.points[i] for i in chosen),
        indices=tuple(chosen),
        content=content,
        threshold=q,
    )


def rb_via_predictive(
    model,
    prior: MassTable,
    mapping: MarginalMap | None,
    observed: Point,
    value: Point,
) -> float:
    """Relative belief ratio through predictive densities.

    Computes ``m(x | value) / m(x)`` where ``m`` is the prior predictive
    and ``m(. | value)`` conditions the prior on the preimage of
    ``value``. This equals the rb-curve value wherever the marginal prior
    mass is positive. A point hypothesis with zero prior mass under the
    identity map degenerates to the model density at that point, the
    grid rendering of the continuum ratio; that is exactly the spike and
    slab Bayes factor situation.
    """
    lik = np.asarray(model.likelihood_column(prior.grid, observed), dtype=float)
    m_x = float(np.sum(prior.masses * lik))
    if m_x <= 0.0:
        raise NumericError("rb_via_predictive: zero prior predictive at the observed value")
    if mapping is None:
        mapping = MarginalMap.identity(prior.grid)
    if mapping.grid.points != prior.grid.points:
        raise ValidationError("rb_via_predictive: map is defined on a different grid")
    try:
        idx = mapping.codomain.index_of(value)
    except ValidationError:
        idx = None
    if idx is not None:
        pre = list(mapping.preimages[idx])
        slice_mass = float(np.sum(prior.masses[pre]))
        if slice_mass > 0.0:
            m_x_given = float(np.sum(prior.masses[pre] * lik[pre])) / slice_mass
            return m_x_given / m_x
    # zero-mass (or off-grid) point hypothesis: only meaningful untransformed
    if mapping.assignment != mapping.grid.points:
        raise NumericError(
            f"rb_via_predictive: zero marginal prior mass at {value!r} under a non-identity map"
        )
    if not hasattr(model, "density"):
        raise NumericError(f"rb_via_predictive: cannot evaluate the model at {value!r}")
    return float(model.density(value, observed)) / m_x


@dataclass(frozen=True)
class RbDecomposition:
    """Additivity of evidence over a union of events.

    ``rb_union`` is the directly computed ratio for the union; ``expansion``
    rebuilds it from the parts weighted by their conditional probability
    inside the union, minus the overlap term when there is one.
    """

    rb_union: float
    expansion: float
    form: Literal["two_term", "three_term"]
    rb_a: float
    rb_b: float
    rb_intersection: float | None
    weight_a: float
    weight_b: float
    weight_intersection: float


def rb_union(
    space: MassTable, conditioning: Predicate, a: Predicate, b: Predicate
) -> RbDecomposition:
    """Evaluate RB(A union B | C) and its additive expansion."""
    union = lambda p: a(p) or b(p)
    both = lambda p: a(p) and b(p)
    p_union = prob_of(space, union)
    p_c = prob_of(space, conditioning)
    if p_union <= 0.0:
        raise NumericError("rb_union: the union has zero probability")
    if p_c <= 0.0:
        raise NumericError("rb_union: conditioning event has zero probability")
    p_both = prob_of(space, both)

    rb_u, _ = rb_set(space, conditioning, union)
    rb_a_val, _ = rb_set(space, conditioning, a)
    rb_b_val, _ = rb_set(space, conditioning, b)
    w_a = prob_of(space, a) / p_union
    w_b = prob_of(space, b) / p_union
    w_ab = p_both / p_union

    if p_both > 0.0:
        rb_ab_val, _ = rb_set(space, conditioning, both)
        expansion = rb_a_val * w_a + rb_b_val * w_b - rb_ab_val * w_ab
        form = "three_term"
        rb_ab: float | None = rb_ab_val
    else:
        expansion = rb_a_val * w_a + rb_b_val * w_b
        form = "two_term"
        rb_ab = None
    return RbDecomposition(
        rb_union=rb_u,
        expansion=expansion,
        form=form,
        rb_a=rb_a_val,
        rb_b=rb_b_val,
        rb_intersection=rb_ab,
        weight_a=w_a,
        weight_b=w_b,
        weight_intersection=w_ab,
    )
