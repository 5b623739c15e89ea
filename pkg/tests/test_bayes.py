import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relbel import (
    MassTable,
    NumericError,
    SpikeSlabPrior,
    ValidationError,
    bayes_factor,
    bernoulli_model,
    bf_predictive,
    condition,
    jeffreys_label,
    jl_bayes_factor,
    jl_strength,
    make_uniform_grid,
    map_estimate,
    normal_cdf,
    pushforward,
    rb_via_predictive,
    spike_slab_bf,
)
from relbel.grids import ParamGrid
from relbel.models import GaussianMeanModel, TabularModel


def normal_slab(sigma2: float, cells: int = 20_000) -> MassTable:
    span = 8.0 * math.sqrt(sigma2)
    grid = make_uniform_grid(-span, span, cells)  # even cells keep 0 off the grid
    z = np.asarray(grid.points) / math.sqrt(sigma2)
    return MassTable.from_weights(grid, np.exp(-0.5 * z * z))


class TestMapEstimate:
    def test_bernoulli_posterior(self, bernoulli3):
        _, _, _, posterior = bernoulli3
        assert map_estimate(posterior).value == 1.0

    def test_uniform_posterior_ties(self, bernoulli3):
        _, prior, _, _ = bernoulli3
        result = map_estimate(prior)
        assert result.tied and result.index == 0

    def test_density_beats_mass(self):
        grid = ParamGrid((0.0, 1.0), np.array([0.5, 1.0]))
        posterior = MassTable(grid, np.array([0.5, 0.5]))
        assert map_estimate(posterior).value == 0.0

    def test_not_invariant_under_reparameterization(self):
        # concrete instance where transport and argmax do not commute
        grid = make_uniform_grid(0.0, 1.0, 40)
        theta = np.asarray(grid.points)
        posterior = MassTable.from_weights(grid, theta**2 * (1.0 - theta))
        before = map_estimate(posterior)
        pushed = pushforward(posterior, lambda t: t * t)
        after = map_estimate(pushed)
        transported_index = pushed.grid.nearest_index(float(before.value) ** 2)
        assert after.index != transported_index


class TestBayesFactorOddsForm:
    def test_two_point_example(self):
        grid = ParamGrid((0, 1), np.ones(2))
        prior = MassTable(grid, np.array([0.5, 0.5]))
        posterior = MassTable(grid, np.array([0.2, 0.8]))
        result = bayes_factor(prior, posterior, lambda p: p == 1)
        assert result.bf == pytest.approx(4.0, abs=1e-12)

    def test_no_update_is_neutral(self, bernoulli3):
        _, prior, _, _ = bernoulli3
        result = bayes_factor(prior, prior, lambda p: p == 0.5)
        assert result.bf == pytest.approx(1.0, abs=1e-12)

    def test_prior_probability_bounds(self, bernoulli3):
        _, prior, _, posterior = bernoulli3
        with pytest.raises(NumericError, match="undefined"):
            bayes_factor(prior, posterior, lambda p: False)
        with pytest.raises(NumericError, match="undefined"):
            bayes_factor(prior, posterior, lambda p: True)


class TestBfPredictive:
    def test_matches_odds_form_on_bernoulli(self, bernoulli3):
        _, prior, model, posterior = bernoulli3
        subset = lambda p: p == 1.0
        odds = bayes_factor(prior, posterior, subset)
        pred = bf_predictive(model, prior, subset, 1)
        assert odds.bf == pytest.approx(4.0, abs=1e-12)
        assert pred.bf == pytest.approx(odds.bf, abs=1e-10)

    @given(seed=st.integers(0, 10_000), n=st.integers(2, 10))
    @settings(max_examples=60, deadline=None)
    def test_odds_and_predictive_forms_agree(self, seed, n):
        rng = np.random.default_rng(seed)
        grid = ParamGrid(tuple(range(n)), np.ones(n))
        prior = MassTable.from_weights(grid, rng.random(n) + 1e-3)
        model = TabularModel(grid.points, (0, 1, 2), rng.dirichlet((1, 1, 1), size=n), np.ones(3))
        observed = int(rng.integers(3))
        posterior = condition(prior, model, observed)
        cut = int(rng.integers(1, n))
        subset = lambda p: p < cut
        odds = bayes_factor(prior, posterior, subset)
        pred = bf_predictive(model, prior, subset, observed)
        if math.isinf(odds.bf):
            assert pred.bf > 1e12
        else:
            assert pred.bf == pytest.approx(odds.bf, rel=1e-10, abs=1e-10)

    def test_complement_reduced_to_single_point(self):
        # a zero-mass point plus one positive point in the complement:
        # the conditional predictive degenerates to that point's density
        grid = ParamGrid((0.0, 0.25, 0.5, 1.0), np.ones(4))
        prior = MassTable(grid, np.array([0.0, 0.4, 0.3, 0.3]))
        model = bernoulli_model(grid.points)
        posterior = condition(prior, model, 1)
        subset = lambda p: p in (0.25, 0.5)
        odds = bayes_factor(prior, posterior, subset)
        pred = bf_predictive(model, prior, subset, 1)
        assert pred.bf == pytest.approx(odds.bf, abs=1e-10)

    def test_zero_complement_predictive_raises(self):
        grid = ParamGrid((0.0, 0.5), np.ones(2))
        prior = MassTable(grid, np.array([0.5, 0.5]))
        model = bernoulli_model(grid.points)
        with pytest.raises(NumericError, match="zero predictive"):
            bf_predictive(model, prior, lambda p: p == 0.5, 1)


class TestSpikeSlab:
    def test_equals_savage_dickey_ratio_exactly(self):
        grid = ParamGrid((0.0, 0.25, 0.5, 0.75, 1.0), np.ones(5))
        slab = MassTable(grid, np.array([0.0, 0.3, 0.3, 0.2, 0.2]))
        model = bernoulli_model(grid.points)
        prior = SpikeSlabPrior(0.37, 0.0, slab)
        for observed in (0, 1):
            lhs = spike_slab_bf(model, prior, observed).bf
            rhs = rb_via_predictive(model, slab, None, observed, 0.0)
            assert lhs == rhs

    def test_invariant_in_spike_mass(self):
        grid = ParamGrid((0.0, 0.25, 0.75), np.ones(3))
        slab = MassTable(grid, np.array([0.0, 0.6, 0.4]))
        model = bernoulli_model(grid.points)
        values = [spike_slab_bf(model, SpikeSlabPrior(p, 0.0, slab), 1).bf for p in (0.01, 0.5, 0.99)]
        assert max(values) - min(values) <= 1e-12

    def test_equal_densities_mean_no_evidence(self):
        grid = ParamGrid((0.3, 0.5, 0.7), np.ones(3))
        slab = MassTable(grid, np.array([0.5, 0.0, 0.5]))
        model = bernoulli_model(grid.points)
        result = spike_slab_bf(model, SpikeSlabPrior(0.2, 0.5, slab), 1)
        assert result.bf == pytest.approx(1.0, abs=1e-12)

    def test_slab_mass_on_spike_is_rejected(self):
        grid = ParamGrid((0.0, 0.5, 1.0), np.ones(3))
        slab = MassTable.uniform(grid)
        with pytest.raises(ValidationError):
            SpikeSlabPrior(0.5, 0.5, slab)

    @pytest.mark.parametrize("sigma2", [1.0, 100.0, 1e4])
    def test_grid_slab_matches_closed_form_within_one_percent(self, sigma2):
        model = GaussianMeanModel(50)
        slab = normal_slab(sigma2)
        xbar = 1.96 / math.sqrt(50)
        grid_bf = spike_slab_bf(model, SpikeSlabPrior(0.5, 0.0, slab), xbar).bf
        closed = jl_bayes_factor(50, sigma2, 1.96)
        assert grid_bf == pytest.approx(closed, rel=0.01)


class TestClosedForms:
    def test_headline_bayes_factor(self):
        assert jl_bayes_factor(50, 400.0, 1.96) == pytest.approx(20.719282964692013, abs=1e-9)
        assert round(jl_bayes_factor(50, 400.0, 1.96), 2) == 20.72

    def test_degenerate_slab_carries_no_discrimination(self):
        assert jl_bayes_factor(50, 0.0, 1.96) == 1.0

    def test_diffuse_divergence(self):
        values = [jl_bayes_factor(50, s2, 1.96) for s2 in (400.0, 1e4, 1e6, 1e8)]
        assert values[0] > 20.0
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_headline_strength(self):
        assert jl_strength(50, 400.0, 1.96) == pytest.approx(0.05, abs=0.005)

    @pytest.mark.parametrize("zbar", [1.0, 1.96, 3.0])
    def test_strength_diffuse_limit_is_the_two_sided_tail(self, zbar):
        limit = 2.0 * (1.0 - normal_cdf(zbar))
        assert jl_strength(50, 1e6, zbar) == pytest.approx(limit, abs=1e-3)

    def test_strength_at_zero_observation_is_one(self):
        assert jl_strength(50, 400.0, 0.0) == 1.0

    def test_grid_strength_tracks_closed_form(self):
        sigma2, n, zbar = 400.0, 50, 1.96
        slab = normal_slab(sigma2, cells=200_000)
        model = GaussianMeanModel(n)
        xbar = zbar / math.sqrt(n)
        posterior = condition(slab, model, xbar)
        from relbel import rb_curve, strength

        curve = rb_curve(slab, posterior)
        near_zero = slab.grid.points[slab.grid.nearest_index(0.0)]
        assert strength(curve, near_zero, "lower_tail") == pytest.approx(
            jl_strength(n, sigma2, zbar), abs=0.005
        )


class TestJeffreysLabel:
    def test_scale_ordering(self):
        assert jeffreys_label(150.0) == "decisive"
        assert jeffreys_label(50.0) == "very strong"
        assert jeffreys_label(20.72) == "strong"
        assert jeffreys_label(5.0) == "substantial"
        assert jeffreys_label(0.5).startswith("negative")
