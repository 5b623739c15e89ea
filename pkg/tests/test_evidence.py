import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relbel import (
    MarginalMap,
    MassTable,
    NumericError,
    bernoulli_model,
    condition,
    gamma_region,
    make_uniform_grid,
    mrbe,
    plausible_region,
    pushforward,
    rb_curve,
    rb_set,
    rb_union,
    rb_via_predictive,
    strength,
)
from relbel.evidence import strength_curve, verdict_for
from relbel.grids import ParamGrid
from relbel.models import GaussianMeanModel, TabularModel


def random_prior_posterior(seed, n):
    rng = np.random.default_rng(seed)
    grid = ParamGrid(tuple(range(n)), np.ones(n))
    prior = MassTable.from_weights(grid, rng.random(n) + 1e-3)
    model = TabularModel(grid.points, (0, 1), rng.dirichlet((1, 1), size=n), np.ones(2))
    posterior = condition(prior, model, int(rng.integers(2)))
    return grid, prior, model, posterior


class TestRbSet:
    def test_dice_example(self, dice):
        value, verdict = rb_set(dice, lambda p: p <= 3, lambda p: p <= 2)
        assert value == pytest.approx(2.0, abs=1e-12)
        assert verdict.direction == "in_favor"

    def test_whole_space_is_neutral(self, dice):
        value, verdict = rb_set(dice, lambda p: p <= 3, lambda p: True)
        assert value == pytest.approx(1.0, abs=1e-12)
        assert verdict.direction == "neutral"

    def test_crime_counts(self):
        # population m=1000, neighbourhood m1=50, students n=100, overlap n1=2
        m, m1, n, n1 = 1000, 50, 100, 2
        space = MassTable.uniform(ParamGrid(tuple(range(m)), np.ones(m)))
        from_alpha = lambda p: p < m1
        student = lambda p: p < n1 or m1 <= p < m1 + (n - n1)
        rb_a, verdict_a = rb_set(space, from_alpha, lambda p: student(p) and from_alpha(p))
        rb_b, verdict_b = rb_set(space, from_alpha, student)
        assert rb_a == pytest.approx(m / m1, abs=1e-12)
        assert rb_b == pytest.approx(n1 * m / (m1 * n), abs=1e-12)
        assert verdict_a.direction == "in_favor"
        assert verdict_b.direction == "against"

    def test_zero_probability_events_raise(self, dice):
        with pytest.raises(NumericError):
            rb_set(dice, lambda p: False, lambda p: p == 1)
        with pytest.raises(NumericError):
            rb_set(dice, lambda p: p == 1, lambda p: False)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=50, deadline=None)
    def test_savage_dickey_symmetry(self, seed):
        rng = np.random.default_rng(seed)
        n = 8
        space = MassTable.from_weights(
            ParamGrid(tuple(range(n)), np.ones(n)), rng.random(n) + 1e-3
        )
        a_set = set(rng.choice(n, size=3, replace=False).tolist())
        c_set = set(rng.choice(n, size=4, replace=False).tolist())
        if not (a_set & c_set):
            a_set.add(next(iter(c_set)))
        ab, _ = rb_set(space, lambda p: p in c_set, lambda p: p in a_set)
        ba, _ = rb_set(space, lambda p: p in a_set, lambda p: p in c_set)
        assert ab == pytest.approx(ba, abs=1e-12)


class TestRbCurve:
    def test_bernoulli_curve(self, bernoulli3):
        _, prior, _, posterior = bernoulli3
        curve = rb_curve(prior, posterior)
        assert np.allclose(curve.rb, [0.0, 1.0, 2.0], atol=1e-12)

    def test_no_update_means_neutral_everywhere(self, bernoulli3):
        _, prior, _, _ = bernoulli3
        curve = rb_curve(prior, prior)
        assert np.allclose(curve.rb, 1.0, atol=1e-15)

    def test_zero_prior_strict_raises(self):
        grid = ParamGrid((0, 1), np.ones(2))
        prior = MassTable(grid, np.array([1.0, 0.0]))
        posterior = MassTable(grid, np.array([1.0, 0.0]))
        with pytest.raises(NumericError):
            rb_curve(prior, posterior)
        curve = rb_curve(prior, posterior, on_zero_prior="nan")
        assert math.isnan(curve.rb[1])

    @given(seed=st.integers(0, 10_000), n=st.integers(2, 12))
    @settings(max_examples=60, deadline=None)
    def test_prior_mean_of_rb_is_one(self, seed, n):
        _, prior, _, posterior = random_prior_posterior(seed, n)
        curve = rb_curve(prior, posterior)
        assert float(np.sum(curve.prior_mass * curve.rb)) == pytest.approx(1.0, abs=1e-10)
        # dual identity: posterior-weighted reciprocal over positive rb
        positive = curve.rb > 0
        dual = float(np.sum(curve.posterior_mass[positive] / curve.rb[positive]))
        assert dual == pytest.approx(float(np.sum(curve.prior_mass[positive])), abs=1e-10)

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=40, deadline=None)
    def test_marginal_rb_is_conditional_prior_average(self, seed):
        rng = np.random.default_rng(seed)
        n = 9
        grid, prior, model, posterior = random_prior_posterior(seed, n)
        labels = tuple(int(v) for v in rng.integers(0, 3, size=n))
        mapping = MarginalMap.from_assignment(grid, labels)
        full = rb_curve(prior, posterior)
        marginal = rb_curve(prior, posterior, mapping)
        for value, rb_value in zip(marginal.grid.points, marginal.rb):
            pre = [i for i, lab in enumerate(labels) if lab == value]
            weight = float(np.sum(prior.masses[pre]))
            avg = float(np.sum(prior.masses[pre] * full.rb[pre])) / weight
            assert rb_value == pytest.approx(avg, abs=1e-10)

    def test_two_point_complement(self, two_point_curve):
        rb = two_point_curve.rb
        assert (rb[0] < 1.0) == (rb[1] > 1.0)


class TestStrength:
    def test_two_point_directional_variant(self, two_point_curve):
        assert strength(two_point_curve, 0.0) == pytest.approx(0.2, abs=1e-12)
        assert strength(two_point_curve, 1.0) == pytest.approx(0.8, abs=1e-12)

    def test_two_point_lower_tail_variant(self, two_point_curve):
        assert strength(two_point_curve, 0.0, "lower_tail") == pytest.approx(0.2, abs=1e-12)
        assert strength(two_point_curve, 1.0, "lower_tail") == pytest.approx(1.0, abs=1e-12)

    def test_neutral_curve_has_full_strength(self, bernoulli3):
        _, prior, _, _ = bernoulli3
        curve = rb_curve(prior, prior)
        for point in curve.grid.points:
            assert strength(curve, point) == 1.0

    @given(seed=st.integers(0, 10_000), n=st.integers(2, 12))
    @settings(max_examples=40, deadline=None)
    def test_vectorized_strength_matches_scalar(self, seed, n):
        _, prior, _, posterior = random_prior_posterior(seed, n)
        curve = rb_curve(prior, posterior)
        for variant in ("directional", "lower_tail"):
            bulk = strength_curve(curve, variant)
            for i, point in enumerate(curve.grid.points):
                assert bulk[i] == pytest.approx(strength(curve, point, variant), abs=1e-12)


class TestMrbe:
    def test_bernoulli_argmax(self, bernoulli3):
        _, prior, _, posterior = bernoulli3
        assert mrbe(rb_curve(prior, posterior)).value == 1.0

    def test_flat_curve_ties(self, bernoulli3):
        _, prior, _, _ = bernoulli3
        result = mrbe(rb_curve(prior, prior))
        assert result.tied and result.index == 0

    def test_gaussian_fine_grid_lands_on_observation(self):
        grid = make_uniform_grid(-8.0, 8.0, 4000)
        z = np.asarray(grid.points) / 2.0
        prior = MassTable.from_weights(grid, np.exp(-0.5 * z * z))
        xbar = 0.73
        posterior = condition(prior, GaussianMeanModel(25), xbar)
        estimate = mrbe(rb_curve(prior, posterior))
        assert abs(estimate.value - xbar) <= grid.volumes[0]


class TestRegions:
    def test_gamma_zero_is_argmax_block(self, two_point_curve):
        region = gamma_region(two_point_curve, 0.0)
        assert region.points == (1.0,)
        assert region.content == pytest.approx(0.8, abs=1e-12)

    def test_gamma_one_is_posterior_support(self, bernoulli3):
        _, prior, _, posterior = bernoulli3
        region = gamma_region(rb_curve(prior, posterior), 1.0)
        assert region.points == (0.5, 1.0)
        assert region.content == pytest.approx(1.0, abs=1e-10)

    def test_two_point_at_seventy_percent(self, two_point_curve):
        region = gamma_region(two_point_curve, 0.7)
        assert region.points == (1.0,)
        assert region.content == pytest.approx(0.8, abs=1e-12)

    def test_gamma_region_contains_mrbe(self, two_point_curve):
        estimate = mrbe(two_point_curve)
        for gamma in (0.0, 0.3, 0.9, 1.0):
            assert estimate.value in gamma_region(two_point_curve, gamma).points

    @given(seed=st.integers(0, 10_000), g1=st.floats(0, 1), g2=st.floats(0, 1))
    @settings(max_examples=50, deadline=None)
    def test_gamma_region_monotone(self, seed, g1, g2):
        _, prior, _, posterior = random_prior_posterior(seed, 7)
        curve = rb_curve(prior, posterior)
        lo, hi = sorted((g1, g2))
        assert set(gamma_region(curve, lo).indices) <= set(gamma_region(curve, hi).indices)

    def test_plausible_region_two_point(self, two_point_curve):
        region = plausible_region(two_point_curve, 1.0)
        assert region.points == (1.0,)
        assert region.content == pytest.approx(0.8, abs=1e-12)

    def test_plausible_extremes(self, bernoulli3):
        _, prior, _, posterior = bernoulli3
        curve = rb_curve(prior, posterior)
        assert plausible_region(curve, 0.0).points == (0.5, 1.0)
        empty = plausible_region(curve, 10.0)
        assert empty.points == () and empty.content == 0.0

    @given(seed=st.integers(0, 10_000), q1=st.floats(0, 3), q2=st.floats(0, 3))
    @settings(max_examples=50, deadline=None)
    def test_plausible_antitone_in_q(self, seed, q1, q2):
        _, prior, _, posterior = random_prior_posterior(seed, 7)
        curve = rb_curve(prior, posterior)
        lo, hi = sorted((q1, q2))
        assert set(plausible_region(curve, hi).indices) <= set(plausible_region(curve, lo).indices)

    def test_plausible_at_one_is_the_in_favor_mass(self, two_point_curve):
        region = plausible_region(two_point_curve, 1.0)
        favored = [
            i for i, value in enumerate(two_point_curve.rb) if verdict_for(value).direction == "in_favor"
        ]
        assert list(region.indices) == favored
        assert region.content == pytest.approx(
            float(np.sum(two_point_curve.posterior_mass[favored])), abs=1e-15
        )


class TestRbViaPredictive:
    def test_matches_curve_on_bernoulli(self, bernoulli3):
        grid, prior, model, posterior = bernoulli3
        curve = rb_curve(prior, posterior)
        for point in grid.points:
            via = rb_via_predictive(model, prior, None, 1, point)
            assert via == pytest.approx(curve.value_at(point), abs=1e-10)

    def test_constant_map_gives_one(self, bernoulli3):
        grid, prior, model, _ = bernoulli3
        mapping = MarginalMap.constant(grid, "everything")
        assert rb_via_predictive(model, prior, mapping, 1, "everything") == pytest.approx(
            1.0, abs=1e-12
        )

    def test_zero_predictive_raises(self):
        grid = ParamGrid((0.0,), np.ones(1))
        prior = MassTable.uniform(grid)
        with pytest.raises(NumericError):
            rb_via_predictive(bernoulli_model(grid.points), prior, None, 1, 0.0)


class TestRbUnion:
    def test_disjoint_two_term_identity(self, dice):
        record = rb_union(dice, lambda p: p <= 3, lambda p: p == 1, lambda p: p == 4)
        assert record.form == "two_term"
        assert record.rb_union == pytest.approx(record.expansion, abs=1e-12)

    def test_identical_events_degenerate(self, dice):
        record = rb_union(dice, lambda p: p <= 3, lambda p: p <= 2, lambda p: p <= 2)
        assert record.form == "three_term"
        assert record.rb_union == pytest.approx(record.rb_a, abs=1e-12)
        assert record.rb_union == pytest.approx(record.expansion, abs=1e-12)

    def test_three_term_identity_with_overlap(self, dice):
        record = rb_union(dice, lambda p: p <= 4, lambda p: p <= 3, lambda p: 2 <= p <= 5)
        assert record.form == "three_term"
        assert record.rb_union == pytest.approx(record.expansion, abs=1e-12)

    def test_crime_decomposition_explains_the_signs(self):
        m, m1, n, n1 = 1000, 50, 100, 2
        space = MassTable.uniform(ParamGrid(tuple(range(m)), np.ones(m)))
        from_alpha = lambda p: p < m1
        student_alpha = lambda p: p < n1
        student_other = lambda p: m1 <= p < m1 + (n - n1)
        record = rb_union(space, from_alpha, student_alpha, student_other)
        assert record.form == "two_term"
        # the union is "some student did it": evidence against overall,
        # despite strong evidence for the neighbourhood students
        assert record.rb_a == pytest.approx(m / m1, abs=1e-9)
        assert record.rb_b == 0.0
        assert record.rb_union == pytest.approx(n1 * m / (m1 * n), abs=1e-9)
        assert record.rb_union < 1.0 < record.rb_a


class TestRelabelingInvariance:
    @pytest.mark.parametrize("transform", [lambda t: t * t, lambda t: 2.0 * t + 1.0])
    def test_rb_and_regions_transport_pointwise(self, transform):
        grid = make_uniform_grid(0.1, 1.0, 9)
        rng = np.random.default_rng(5)
        prior = MassTable.from_weights(grid, rng.random(9) + 0.1)
        posterior = MassTable.from_weights(grid, rng.random(9) + 0.1)
        base = rb_curve(prior, posterior)
        moved = rb_curve(pushforward(prior, transform), pushforward(posterior, transform))
        assert np.allclose(base.rb, moved.rb, atol=1e-12)
        assert mrbe(base).index == mrbe(moved).index
        for gamma in (0.0, 0.4, 0.9):
            assert gamma_region(base, gamma).indices == gamma_region(moved, gamma).indices
        for q in (0.5, 1.0, 2.0):
            assert plausible_region(base, q).indices == plausible_region(moved, q).indices
