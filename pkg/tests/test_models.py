import math

import numpy as np
import pytest

from relbel import ValidationError, bernoulli_model, product_model
from relbel.grids import ParamGrid
from relbel.models import GaussianMeanModel, TabularModel


class TestTabularModel:
    def test_rejects_row_not_summing_to_one(self):
        with pytest.raises(ValidationError, match="integrates"):
            TabularModel((0,), (0, 1), np.array([[0.5, 0.4]]), np.ones(2))

    def test_rejects_negative_entries(self):
        with pytest.raises(ValidationError):
            TabularModel((0,), (0, 1), np.array([[1.5, -0.5]]), np.ones(2))

    def test_weighted_row_sums(self):
        # densities against volumes 0.5: each row integrates to 1
        model = TabularModel((0, 1), ("a", "b"), np.array([[1.0, 1.0], [2.0, 0.0]]), np.full(2, 0.5))
        assert model.density(1, "a") == 2.0

    def test_observed_outside_sample_space(self):
        model = bernoulli_model((0.0, 1.0))
        grid = ParamGrid((0.0, 1.0), np.ones(2))
        with pytest.raises(ValidationError, match="outside"):
            model.likelihood_column(grid, 7)

    def test_grid_mismatch_is_rejected(self):
        model = bernoulli_model((0.0, 1.0))
        other = ParamGrid((0.0, 0.5), np.ones(2))
        with pytest.raises(ValidationError):
            model.likelihood_column(other, 1)

    def test_row_masses(self):
        model = bernoulli_model((0.25,))
        assert np.allclose(model.row_masses(0.25), [0.75, 0.25])


class TestGaussianMeanModel:
    def test_rejects_bad_n(self):
        with pytest.raises(ValidationError):
            GaussianMeanModel(0)

    def test_density_is_normal_in_the_mean(self):
        model = GaussianMeanModel(4)
        # mean of 4 unit-variance draws has sd 1/2
        expected = math.exp(-0.5 * (0.5 / 0.5) ** 2) / (0.5 * math.sqrt(2 * math.pi))
        assert model.density(0.0, 0.5) == pytest.approx(expected, rel=1e-12)

    def test_likelihood_column_shape(self):
        grid = ParamGrid((-1.0, 0.0, 1.0), np.ones(3))
        column = GaussianMeanModel(1).likelihood_column(grid, 0.0)
        assert column[0] == pytest.approx(column[2], rel=1e-12)
        assert column[1] > column[0]


class TestProductModel:
    def test_joint_probabilities_factorize(self):
        model = bernoulli_model((0.25, 0.5))
        joint = product_model(model, model)
        assert joint.density(0.25, (1, 0)) == pytest.approx(0.25 * 0.75, rel=1e-12)

    def test_requires_shared_parameters(self):
        with pytest.raises(ValidationError):
            product_model(bernoulli_model((0.25,)), bernoulli_model((0.5,)))
