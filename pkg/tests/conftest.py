import numpy as np
import pytest

from relbel import MassTable, ParamGrid, bernoulli_model, condition, rb_curve


@pytest.fixture
def bernoulli3():
    """Three-point Bernoulli setup: uniform prior, one success observed."""
    grid = ParamGrid((0.0, 0.5, 1.0), np.ones(3))
    prior = MassTable.uniform(grid)
    model = bernoulli_model(grid.points)
    posterior = condition(prior, model, 1)
    return grid, prior, model, posterior


@pytest.fixture
def two_point_curve():
    """Two-outcome curve with rb = (0.4, 1.6) and posterior (0.2, 0.8)."""
    grid = ParamGrid((0.0, 1.0), np.ones(2))
    prior = MassTable(grid, np.array([0.5, 0.5]))
    posterior = MassTable(grid, np.array([0.2, 0.8]))
    return rb_curve(prior, posterior)


@pytest.fixture
def dice():
    grid = ParamGrid(tuple(range(1, 7)), np.ones(6))
    return MassTable.uniform(grid)
