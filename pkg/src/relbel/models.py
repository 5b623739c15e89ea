"""Model backends evaluable as likelihoods over a parameter grid.

Two backends cover every analysis in the package:

* :class:`TabularModel` - a finite sample space with an explicit matrix of
  densities ``L[i, j] = f_i(x_j)`` relative to sample-space volumes.
* :class:`GaussianMeanModel` - n i.i.d. unit-variance normal observations
  summarized by their sample mean, which is normal with variance ``1/n``.

Anything with a ``likelihood_column(grid, observed)`` method works as a
model for :func:`relbel.grids.condition`; these two are the supported
implementations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import sparse

from .errors import ValidationError
from .grids import MASS_TOL, ParamGrid, Point, _readonly

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True, eq=False)
class TabularModel:
    """Finite-sample-space model given as an explicit likelihood matrix.

    Rows are parameter points, columns sample points. Entry ``(i, j)`` is
    the density of sample ``j`` under parameter ``i`` with respect to
    ``sample_volumes``, so every row satisfies ``sum_j L[i, j] * vol_j = 1``.
    The matrix may be dense (ndarray) or ``scipy.sparse`` CSR; sparse is
    what large finite-alphabet models use.
    """

    param_points: tuple
    sample_points: tuple
    likelihood: object
    sample_volumes: np.ndarray

    def __post_init__(self) -> None:
        params = tuple(self.param_points)
        samples = tuple(self.sample_points)
        vols = _readonly(self.sample_volumes, "sample_volumes")
        if np.any(vols <= 0.0) or not np.all(np.isfinite(vols)):
            raise ValidationError("sample_volumes must be finite and > 0")
        lik = self.likelihood
        if sparse.issparse(lik):
            lik = lik.tocsr()
            if lik.nnz and float(lik.data.min()) < 0.0:
                raise ValidationError("likelihood entries must be nonnegative")
            row_sums = np.asarray(lik @ vols).ravel()
        else:
            lik = np.array(lik, dtype=float)
            if lik.ndim != 2:
                raise ValidationError("likelihood must be a 2d matrix")
            if np.any(lik < 0.0) or not np.all(np.isfinite(lik)):
                raise ValidationError("likelihood entries must be finite and nonnegative")
            lik.setflags(write=False)
            row_sums = lik @ vols
        if lik.shape != (len(params), len(samples)):
            raise ValidationError(
                f"likelihood shape {lik.shape} does not match "
                f"{len(params)} parameters x {len(samples)} samples"
            )
        if np.any(np.abs(row_sums - 1.0) > MASS_TOL):
            worst = int(np.argmax(np.abs(row_sums - 1.0)))
            raise ValidationError(
                f"row {worst} integrates to {row_sums[worst]!r}, expected 1 within {MASS_TOL}"
            )
        try:
            sample_index = {x: j for j, x in enumerate(samples)}
        except TypeError as exc:
            raise ValidationError("sample points must be hashable") from exc
        if len(sample_index) != len(samples):
            raise ValidationError("sample points must be pairwise distinct")
        object.__setattr__(self, "param_points", params)
        object.__setattr__(self, "sample_points", samples)
        object.__setattr__(self, "likelihood", lik)
        object.__setattr__(self, "sample_volumes", vols)
        object.__setattr__(self, "_sample_index", sample_index)

    @property
    def n_params(self) -> int:
        return len(self.param_points)

    @property
    def n_samples(self) -> int:
        return len(self.sample_points)

    def sample_index(self, observed: Point) -> int:
        try:
            return self._sample_index[observed]  # type: ignore[attr-defined]
        except (KeyError, TypeError) as exc:
            raise ValidationError(
                f"observed value {observed!r} is outside the tabular sample space"
            ) from exc

    def param_index(self, theta: Point) -> int:
        try:
            return self.param_points.index(theta)
        except ValueError as exc:
            raise ValidationError(f"parameter {theta!r} is not a model row") from exc

    def likelihood_column(self, grid: ParamGrid, observed: Point) -> np.ndarray:
        """Densities ``f_i(observed)`` aligned with ``grid`` (must equal the rows)."""
        if grid.points != self.param_points:
            raise ValidationError(
                "tabular model rows do not match the grid points it is evaluated on"
            )
        j = self.sample_index(observed)
        if sparse.issparse(self.likelihood):
            col = self.likelihood[:, j].toarray().ravel()
        else:
            col = np.array(self.likelihood[:, j], dtype=float)
        return col

    def density(self, theta: Point, observed: Point) -> float:
        i = self.param_index(theta)
        j = self.sample_index(observed)
        return float(self.likelihood[i, j])

    def row_densities(self, theta: Point) -> np.ndarray:
        i = self.param_index(theta)
        if sparse.issparse(self.likelihood):
            return self.likelihood[i].toarray().ravel()
        return np.array(self.likelihood[i], dtype=float)

    def row_masses(self, theta: Point) -> np.ndarray:
        """Probability of each sample point under ``theta``."""
        return self.row_densities(theta) * self.sample_volumes


@dataclass(frozen=True)
class GaussianMeanModel:
    """n unit-variance normal observations, reduced to their sample mean.

    The observed value passed to the operations is the sample mean, whose
    density under parameter ``theta`` is normal with variance ``1/n``.
    """

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValidationError("GaussianMeanModel: n must be an integer >= 1")
        object.__setattr__(self, "n", int(self.n))

    def likelihood_column(self, grid: ParamGrid, observed: float) -> np.ndarray:
        if not grid.is_numeric:
            raise ValidationError("gaussian mean model needs a numeric parameter grid")
        xbar = float(observed)
        if not math.isfinite(xbar):
            raise ValidationError("observed sample mean must be finite")
        thetas = np.asarray(grid.points, dtype=float)
        z = (xbar - thetas) * math.sqrt(self.n)
        return np.exp(-0.5 * z * z) * (math.sqrt(self.n) / _SQRT_2PI)

    def density(self, theta: float, observed: float) -> float:
        z = (float(observed) - float(theta)) * math.sqrt(self.n)
        return math.exp(-0.5 * z * z) * (math.sqrt(self.n) / _SQRT_2PI)


EvalModel = Union[TabularModel, GaussianMeanModel]


def bernoulli_model(thetas) -> TabularModel:
    """Single Bernoulli trial with success probability per grid point."""
    thetas = tuple(float(t) for t in thetas)
    if any(not 0.0 <= t <= 1.0 for t in thetas):
        raise ValidationError("bernoulli_model: success probabilities must be in [0, 1]")
    matrix = np.array([[1.0 - t, t] for t in thetas])
    return TabularModel(thetas, (0, 1), matrix, np.ones(2))


def product_model(first: TabularModel, second: TabularModel) -> TabularModel:
    """Joint model of two independent tabular observations (shared parameter).

    Sample points are pairs; when an input sample point is itself a tuple
    the pairing nests it unchanged.
    """
    if first.param_points != second.param_points:
        raise ValidationError("product_model: both factors must share parameter points")
    if sparse.issparse(first.likelihood) or sparse.issparse(second.likelihood):
        raise ValidationError("product_model: dense factors only")
    samples = tuple((a, b) for a in first.sample_points for b in second.sample_points)
    lik = np.einsum("ia,ib->iab", first.likelihood, second.likelihood).reshape(
        first.n_params, -1
    )
    vols = np.outer(first.sample_volumes, second.sample_volumes).ravel()
    return TabularModel(first.param_points, samples, lik, vols)
