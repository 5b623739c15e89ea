"""Finite parameter grids, mass tables, and measure-style operations.

Everything downstream works on a finite discretization of a parameter
space: an ordered list of cells, each with a representative point and a
positive volume, plus probability masses assigned to cells. Densities are
always mass divided by cell volume, which is what keeps estimators and
evidence measures honest under reparameterization: a transform changes
volumes, never masses.

Points may be numeric scalars, strings (used as opaque labels, e.g. words
of a finite-alphabet model), or fixed-arity tuples. All values are
immutable after construction and every operation here is a pure function,
so concurrent reads are safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Sequence

import numpy as np

from .errors import NumericError, ValidationError

#: absolute tolerance for probability bookkeeping on grids (sums of up to
#: ~1e6 doubles stay well inside this)
MASS_TOL = 1e-10

Point = Any
Predicate = Callable[[Point], bool]


def _readonly(values: Sequence[float] | np.ndarray, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one dimensional")
    arr.setflags(write=False)
    return arr


def _arity(point: Point) -> int | None:
    return len(point) if isinstance(point, tuple) else None


def _is_numeric_scalar(point: Point) -> bool:
    return isinstance(point, (int, float, np.integer, np.floating)) and not isinstance(
        point, bool
    )


@dataclass(frozen=True, eq=False)
class ParamGrid:
    """Ordered distinct cell representatives with positive cell volumes.

    ``points[i]`` is the representative (midpoint, for numeric grids built
    by :func:`make_uniform_grid`) of cell ``i`` and ``volumes[i]`` its
    width/volume. Boundary values of an interval are ordinary cells like
    any other.
    """

    points: tuple
    volumes: np.ndarray

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        vols = _readonly(self.volumes, "volumes")
        if len(pts) == 0:
            raise ValidationError("grid needs at least one point")
        if len(pts) != len(vols):
            raise ValidationError(
                f"points ({len(pts)}) and volumes ({len(vols)}) must have equal length"
            )
        if not np.all(np.isfinite(vols)) or np.any(vols <= 0.0):
            raise ValidationError("every cell volume must be finite and > 0")
        arities = {_arity(p) for p in pts}
        if len(arities) > 1:
            raise ValidationError("grid points must all be scalars or tuples of one arity")
        try:
            distinct = len(set(pts)) == len(pts)
        except TypeError as exc:
            raise ValidationError("grid points must be hashable") from exc
        if not distinct:
            raise ValidationError("grid points must be pairwise distinct")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "volumes", vols)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(pts)})

    def __len__(self) -> int:
        return len(self.points)

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def is_numeric(self) -> bool:
        """True when every point is a plain numeric scalar."""
        return all(_is_numeric_scalar(p) for p in self.points)

    def index_of(self, point: Point) -> int:
        try:
            return self._index[point]  # type: ignore[attr-defined]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"point {point!r} is not on the grid") from exc

    def nearest_index(self, value: float) -> int:
        """Index of the numerically closest point (numeric grids only)."""
        if not self.is_numeric:
            raise ValidationError("nearest_index needs a numeric grid")
        arr = np.asarray(self.points, dtype=float)
        return int(np.argmin(np.abs(arr - float(value))))


@dataclass(frozen=True, eq=False)
class MassTable:
    """A probability mass assignment on a :class:`ParamGrid`.

    Masses are nonnegative and sum to one within :data:`MASS_TOL`. Use
    :meth:`from_weights` to build one from unnormalized weights.
    """

    grid: ParamGrid
    masses: np.ndarray

    def __post_init__(self) -> None:
        masses = np.array(self.masses, dtype=float)
        if masses.ndim != 1 or len(masses) != len(self.grid):
            raise ValidationError("masses must align with the grid")
        if not np.all(np.isfinite(masses)):
            raise ValidationError("masses must be finite")
        if np.any(masses < -1e-12):
            raise ValidationError("masses must be nonnegative")
        masses = np.where(masses < 0.0, 0.0, masses)
        total = float(np.sum(masses))
        if abs(total - 1.0) > MASS_TOL:
            raise ValidationError(f"masses must sum to 1 within {MASS_TOL}, got {total!r}")
        masses.setflags(write=False)
        object.__setattr__(self, "masses", masses)

    @classmethod
    def uniform(cls, grid: ParamGrid) -> "MassTable":
        n = len(grid)
        return cls(grid, np.full(n, 1.0 / n))

    @classmethod
    def from_weights(cls, grid: ParamGrid, weights: Sequence[float]) -> "MassTable":
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or len(w) != len(grid):
            raise ValidationError("weights must align with the grid")
        if np.any(w < 0.0) or not np.all(np.isfinite(w)):
            raise ValidationError("weights must be finite and nonnegative")
        total = float(np.sum(w))
        if total <= 0.0:
            raise ValidationError("weights must have positive total")
        return cls(grid, w / total)

    @classmethod
    def point_mass(cls, grid: ParamGrid, point: Point) -> "MassTable":
        masses = np.zeros(len(grid))
        masses[grid.index_of(point)] = 1.0
        return cls(grid, masses)

    @property
    def densities(self) -> np.ndarray:
        """Per-cell density: mass divided by cell volume."""
        return self.masses / self.grid.volumes

    def mass_of(self, point: Point) -> float:
        return float(self.masses[self.grid.index_of(point)])


@dataclass(frozen=True)
class ArgmaxResult:
    """An argmax over grid cells with explicit tie reporting.

    ``index``/``value`` identify the deterministic representative (lowest
    grid index among the ties).
    """

    value: Point
    index: int
    tied: bool
    tie_indices: tuple[int, ...]


def _argmax_with_ties(grid: ParamGrid, values: np.ndarray) -> ArgmaxResult:
    top = float(np.max(values))
    ties = tuple(int(i) for i in np.flatnonzero(values == top))
    return ArgmaxResult(
        value=grid.points[ties[0]], index=ties[0], tied=len(ties) > 1, tie_indices=ties
    )


@dataclass(frozen=True, eq=False)
class MarginalMap:
    """A many-to-one labelling of grid points by codomain values.

    ``assignment[i]`` is the codomain value of source point ``i``. The
    codomain grid holds the ordered distinct values (first-occurrence
    order) with induced volumes: the volume of a codomain value is the
    total volume of its preimage.
    """

    grid: ParamGrid
    assignment: tuple
    codomain: ParamGrid
    preimages: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        assignment = tuple(self.assignment)
        if len(assignment) != len(self.grid):
            raise ValidationError("assignment must cover every grid point exactly once")
        seen: dict[Point, int] = {}
        order: list[Point] = []
        groups: list[list[int]] = []
        for i, value in enumerate(assignment):
            if value not in seen:
                seen[value] = len(order)
                order.append(value)
                groups.append([])
            groups[seen[value]].append(i)
        if tuple(order) != self.codomain.points:
            raise ValidationError("codomain points must be exactly the assignment image")
        expected = tuple(tuple(g) for g in groups)
        if expected != self.preimages:
            raise ValidationError("preimages do not match the assignment")
        object.__setattr__(self, "assignment", assignment)
        object.__setattr__(self, "preimages", expected)

    @classmethod
    def from_function(cls, grid: ParamGrid, fn: Callable[[Point], Point]) -> "MarginalMap":
        assignment = tuple(fn(p) for p in grid.points)
        return cls.from_assignment(grid, assignment)

    @classmethod
    def from_assignment(cls, grid: ParamGrid, assignment: Sequence[Point]) -> "MarginalMap":
        assignment = tuple(assignment)
        if len(assignment) != len(grid):
            raise ValidationError("assignment must cover every grid point exactly once")
        seen: dict[Point, int] = {}
        order: list[Point] = []
        groups: list[list[int]] = []
        for i, value in enumerate(assignment):
            try:
                known = value in seen
            except TypeError as exc:
                raise ValidationError("codomain values must be hashable") from exc
            if not known:
                seen[value] = len(order)
                order.append(value)
                groups.append([])
            groups[seen[value]].append(i)
        volumes = [float(np.sum(grid.volumes[g])) for g in groups]
        codomain = ParamGrid(tuple(order), volumes)
        return cls(grid, assignment, codomain, tuple(tuple(g) for g in groups))

    @classmethod
    def identity(cls, grid: ParamGrid) -> "MarginalMap":
        return cls.from_assignment(grid, grid.points)

    @classmethod
    def constant(cls, grid: ParamGrid, value: Point) -> "MarginalMap":
        return cls.from_assignment(grid, (value,) * len(grid))

    def index_of(self, value: Point) -> int:
        return self.codomain.index_of(value)


def make_uniform_grid(lo: float, hi: float, n_cells: int) -> ParamGrid:
    """Split ``[lo, hi]`` into ``n_cells`` equal cells, represented by midpoints."""
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValidationError("make_uniform_grid: bounds must be finite")
    if not lo < hi:
        raise ValidationError("make_uniform_grid: lo must be < hi")
    if not isinstance(n_cells, (int, np.integer)) or n_cells < 1:
        raise ValidationError("make_uniform_grid: n_cells must be a positive integer")
    width = (hi - lo) / n_cells
    points = tuple(lo + (i + 0.5) * width for i in range(n_cells))
    return ParamGrid(points, np.full(n_cells, width))


def condition(prior: MassTable, model: Any, observed: Point) -> MassTable:
    """Bayes update of ``prior`` on one observation.

    Posterior masses are proportional to ``prior[i] * f_i(observed)``
    where ``f_i`` is the model's likelihood at grid point ``i``. Raises
    :class:`NumericError` when the total predictive mass is zero, i.e.
    the data are impossible under this model and prior.
    """
    lik = np.asarray(model.likelihood_column(prior.grid, observed), dtype=float)
    weights = prior.masses * lik
    total = float(np.sum(weights))
    if not math.isfinite(total):
        raise NumericError("condition: non-finite predictive mass")
    if total <= 0.0:
        raise NumericError("condition: data impossible under model+prior (zero predictive mass)")
    return MassTable(prior.grid, weights / total)


def pushforward(table: MassTable, transform: Callable[[float], float]) -> MassTable:
    """Transport a mass table through a 1-1 transform of a numeric grid.

    Cell masses are untouched; the image grid gets the transformed points
    and the image-cell volumes ``|g(p + v/2) - g(p - v/2)|``, so densities
    absorb the local stretch of the transform.
    """
    grid = table.grid
    if not grid.is_numeric:
        raise ValidationError("pushforward: needs a numeric scalar grid")
    new_points = []
    new_volumes = []
    for p, v in zip(grid.points, grid.volumes):
        image = float(transform(float(p)))
        lo = float(transform(float(p) - v / 2.0))
        hi = float(transform(float(p) + v / 2.0))
        if not (math.isfinite(image) and math.isfinite(lo) and math.isfinite(hi)):
            raise ValidationError("pushforward: transform produced non-finite values")
        width = abs(hi - lo)
        if width <= 0.0:
            raise ValidationError("pushforward: transform collapses a cell (not 1-1)")
        new_points.append(image)
        new_volumes.append(width)
    if len(set(new_points)) != len(new_points):
        raise ValidationError("pushforward: transform is not injective on the grid")
    return MassTable(ParamGrid(tuple(new_points), new_volumes), table.masses)


def marginalize(table: MassTable, mapping: MarginalMap) -> MassTable:
    """Push masses through a many-to-one map: codomain mass is the preimage sum."""
    if mapping.grid.points != table.grid.points:
        raise ValidationError("marginalize: map is defined on a different grid")
    masses = np.array([float(np.sum(table.masses[list(g)])) for g in mapping.preimages])
    return MassTable(mapping.codomain, masses)


def prob_of(table: MassTable, subset: Predicate) -> float:
    """Total mass of the points satisfying ``subset``. Compensated summation."""
    return math.fsum(
        m for p, m in zip(table.grid.points, table.masses.tolist()) if subset(p)
    )


def normal_cdf(z: float) -> float:
    """Standard normal CDF, absolute error below 1e-12 over the real line."""
    z = float(z)
    if not math.isfinite(z):
        raise ValidationError("normal_cdf: z must be finite")
    return 0.5 * math.erfc(-z / math.sqrt(2.0))
