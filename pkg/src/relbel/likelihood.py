"""Pure-likelihood inference on a grid.

Likelihood curves are stored unnormalized: they are defined only up to a
positive constant, and every operation here (argmax, relative-likelihood
regions, profiles) is invariant under that constant. The module also
builds the finite word model whose relative-likelihood region is
simultaneously tiny and almost surely wrong, the standard counterexample
to reading relative likelihood as strength of evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np
from scipy import sparse

from .errors import NumericError, ValidationError
from .grids import ArgmaxResult, MarginalMap, ParamGrid, Point, _argmax_with_ties, _readonly
from .models import TabularModel


@dataclass(frozen=True, eq=False)
class LikelihoodCurve:
    """Unnormalized likelihood values over a grid; at least one positive."""

    grid: ParamGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = _readonly(self.values, "values")
        if len(values) != len(self.grid):
            raise ValidationError("likelihood values must align with the grid")
        if np.any(values < 0.0) or not np.all(np.isfinite(values)):
            raise ValidationError("likelihood values must be finite and nonnegative")
        if not np.any(values > 0.0):
            raise NumericError("likelihood_curve: all values are zero")
        object.__setattr__(self, "values", values)

    def scaled(self, c: float) -> "LikelihoodCurve":
        if c <= 0.0:
            raise ValidationError("scale constant must be positive")
        return LikelihoodCurve(self.grid, self.values * float(c))


def likelihood_curve(model, grid: ParamGrid, observed: Point) -> LikelihoodCurve:
    """Evaluate ``f_theta(observed)`` over the grid."""
    return LikelihoodCurve(grid, np.asarray(model.likelihood_column(grid, observed), float))


def mle(curve: LikelihoodCurve) -> ArgmaxResult:
    """Maximizing grid point; ties reported and broken by lowest index."""
    return _argmax_with_ties(curve.grid, curve.values)


def likelihood_region(curve: LikelihoodCurve, gamma: float) -> tuple:
    """Points whose relative likelihood is at least ``1 - gamma``.

    The region always contains the maximizer, grows with gamma, and at
    gamma = 1 equals the support of the curve.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ValidationError("likelihood_region: gamma must be in [0, 1]")
    top = float(np.max(curve.values))
    keep = (curve.values > 0.0) & (curve.values / top >= 1.0 - gamma)
    return tuple(p for p, k in zip(curve.grid.points, keep) if k)


def profile_likelihood(curve: LikelihoodCurve, mapping: MarginalMap) -> LikelihoodCurve:
    """Maximize the curve over each preimage of the map."""
    if mapping.grid.points != curve.grid.points:
        raise ValidationError("profile_likelihood: map is defined on a different grid")
    values = np.array([float(np.max(curve.values[list(g)])) for g in mapping.preimages])
    return LikelihoodCurve(mapping.codomain, values)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        # exact binary value of the float; pass a string for decimal exactness
        return Fraction(*value.as_integer_ratio())
    raise ValidationError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class WordModelSpec:
    """Parameters of the finite word model.

    ``alphabet_size`` letters, words up to ``max_length`` letters (the
    empty word included), and a rational perturbation ``delta`` kept small
    enough that every probability stays in (0, 1):
    ``1/(k+1) + delta <= 1`` and ``1/(k+1) - delta/k > 0``.
    """

    alphabet_size: int
    max_length: int
    delta: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.alphabet_size, (int, np.integer)) or self.alphabet_size < 2:
            raise ValidationError("word model: alphabet_size must be an integer >= 2")
        if not isinstance(self.max_length, (int, np.integer)) or self.max_length < 1:
            raise ValidationError("word model: max_length must be an integer >= 1")
        delta = _as_fraction(self.delta)
        k = int(self.alphabet_size)
        if delta <= 0:
            raise ValidationError("word model: delta must be positive")
        if Fraction(1, k + 1) + delta > 1:
            raise ValidationError("word model: 1/(k+1) + delta must not exceed 1")
        if Fraction(1, k + 1) - delta / k <= 0:
            raise ValidationError("word model: 1/(k+1) - delta/k must stay positive")
        object.__setattr__(self, "alphabet_size", int(self.alphabet_size))
        object.__setattr__(self, "max_length", int(self.max_length))
        object.__setattr__(self, "delta", delta)


EMPTY_WORD = ""


def word_length(word: str) -> int:
    return 0 if word == EMPTY_WORD else word.count(",") + 1


def chop_last(word: str) -> str:
    """Drop the last letter; the empty word maps to itself."""
    if word == EMPTY_WORD:
        return EMPTY_WORD
    head, _, _ = word.rpartition(",")
    return head


@dataclass(frozen=True, eq=False)
class WordModel:
    """The word model plus its exact rational bookkeeping.

    Words are strings of comma-separated letter indices (``""`` is the
    empty word, ``"3,17"`` a two-letter word). The float model is built
    from rows that sum to 1 exactly in rational arithmetic; the rational
    rows are kept so probabilities of interest stay exact.
    """

    spec: WordModelSpec
    words: tuple[str, ...]
    lengths: Mapping[str, int]
    parents: Mapping[str, str]
    rational_rows: Mapping[str, Mapping[str, Fraction]]
    model: TabularModel

    def density(self, theta: str, observed: str) -> Fraction:
        return self.rational_rows[theta].get(observed, Fraction(0))

    def truncation_probability(self, theta: str) -> Fraction:
        """Exact probability that the observation is ``theta`` plus one letter."""
        row = self.rational_rows[theta]
        return sum(
            (mass for word, mass in row.items() if chop_last(word) == theta and word != theta),
            Fraction(0),
        )


def word_model(spec: WordModelSpec, state_cap: int = 10**6) -> tuple[TabularModel, WordModel]:
    """Build the word model as a sparse tabular backend plus metadata.

    The sample space equals the parameter space: every word of length 0
    to ``max_length``. A word shorter than the maximum keeps its own
    probability ``1/(k+1) + delta`` and spreads ``1/(k+1) - delta/k`` over
    each one-letter extension; maximal words are point masses.
    """
    k, max_len = spec.alphabet_size, spec.max_length
    n_states = (k ** (max_len + 1) - 1) // (k - 1)
    if n_states > state_cap:
        raise ValidationError(
            f"word model: {n_states} states exceeds the cap of {state_cap}"
        )

    words: list[str] = [EMPTY_WORD]
    frontier = [EMPTY_WORD]
    for _ in range(max_len):
        frontier = [
            (f"{w},{i}" if w else str(i)) for w in frontier for i in range(1, k + 1)
        ]
        words.extend(frontier)
    index = {w: i for i, w in enumerate(words)}

    own = Fraction(1, k + 1) + spec.delta
    child = Fraction(1, k + 1) - spec.delta / k
    rows: dict[str, dict[str, Fraction]] = {}
    data, row_idx, col_idx = [], [], []
    for w in words:
        if word_length(w) < max_len:
            row = {w: own}
            for i in range(1, k + 1):
                row[f"{w},{i}" if w else str(i)] = child
        else:
            row = {w: Fraction(1)}
        if sum(row.values()) != 1:
            raise NumericError("word_model: rational row does not sum to one")
        rows[w] = row
        for x, mass in row.items():
            row_idx.append(index[w])
            col_idx.append(index[x])
            data.append(float(mass))

    matrix = sparse.csr_matrix(
        (data, (row_idx, col_idx)), shape=(len(words), len(words)), dtype=float
    )
    model = TabularModel(tuple(words), tuple(words), matrix, np.ones(len(words)))
    meta = WordModel(
        spec=spec,
        words=tuple(words),
        lengths={w: word_length(w) for w in words},
        parents={w: chop_last(w) for w in words},
        rational_rows=rows,
        model=model,
    )
    return model, meta
