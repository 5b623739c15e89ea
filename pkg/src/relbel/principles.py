"""Finite inference bases and the sufficiency/conditionality/likelihood relations.

An inference base is a finite sample space, a finite family of exact
rational distributions over it, and one observed point. On that footing
the three classical relations become machine-checkable:

* L: observed likelihood vectors proportional by a single positive constant,
* S: minimal sufficient quotients isomorphic as models, observed carried over,
* C: one base is the other conditioned on an ancillary statistic.

Everything is exact rational arithmetic: proportionality and equality of
models are yes/no questions and float ties would corrupt the relation
edges. The verifier enumerates a capped universe of bases and checks the
containments S in L, C in L, and closure(S union C) in L inside that
universe, and exhibits a triple witnessing that C is not transitive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Sequence

from .errors import ValidationError

Blocks = tuple[tuple[int, ...], ...]


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(*value.as_integer_ratio())
    if isinstance(value, str):
        return Fraction(value)
    raise ValidationError(f"cannot interpret {value!r} as a probability")


@dataclass(frozen=True, eq=True)
class InferenceBase:
    """A finite (sample space, model, observed point) triple.

    ``probs[i][j]`` is the probability of sample point j under theta i.
    Float entries are converted to their exact binary rational and each
    row is renormalized exactly provided it was within 1e-12 of one.
    """

    probs: tuple[tuple[Fraction, ...], ...]
    observed: int
    sample_points: tuple[str, ...] = ()
    thetas: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        rows = tuple(tuple(_to_fraction(p) for p in row) for row in self.probs)
        if not rows or not rows[0]:
            raise ValidationError("inference base needs at least one theta and one sample point")
        width = len(rows[0])
        normalized = []
        for i, row in enumerate(rows):
            if len(row) != width:
                raise ValidationError("probability rows must have equal length")
            if any(p < 0 for p in row):
                raise ValidationError("probabilities must be nonnegative")
            total = sum(row)
            if total != 1:
                if abs(float(total) - 1.0) > 1e-12:
                    raise ValidationError(f"row {i} sums to {float(total)!r}, expected 1")
                row = tuple(p / total for p in row)
            normalized.append(row)
        rows = tuple(normalized)
        if not 0 <= int(self.observed) < width:
            raise ValidationError("observed index is outside the sample space")
        if all(row[self.observed] == 0 for row in rows):
            raise ValidationError("observed point has zero probability under every theta")
        samples = tuple(self.sample_points) or tuple(f"x{j}" for j in range(width))
        thetas = tuple(self.thetas) or tuple(f"t{i}" for i in range(len(rows)))
        if len(samples) != width or len(set(samples)) != width:
            raise ValidationError("sample labels must be distinct and match the row width")
        if len(thetas) != len(rows) or len(set(thetas)) != len(rows):
            raise ValidationError("theta labels must be distinct and match the row count")
        object.__setattr__(self, "probs", rows)
        object.__setattr__(self, "observed", int(self.observed))
        object.__setattr__(self, "sample_points", samples)
        object.__setattr__(self, "thetas", thetas)

    @property
    def n_samples(self) -> int:
        return len(self.probs[0])

    @property
    def n_thetas(self) -> int:
        return len(self.probs)

    def observed_vector(self) -> tuple[Fraction, ...]:
        return tuple(row[self.observed] for row in self.probs)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.probs)


def _direction(vector: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Canonical representative of a ray: scale so the first nonzero is 1."""
    for v in vector:
        if v != 0:
            return tuple(x / v for x in vector)
    return None


# ---------------------------------------------------------------------------
# partitions and statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StatisticPartition:
    """A partition of the sample points, tagged with how it arose."""

    blocks: Blocks
    label: Literal["minimal_sufficient", "ancillary", "generic"] = "generic"

    def __post_init__(self) -> None:
        flat = sorted(i for block in self.blocks for i in block)
        if flat != list(range(len(flat))):
            raise ValidationError("blocks must partition the sample indices")

    def block_of(self, index: int) -> int:
        for b, block in enumerate(self.blocks):
            if index in block:
                return b
        raise ValidationError(f"index {index} is not covered by the partition")


def _canonical_blocks(groups: Iterable[Iterable[int]]) -> Blocks:
    blocks = [tuple(sorted(g)) for g in groups]
    blocks.sort(key=lambda b: b[0])
    return tuple(blocks)


def minimal_sufficient_partition(base: InferenceBase) -> StatisticPartition:
    """Group sample points whose likelihood vectors are positively proportional.

    This is the coarsest sufficient reduction: the conditional
    distribution inside each block does not involve theta. Points that
    are impossible under every theta share the zero direction and land in
    one block together.
    """
    groups: dict[object, list[int]] = {}
    for j in range(base.n_samples):
        key = _direction(base.column(j))
        groups.setdefault(key, []).append(j)
    return StatisticPartition(_canonical_blocks(groups.values()), label="minimal_sufficient")


def is_sufficient_partition(base: InferenceBase, blocks: Blocks) -> bool:
    """Exact check that conditional distributions given blocks are theta-free."""
    for block in blocks:
        conditionals = []
        for row in base.probs:
            total = sum(row[j] for j in block)
            if total == 0:
                continue
            conditionals.append(tuple(row[j] / total for j in block))
        if any(c != conditionals[0] for c in conditionals[1:]):
            return False
    return True


def _set_partitions(items: tuple[int, ...]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def ancillary_partitions(base: InferenceBase, max_blocks: int | None = None) -> tuple[StatisticPartition, ...]:
    """All partitions whose block probabilities do not involve theta.

    Exhaustive over set partitions, so the sample space is capped at 8
    points. The one-block partition is always among the results.
    """
    if base.n_samples > 8:
        raise ValidationError("ancillary_partitions: sample space larger than the cap of 8")
    cap = max_blocks if max_blocks is not None else base.n_samples
    found = []
    for part in _set_partitions(tuple(range(base.n_samples))):
        if len(part) > cap:
            continue
        ancillary = True
        for block in part:
            sums = {sum(row[j] for j in block) for row in base.probs}
            if len(sums) > 1:
                ancillary = False
                break
        if ancillary:
            found.append(StatisticPartition(_canonical_blocks(part), label="ancillary"))
    found.sort(key=lambda p: (len(p.blocks), p.blocks))
    return tuple(found)


# ---------------------------------------------------------------------------
# the three relations
# ---------------------------------------------------------------------------


def _require_shared_thetas(b0: InferenceBase, b1: InferenceBase) -> None:
    if b0.thetas != b1.thetas:
        raise ValidationError("relation checks need a shared theta list")


def related_L(b0: InferenceBase, b1: InferenceBase) -> tuple[bool, Fraction | None]:
    """Observed likelihood vectors proportional by one positive constant.

    The constant is uniform over theta; a per-theta constant would relate
    almost everything and break the containment of S in L.
    """
    _require_shared_thetas(b0, b1)
    v0 = b0.observed_vector()
    v1 = b1.observed_vector()
    constant: Fraction | None = None
    for a, b in zip(v0, v1):
        if (a == 0) != (b == 0):
            return False, None
        if a != 0:
            ratio = a / b
            if constant is None:
                constant = ratio
            elif ratio != constant:
                return False, None
    if constant is None or constant <= 0:
        return False, None
    return True, constant


def _quotient(base: InferenceBase) -> tuple[Blocks, list[tuple[Fraction, ...]], int]:
    """Minimal sufficient blocks, their probability vectors, observed block."""
    partition = minimal_sufficient_partition(base)
    vectors = [
        tuple(sum(row[j] for j in block) for row in base.probs) for block in partition.blocks
    ]
    return partition.blocks, vectors, partition.block_of(base.observed)


def related_S(
    b0: InferenceBase, b1: InferenceBase, max_quotient: int = 6
) -> tuple[bool, tuple[tuple[int, int], ...] | None]:
    """Minimal sufficient quotients isomorphic as models, observed carried over.

    Searches measure-preserving bijections between the quotient sample
    spaces; the bijection must send the observed statistic value of one
    base to the other's. The witness pairs map block indices of ``b1`` to
    block indices of ``b0``.
    """
    _require_shared_thetas(b0, b1)
    blocks0, vec0, obs0 = _quotient(b0)
    blocks1, vec1, obs1 = _quotient(b1)
    if len(blocks0) != len(blocks1):
        return False, None
    if len(blocks0) > max_quotient:
        raise ValidationError(
            f"related_S: quotient of size {len(blocks0)} exceeds the search cap {max_quotient}"
        )
    for perm in itertools.permutations(range(len(blocks0))):
        if perm[obs1] != obs0:
            continue
        if all(vec1[i] == vec0[perm[i]] for i in range(len(blocks1))):
            witness = tuple((i, perm[i]) for i in range(len(blocks1)))
            return True, witness
    return False, None


def _conditional_rows(
    base: InferenceBase, block: tuple[int, ...]
) -> tuple[tuple[Fraction, ...], ...] | None:
    """Model given an ancillary block: rescale inside, zero outside.

    Returns None when the block probability is zero (conditioning there
    is vacuous for every theta).
    """
    block_set = set(block)
    mass = sum(base.probs[0][j] for j in block)
    if mass == 0:
        return None
    rows = []
    for row in base.probs:
        rows.append(tuple(row[j] / mass if j in block_set else Fraction(0) for j in row_indices(row)))
    return tuple(rows)


def row_indices(row: Sequence[Fraction]) -> range:
    return range(len(row))


def _conditional_keys(base: InferenceBase) -> list[tuple[Blocks, tuple[tuple[Fraction, ...], ...]]]:
    """Conditionings of the base on each ancillary block containing the observed point."""
    out = []
    for partition in ancillary_partitions(base):
        block = partition.blocks[partition.block_of(base.observed)]
        rows = _conditional_rows(base, block)
        if rows is not None:
            out.append((partition.blocks, rows))
    return out


def related_C(
    b0: InferenceBase, b1: InferenceBase, allow_relabel: bool = False
) -> tuple[bool, tuple[str, Blocks] | None]:
    """One base equals the other conditioned on an ancillary statistic.

    Requires literally equal sample spaces and observed data. The witness
    names which side was conditioned and by which partition. With
    ``allow_relabel`` the comparison also tries sample-point bijections
    that fix the observed point.
    """
    _require_shared_thetas(b0, b1)
    if b0.sample_points != b1.sample_points or b0.observed != b1.observed:
        return False, None
    for source, target, tag in ((b0, b1, "conditioned_first"), (b1, b0, "conditioned_second")):
        for blocks, rows in _conditional_keys(source):
            if rows == target.probs:
                return True, (tag, blocks)
            if allow_relabel and _matches_up_to_relabel(rows, target):
                return True, (tag, blocks)
    return False, None


def _matches_up_to_relabel(rows: tuple[tuple[Fraction, ...], ...], target: InferenceBase) -> bool:
    n = target.n_samples
    fixed = target.observed
    movable = [j for j in range(n) if j != fixed]
    for perm in itertools.permutations(movable):
        mapping = {fixed: fixed}
        mapping.update({src: dst for src, dst in zip(movable, perm)})
        relabeled = tuple(
            tuple(row[src] for src in sorted(mapping, key=lambda s: mapping[s])) for row in rows
        )
        if relabeled == target.probs:
            return True
    return False


# ---------------------------------------------------------------------------
# closure and the relation graph
# ---------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class RelationGraph:
    """Pairwise relation labels on a universe plus a closure of chosen labels."""

    universe: tuple[InferenceBase, ...]
    edges: tuple[tuple[int, int, frozenset], ...]
    closure_labels: frozenset
    closure_edges: frozenset


def closure(
    universe: Sequence[InferenceBase],
    labels: Iterable[str] = ("S", "C"),
    max_size: int = 200,
) -> RelationGraph:
    """Label all pairs with S/C/L and close the chosen labels transitively.

    The closure is the smallest equivalence relation containing the
    selected edges, computed by union-find; reflexive pairs are implied
    and not stored.
    """
    bases = tuple(universe)
    if len(bases) > max_size:
        raise ValidationError(f"closure: universe of {len(bases)} exceeds the cap {max_size}")
    chosen = frozenset(labels)
    if not chosen <= {"S", "C"}:
        raise ValidationError("closure: labels must be a subset of {'S', 'C'}")
    edges = []
    uf = _UnionFind(len(bases))
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            tags = set()
            if related_L(bases[i], bases[j])[0]:
                tags.add("L")
            if related_S(bases[i], bases[j])[0]:
                tags.add("S")
            if related_C(bases[i], bases[j])[0]:
                tags.add("C")
            if tags:
                edges.append((i, j, frozenset(tags)))
                if tags & chosen:
                    uf.union(i, j)
    closed = frozenset(
        (i, j)
        for i in range(len(bases))
        for j in range(i + 1, len(bases))
        if uf.find(i) == uf.find(j)
    )
    return RelationGraph(
        universe=bases, edges=tuple(edges), closure_labels=chosen, closure_edges=closed
    )


# ---------------------------------------------------------------------------
# universe enumeration and the containment verifier
# ---------------------------------------------------------------------------


def _distributions(size: int, denominator_cap: int) -> list[tuple[Fraction, ...]]:
    seen: set[tuple[Fraction, ...]] = set()
    for d in range(1, denominator_cap + 1):
        for cuts in itertools.combinations(range(size + d - 1), size - 1):
            parts = []
            prev = -1
            for c in cuts:
                parts.append(c - prev - 1)
                prev = c
            parts.append(size + d - 2 - prev)
            seen.add(tuple(Fraction(p, d) for p in parts))
    return sorted(seen)


def enumerate_universe(
    max_sample_size: int = 3, n_thetas: int = 2, denominator_cap: int = 4
) -> tuple[InferenceBase, ...]:
    """Every inference base with small rational probabilities.

    Sample spaces of size 1 to the cap, each row an arbitrary distribution
    whose probabilities have a common denominator at most the cap, and
    every observed point that is possible under at least one theta.
    """
    bases = []
    for size in range(1, max_sample_size + 1):
        vectors = _distributions(size, denominator_cap)
        for rows in itertools.product(vectors, repeat=n_thetas):
            for observed in range(size):
                if all(row[observed] == 0 for row in rows):
                    continue
                bases.append(InferenceBase(probs=rows, observed=observed))
    return tuple(bases)


@dataclass(frozen=True)
class NonTransitivityWitness:
    first: int
    middle: int
    last: int
    first_base: str
    middle_base: str
    last_base: str


@dataclass(frozen=True)
class BirnbaumReport:
    """Containment facts for S, C, L over an enumerated finite universe.

    ``l_fraction_captured`` is how much of L (within the universe) the
    closure of S union C already reaches; full equality is a statement
    about the unrestricted universe and is reported, never asserted.
    """

    max_sample_size: int
    n_thetas: int
    denominator_cap: int
    universe_size: int
    l_pairs: int
    s_pairs: int
    c_pairs: int
    s_violations: int
    c_violations: int
    closure_pairs: int
    closure_within_l: bool
    l_fraction_captured: float
    c_witness: NonTransitivityWitness | None


def verify_birnbaum(
    max_sample_size: int = 3,
    n_thetas: int = 2,
    denominator_cap: int = 4,
    max_universe: int = 100_000,
) -> BirnbaumReport:
    """Exhaustively check S in L, C in L, and closure(S union C) in L.

    Uses exact canonical keys instead of pairwise scans: two bases are
    L-related iff their observed likelihood directions match; S-related
    iff their minimal sufficient quotients carry identical block
    probability vectors with the observed blocks matching (block vectors
    inside one quotient are pairwise distinct, so the matching bijection
    is unique when it exists); C-related iff one's matrix appears among
    the other's ancillary conditionings on the same sample space and
    observed point. The keyed checks agree with the pairwise operations,
    which the test suite verifies on samples.
    """
    bases = enumerate_universe(max_sample_size, n_thetas, denominator_cap)
    if len(bases) > max_universe:
        raise ValidationError(
            f"verify_birnbaum: universe of {len(bases)} exceeds the guard {max_universe}"
        )
    n = len(bases)

    l_keys = []
    s_keys = []
    own_keys = []
    for base in bases:
        l_keys.append((base.n_thetas, _direction(base.observed_vector())))
        blocks, vectors, obs_block = _quotient(base)
        s_keys.append((frozenset(vectors), vectors[obs_block]))
        own_keys.append((base.sample_points, base.observed, base.probs))

    by_own_key: dict[object, list[int]] = {}
    for i, key in enumerate(own_keys):
        by_own_key.setdefault(key, []).append(i)

    c_adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for i, base in enumerate(bases):
        for _, rows in _conditional_keys(base):
            for j in by_own_key.get((base.sample_points, base.observed, rows), ()):
                if j != i:
                    c_adj[i].add(j)
                    c_adj[j].add(i)

    def group_pairs(keys: list) -> tuple[int, dict[object, list[int]]]:
        groups: dict[object, list[int]] = {}
        for i, key in enumerate(keys):
            groups.setdefault(key, []).append(i)
        pairs = sum(len(g) * (len(g) - 1) // 2 for g in groups.values())
        return pairs, groups

    l_pairs, l_groups = group_pairs(l_keys)
    s_pairs, s_groups = group_pairs(s_keys)

    s_violations = 0
    for group in s_groups.values():
        keys = {l_keys[i] for i in group}
        if len(keys) > 1:
            s_violations += 1

    c_pairs = 0
    c_violations = 0
    for i in range(n):
        for j in c_adj[i]:
            if j > i:
                c_pairs += 1
                if l_keys[i] != l_keys[j]:
                    c_violations += 1

    uf = _UnionFind(n)
    for group in s_groups.values():
        for a, b in zip(group, group[1:]):
            uf.union(a, b)
    for i in range(n):
        for j in c_adj[i]:
            uf.union(i, j)
    components: dict[int, list[int]] = {}
    for i in range(n):
        components.setdefault(uf.find(i), []).append(i)
    closure_pairs = sum(len(c) * (len(c) - 1) // 2 for c in components.values())
    closure_within_l = all(len({l_keys[i] for i in comp}) == 1 for comp in components.values())

    witness = None
    for middle in range(n):
        neighbors = sorted(c_adj[middle])
        for a, b in itertools.combinations(neighbors, 2):
            if b not in c_adj[a]:
                witness = NonTransitivityWitness(
                    first=a,
                    middle=middle,
                    last=b,
                    first_base=format_base(bases[a]),
                    middle_base=format_base(bases[middle]),
                    last_base=format_base(bases[b]),
                )
                break
        if witness:
            break

    return BirnbaumReport(
        max_sample_size=max_sample_size,
        n_thetas=n_thetas,
        denominator_cap=denominator_cap,
        universe_size=n,
        l_pairs=l_pairs,
        s_pairs=s_pairs,
        c_pairs=c_pairs,
        s_violations=s_violations,
        c_violations=c_violations,
        closure_pairs=closure_pairs,
        closure_within_l=closure_within_l,
        l_fraction_captured=(closure_pairs / l_pairs) if l_pairs else 1.0,
        c_witness=witness,
    )


# ---------------------------------------------------------------------------
# plain-text round trip
# ---------------------------------------------------------------------------


def format_base(base: InferenceBase) -> str:
    """Render theta rows by sample columns of p/q with the observed column starred."""
    header = " ".join(
        f"{label}*" if j == base.observed else label
        for j, label in enumerate(base.sample_points)
    )
    lines = [header]
    for row in base.probs:
        lines.append(" ".join(str(p) for p in row))
    return "\n".join(lines)


def parse_base(text: str) -> InferenceBase:
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if len(lines) < 2:
        raise ValidationError("parse_base: need a header line and at least one row")
    labels = lines[0].split()
    observed = [j for j, token in enumerate(labels) if token.endswith("*")]
    if len(observed) != 1:
        raise ValidationError("parse_base: exactly one column must carry the * marker")
    samples = tuple(token.rstrip("*") for token in labels)
    rows = tuple(tuple(Fraction(token) for token in line.split()) for line in lines[1:])
    return InferenceBase(probs=rows, observed=observed[0], sample_points=samples)
