"""Distance-based merging of belief-base profiles under a constraint.

A counting distance between interpretations is g(|symmetric difference|)
for a nondecreasing gauge g with g(0)=0 and g(k)>0 otherwise; Hamming is
g=id, drastic is g=1 off zero.  Per-interpretation distances to the bases
are aggregated by sum or by the descending-sorted vector compared
lexicographically, and merging keeps the constraint models with minimal
aggregate.  Everything works on model sets; distances are integer-valued,
so comparisons are exact.
"""

from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering

from .interp import Interpretation, ModelSet, Universe, UniverseMismatchError


class InconsistentBaseError(ValueError):
    """Bases in a profile must be consistent (non-empty model sets)."""


class EmptyInputError(ValueError):
    """Aggregation needs at least one distance value."""


@dataclass(frozen=True)
class CountingDistance:
    """Distance d(w, w') = gauge[|w xor w'|]; the gauge must cover 0..|U|."""

    gauge: tuple
    name: str = field(default="table", compare=False)

    def __post_init__(self):
        gauge = tuple(int(v) for v in self.gauge)
        if not gauge or gauge[0] != 0:
            raise ValueError("gauge must start with g(0) = 0")
        if any(v <= 0 for v in gauge[1:]):
            raise ValueError("gauge must be positive away from zero")
        if any(a > b for a, b in zip(gauge, gauge[1:])):
            raise ValueError("gauge must be nondecreasing")
        object.__setattr__(self, "gauge", gauge)

    @classmethod
    def hamming(cls, n: int) -> "CountingDistance":
        return cls(tuple(range(n + 1)), "hamming")

    @classmethod
    def drastic(cls, n: int) -> "CountingDistance":
        return cls((0,) + (1,) * n, "drastic")

    @classmethod
    def from_gauge(cls, positive_values, name: str = "table") -> "CountingDistance":
        """Build from g(1), g(2), ...; g(0) = 0 is implied."""
        return cls((0,) + tuple(positive_values), name)

    def of(self, diff: int) -> int:
        if diff >= len(self.gauge):
            raise ValueError(
                f"gauge covers differences up to {len(self.gauge) - 1}, got {diff}"
            )
        return self.gauge[diff]


@dataclass(frozen=True)
class Base:
    """Consistent belief base: a non-empty model set, optionally with the
    source formulas it came from (metadata, not part of equality)."""

    models: ModelSet
    source: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if not self.models:
            raise InconsistentBaseError("base has no models")


class Profile:
    """Non-empty multiset of bases over one universe.

    Presentation order is kept for display, but equality and hashing are by
    the multiset of model sets, so two presentations of the same multiset
    are interchangeable everywhere.
    """

    __slots__ = ("bases", "_key", "_hash")

    def __init__(self, bases):
        bases = tuple(bases)
        if not bases:
            raise ValueError("profile needs at least one base")
        universe = bases[0].models.universe
        for b in bases:
            if b.models.universe != universe:
                raise UniverseMismatchError("bases over different universes")
        self.bases = bases
        self._key = (universe, tuple(sorted(tuple(sorted(b.models.masks)) for b in bases)))
        self._hash = hash(self._key)

    @classmethod
    def from_model_sets(cls, *msets) -> "Profile":
        return cls(tuple(Base(m) for m in msets))

    @property
    def universe(self) -> Universe:
        return self.bases[0].models.universe

    def __len__(self):
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    def __eq__(self, other):
        return isinstance(other, Profile) and self._key == other._key

    def __hash__(self):
        return self._hash

    def mmod(self) -> tuple:
        return tuple(b.models for b in self.bases)

    def union(self, other: "Profile") -> "Profile":
        """Multiset union (concatenation)."""
        if other.universe != self.universe:
            raise UniverseMismatchError("profiles over different universes")
        return Profile(self.bases + other.bases)

    def common_models(self) -> ModelSet:
        """Intersection of all base model sets (models of the whole profile)."""
        masks = frozenset.intersection(*(b.models.masks for b in self.bases))
        return ModelSet(self.universe, masks)

    def equivalent(self, other: "Profile") -> bool:
        return self == other

    def render(self) -> str:
        return "; ".join(b.models.compact() for b in self.bases)

    def __repr__(self):
        return f"Profile[{self.render()}]"


class Aggregator(Enum):
    SIGMA = "sigma"
    GMAX = "gmax"


@total_ordering
@dataclass(frozen=True)
class AggValue:
    """Aggregated distance: a scalar for sigma, a descending vector for gmax.

    Values of different kinds refuse to compare; gmax vectors additionally
    must have equal length (they come from profiles of the same size).
    """

    kind: Aggregator
    value: object

    def _check(self, other):
        if not isinstance(other, AggValue) or other.kind != self.kind:
            raise TypeError(f"cannot compare {self!r} with {other!r}")
        if self.kind is Aggregator.GMAX and len(self.value) != len(other.value):
            raise TypeError("gmax vectors of different lengths are incomparable")

    def __lt__(self, other):
        self._check(other)
        return self.value < other.value

    def __str__(self):
        if self.kind is Aggregator.SIGMA:
            return str(self.value)
        return "(" + ",".join(str(v) for v in self.value) + ")"

    def __repr__(self):
        return f"AggValue({self.kind.value}, {self})"


def aggregate(f: Aggregator, dists) -> AggValue:
    """Sum for sigma; descending-sorted tuple for gmax."""
    dists = tuple(dists)
    if not dists:
        raise EmptyInputError("no distances to aggregate")
    if f is Aggregator.SIGMA:
        return AggValue(f, sum(dists))
    return AggValue(f, tuple(sorted(dists, reverse=True)))


def dist_interp(d: CountingDistance, w: Interpretation, w2: Interpretation) -> int:
    if w.universe != w2.universe:
        raise UniverseMismatchError("interpretations over different universes")
    return d.of((w.mask ^ w2.mask).bit_count())


def dist_base(d: CountingDistance, w: Interpretation, base: Base) -> int:
    if w.universe != base.models.universe:
        raise UniverseMismatchError("interpretation and base over different universes")
    mask = w.mask
    return min(d.of((mask ^ m).bit_count()) for m in base.models.masks)


def _check_merge_inputs(profile: Profile, mu: ModelSet, d: CountingDistance):
    if mu.universe != profile.universe:
        raise UniverseMismatchError("constraint and profile over different universes")
    if len(d.gauge) <= len(profile.universe):
        raise ValueError(
            f"distance gauge covers differences up to {len(d.gauge) - 1}, "
            f"universe has {len(profile.universe)} atoms"
        )


def merge(profile: Profile, mu: ModelSet, d: CountingDistance, f: Aggregator) -> ModelSet:
    """Constraint models at minimal aggregated distance from the profile.

    Ties are all retained; an empty constraint yields an empty result.
    """
    _check_merge_inputs(profile, mu, d)
    universe = profile.universe
    if not mu.masks:
        return ModelSet.empty(universe)
    gauge = d.gauge
    base_masks = [tuple(b.models.masks) for b in profile.bases]
    best = None
    best_masks = []
    for w in sorted(mu.masks):
        dists = [min(gauge[(w ^ m).bit_count()] for m in bm) for bm in base_masks]
        score = aggregate(f, dists)
        if best is None or score < best:
            best = score
            best_masks = [w]
        elif not score < best and not best < score:
            best_masks.append(w)
    return ModelSet(universe, best_masks)


@dataclass(frozen=True)
class ScoreRow:
    interpretation: Interpretation
    per_base: tuple
    value: AggValue


def score_table(profile: Profile, mu: ModelSet, d: CountingDistance, f: Aggregator):
    """Per-interpretation distance rows, ordered by interpretation weight."""
    _check_merge_inputs(profile, mu, d)
    rows = []
    for w in mu.members:
        dists = tuple(dist_base(d, w, b) for b in profile.bases)
        rows.append(ScoreRow(w, dists, aggregate(f, dists)))
    return tuple(rows)


class MergeOperator:
    """Callable (profile, constraint) -> model set, with memoized results."""

    def __init__(self, distance: CountingDistance, aggregator: Aggregator):
        self.distance = distance
        self.aggregator = aggregator
        self._memo = {}

    @property
    def label(self) -> str:
        return f"merge({self.distance.name},{self.aggregator.value})"

    def __call__(self, profile: Profile, mu: ModelSet) -> ModelSet:
        key = (profile, mu)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = merge(profile, mu, self.distance, self.aggregator)
        return hit

    def __repr__(self):
        return f"<{self.label}>"
