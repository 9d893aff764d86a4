"""Refinements: turning a merge result into one that fits a fragment.

Three concrete refinements are shipped.  Closure-based replaces the result
by its closure; lex-based keeps a closed result and otherwise collapses to
the minimal model under a fixed total order; lex/closure-based picks the
lex branch exactly when the result misses every base of the profile, which
keeps the refinement fair.  Arbitrary refinements are expressed as mappings
f(M, X) subject to four properties (closed output, output within the
closure of M, identity on closed M, non-emptiness), validated here both
per-call and by exhaustive enumeration on small universes.
"""

import itertools
from dataclasses import dataclass, field

from .interp import (
    BooleanFn,
    Interpretation,
    ModelSet,
    Universe,
    UniverseMismatchError,
    closure,
    is_closed,
)
from .merge import Profile


class MappingViolationError(ValueError):
    def __init__(self, message, prop, models, profile_models):
        super().__init__(message)
        self.prop = prop
        self.models = models
        self.profile_models = profile_models


class LexOrder:
    """Total order on interpretations of one universe.

    Default is ascending integer value of the bit-vector.  An explicit list
    of interpretations may be given; listed ones come first in that order,
    the rest follow by ascending value.
    """

    __slots__ = ("universe", "first", "_rank")

    def __init__(self, universe: Universe, first=()):
        self.universe = universe
        self.first = tuple(first)
        rank = {}
        for w in self.first:
            if w.universe != universe:
                raise ValueError("order entries must share the universe")
            if w.mask in rank:
                raise ValueError(f"duplicate entry {w} in order")
            rank[w.mask] = len(rank)
        self._rank = rank

    @classmethod
    def default(cls, universe: Universe) -> "LexOrder":
        return cls(universe)

    def key(self, mask: int):
        pos = self._rank.get(mask)
        return (0, pos) if pos is not None else (1, mask)

    def minimum(self, mset: ModelSet) -> Interpretation:
        if not mset:
            raise ValueError("empty model set has no minimum")
        return Interpretation(self.universe, min(mset.masks, key=self.key))

    def __repr__(self):
        if not self.first:
            return "LexOrder(ascending)"
        return f"LexOrder({', '.join(str(w) for w in self.first)}, then ascending)"


@dataclass(frozen=True)
class BetaMapping:
    """Refinement kernel f(M, X) for a fixed Boolean function."""

    beta: BooleanFn
    fn: object = field(compare=False)
    name: str = ""


@dataclass(frozen=True)
class ClosureRefinement:
    beta: BooleanFn

    @property
    def label(self):
        return f"closure({self.beta})"


@dataclass(frozen=True)
class LexRefinement:
    beta: BooleanFn
    order: LexOrder = None

    @property
    def label(self):
        return f"lex({self.beta})"


@dataclass(frozen=True)
class LexClosureRefinement:
    beta: BooleanFn
    order: LexOrder = None

    @property
    def label(self):
        return f"lex-closure({self.beta})"


@dataclass(frozen=True)
class MappingRefinement:
    mapping: BetaMapping

    @property
    def label(self):
        return f"mapping({self.mapping.name or self.mapping.beta})"


def cardintersection(mset: ModelSet, profile: Profile) -> int:
    """Number of profile bases whose models meet `mset`."""
    if mset.universe != profile.universe:
        raise UniverseMismatchError("model set and profile over different universes")
    return sum(1 for b in profile.bases if not mset.masks.isdisjoint(b.models.masks))


def _lex_branch(kind, mset: ModelSet) -> ModelSet:
    if is_closed(kind.beta, mset):
        return mset
    order = kind.order or LexOrder.default(mset.universe)
    return ModelSet.of(order.minimum(mset))


def refine(kind, delta_out: ModelSet, profile: Profile, mu: ModelSet) -> ModelSet:
    """Apply a refinement to an unrefined merge output.

    `delta_out` must be contained in the constraint it was computed under;
    the output is always closed under the refinement's function and is empty
    exactly when `delta_out` is.
    """
    if not delta_out.issubset(mu):
        raise ValueError("merge output must be contained in the constraint")
    if isinstance(kind, ClosureRefinement):
        return closure(kind.beta, delta_out)
    if isinstance(kind, LexRefinement):
        return _lex_branch(kind, delta_out)
    if isinstance(kind, LexClosureRefinement):
        if cardintersection(delta_out, profile) == 0:
            return _lex_branch(kind, delta_out)
        return closure(kind.beta, delta_out)
    if isinstance(kind, MappingRefinement):
        out = kind.mapping.fn(delta_out, profile.mmod())
        _check_mapping_output(kind.mapping, delta_out, profile.mmod(), out, strict=True)
        return out
    raise TypeError(f"unknown refinement kind: {kind!r}")


# The four mapping properties, by name.
MAPPING_PROPERTIES = (
    "closed_output",
    "within_closure",
    "fixes_closed",
    "preserves_nonempty",
)


def _mapping_violation(mapping, mset, profile_models, out):
    beta = mapping.beta
    if not is_closed(beta, out):
        return "closed_output", f"output {out!r} is not closed under {beta}"
    if not out.issubset(closure(beta, mset)):
        return "within_closure", f"output {out!r} escapes the closure of {mset!r}"
    if is_closed(beta, mset) and out != mset:
        return "fixes_closed", f"closed input {mset!r} was changed to {out!r}"
    if mset and not out:
        return "preserves_nonempty", f"non-empty input {mset!r} mapped to the empty set"
    return None


def _check_mapping_output(mapping, mset, profile_models, out, strict=False):
    hit = _mapping_violation(mapping, mset, profile_models, out)
    if hit and strict:
        prop, msg = hit
        raise MappingViolationError(
            f"mapping {mapping.name or mapping.beta} violates {prop}: {msg}",
            prop,
            mset,
            profile_models,
        )
    return hit


def closure_mapping(beta: BooleanFn) -> BetaMapping:
    return BetaMapping(beta, lambda mset, _x: closure(beta, mset), "closure")


def lex_mapping(beta: BooleanFn, order: LexOrder = None) -> BetaMapping:
    kind = LexRefinement(beta, order)
    return BetaMapping(beta, lambda mset, _x: _lex_branch(kind, mset), "lex")


def lex_closure_mapping(beta: BooleanFn, order: LexOrder = None) -> BetaMapping:
    kind = LexRefinement(beta, order)

    def fn(mset, profile_models):
        if all(mset.masks.isdisjoint(m.masks) for m in profile_models):
            return _lex_branch(kind, mset)
        return closure(beta, mset)

    return BetaMapping(beta, fn, "lex-closure")


@dataclass
class MappingReport:
    """Outcome of exhaustive mapping validation: first witness per property."""

    checked: int = 0
    violations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def render(self) -> str:
        lines = [f"checked {self.checked} (models, profile-models) pairs"]
        for prop in MAPPING_PROPERTIES:
            if prop in self.violations:
                mset, x, msg = self.violations[prop]
                lines.append(f"VIOLATED {prop}: {msg} [models={mset!r}]")
            else:
                lines.append(f"ok {prop}")
        return "\n".join(lines)


def _all_subsets(universe: Universe, include_empty=True):
    n_interps = 1 << len(universe)
    start = 0 if include_empty else 1
    for code in range(start, 1 << n_interps):
        yield ModelSet(universe, (m for m in range(n_interps) if code >> m & 1))


def _multisets(items, max_size):
    for size in range(1, max_size + 1):
        yield from itertools.combinations_with_replacement(items, size)


def validate_mapping(mapping: BetaMapping, universe: Universe, max_profile_size: int = 2) -> MappingReport:
    """Check the four mapping properties on every (M, X) pair of the bounded
    space: all model sets M over `universe`, all multisets X of at most
    `max_profile_size` non-empty model sets.  Intended for small universes.
    """
    report = MappingReport()
    all_sets = tuple(_all_subsets(universe))
    nonempty = tuple(s for s in all_sets if s)
    for mset in all_sets:
        for x in _multisets(nonempty, max_profile_size):
            out = mapping.fn(mset, x)
            report.checked += 1
            hit = _mapping_violation(mapping, mset, x, out)
            if hit:
                prop, msg = hit
                report.violations.setdefault(prop, (mset, x, msg))
    return report


@dataclass
class PropertyWitness:
    profile: Profile
    mu: ModelSet
    base_out: ModelSet
    refined_out: ModelSet
    note: str = ""

    def render(self) -> str:
        return (
            f"E=[{self.profile.render()}] mu={self.mu.compact() or '{}'} "
            f"base={self.base_out.compact() or 'none'} refined={self.refined_out.compact() or 'none'}"
            + (f" ({self.note})" if self.note else "")
        )


@dataclass
class RefinementReport:
    """The four refinement properties checked over enumerated instances."""

    checked: int = 0
    consistency: PropertyWitness = None
    containment: PropertyWitness = None
    invariance: PropertyWitness = None
    equivalence: tuple = None  # pair of PropertyWitness

    @property
    def ok(self) -> bool:
        return not (self.consistency or self.containment or self.invariance or self.equivalence)

    def render(self) -> str:
        lines = [f"checked {self.checked} instances"]
        for prop in ("consistency", "containment", "invariance"):
            wit = getattr(self, prop)
            lines.append(f"{'VIOLATED' if wit else 'ok'} {prop}" + (f": {wit.render()}" if wit else ""))
        if self.equivalence:
            a, b = self.equivalence
            lines.append(f"VIOLATED equivalence: {a.render()} vs {b.render()}")
        else:
            lines.append("ok equivalence")
        return "\n".join(lines)


def check_refinement_properties(base_op, refined_op, beta: BooleanFn, instances) -> RefinementReport:
    """Consistency, equivalence, containment, and invariance of `refined_op`
    against `base_op` over the given (profile, constraint) instances.

    Equivalence groups instances with equal profiles (as multisets) and equal
    base outputs: all such instances must get one refined output.
    """
    report = RefinementReport()
    groups = {}
    for profile, mu in instances:
        base_out = base_op(profile, mu)
        refined_out = refined_op(profile, mu)
        report.checked += 1
        if report.consistency is None and bool(base_out) != bool(refined_out):
            report.consistency = PropertyWitness(profile, mu, base_out, refined_out)
        if report.containment is None and not refined_out.issubset(closure(beta, base_out)):
            report.containment = PropertyWitness(profile, mu, base_out, refined_out)
        if report.invariance is None and is_closed(beta, base_out) and not base_out.issubset(refined_out):
            report.invariance = PropertyWitness(profile, mu, base_out, refined_out)
        key = (profile, base_out)
        seen = groups.get(key)
        if seen is None:
            groups[key] = (mu, refined_out)
        elif report.equivalence is None and seen[1] != refined_out:
            report.equivalence = (
                PropertyWitness(profile, seen[0], base_out, seen[1]),
                PropertyWitness(profile, mu, base_out, refined_out),
            )
    return report


@dataclass
class FairnessWitness:
    profile: Profile
    mu: ModelSet
    base_out: ModelSet
    refined_out: ModelSet
    base_count: int
    refined_count: int

    def render(self) -> str:
        return (
            f"E=[{self.profile.render()}] mu={self.mu.compact() or '{}'}: "
            f"base output {self.base_out.compact() or 'none'} meets {self.base_count} bases, "
            f"refined output {self.refined_out.compact() or 'none'} meets {self.refined_count}"
        )


@dataclass
class FairnessReport:
    checked: int = 0
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.witnesses

    def render(self) -> str:
        lines = [f"checked {self.checked} instances: " + ("fair" if self.ok else "NOT fair")]
        lines.extend(w.render() for w in self.witnesses)
        return "\n".join(lines)


def is_fair(base_op, refined_op, instances, limit: int = None) -> FairnessReport:
    """Find instances where the base output meets a number of bases other
    than one but the refined output meets exactly one."""
    report = FairnessReport()
    for profile, mu in instances:
        base_out = base_op(profile, mu)
        refined_out = refined_op(profile, mu)
        report.checked += 1
        n_base = cardintersection(base_out, profile)
        n_refined = cardintersection(refined_out, profile)
        if n_base != 1 and n_refined == 1:
            report.witnesses.append(
                FairnessWitness(profile, mu, base_out, refined_out, n_base, n_refined)
            )
            if limit is not None and len(report.witnesses) >= limit:
                break
    return report


class RefinedOperator:
    """Composition of a merge operator with a refinement, memoized."""

    def __init__(self, base, kind):
        self.base = base
        self.kind = kind
        self._memo = {}

    @property
    def label(self) -> str:
        return f"{self.base.label}+{self.kind.label}"

    def __call__(self, profile: Profile, mu: ModelSet) -> ModelSet:
        key = (profile, mu)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = refine(self.kind, self.base(profile, mu), profile, mu)
        return hit

    def __repr__(self):
        return f"<{self.label}>"
