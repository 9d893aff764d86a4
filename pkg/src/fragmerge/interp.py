"""Interpretations, model sets, and closure under Boolean functions.

An interpretation over an ordered atom universe is a fixed-width bit-vector,
stored as a Python int: bit i holds the truth value of atom i.  Earlier
declared atoms get lower weight, so over the universe (a, b) the ascending
integer order of interpretations is {} < {a} < {b} < {a,b}.

A model set can be closed under a symmetric, 0/1-reproducing Boolean function
(binary AND gives the Horn fragment, ternary majority gives Krom).  The
closure operators here are the semantic backbone for fragment membership
tests and for refining merge results into a fragment.
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

# Enumeration over all 2^|U| interpretations is capped.  ENUM_CAP may be
# raised by callers willing to pay the cost, never above HARD_ATOM_CAP.
ENUM_CAP = 16
HARD_ATOM_CAP = 24


class UniverseMismatchError(ValueError):
    """Operands were built over different atom universes."""


class ArityMismatchError(ValueError):
    """Number of arguments does not match the function arity."""


class UniverseTooLargeError(ValueError):
    """Universe exceeds the cap for exhaustive model enumeration."""


class NotSymmetricError(ValueError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class NotReproducingError(ValueError):
    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


def _check_enum_size(universe):
    cap = min(ENUM_CAP, HARD_ATOM_CAP)
    if len(universe) > cap:
        raise UniverseTooLargeError(
            f"universe has {len(universe)} atoms, enumeration cap is {cap}"
        )


class Universe:
    """Ordered alphabet of distinct atom names; order fixes bit positions."""

    __slots__ = ("atoms", "_index", "_hash")

    def __init__(self, atoms):
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("universe needs at least one atom")
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"duplicate atom names in {atoms!r}")
        if len(atoms) > HARD_ATOM_CAP:
            raise UniverseTooLargeError(
                f"{len(atoms)} atoms exceed the hard cap of {HARD_ATOM_CAP}"
            )
        self.atoms = atoms
        self._index = {name: i for i, name in enumerate(atoms)}
        self._hash = hash(atoms)

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return self is other or (isinstance(other, Universe) and self.atoms == other.atoms)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Universe({self.atoms!r})"

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"atom {name!r} not in universe {self.atoms}") from None

    def interpretation(self, true_atoms=()) -> "Interpretation":
        mask = 0
        for name in true_atoms:
            mask |= 1 << self.index(name)
        return Interpretation(self, mask)

    def from_mask(self, mask: int) -> "Interpretation":
        return Interpretation(self, mask)

    def all_masks(self) -> range:
        _check_enum_size(self)
        return range(1 << len(self.atoms))

    def all_interpretations(self):
        return tuple(Interpretation(self, m) for m in self.all_masks())


class Interpretation:
    """Truth assignment over a universe, held as a bitmask."""

    __slots__ = ("universe", "mask")

    def __init__(self, universe: Universe, mask: int):
        if not 0 <= mask < (1 << len(universe)):
            raise ValueError(f"mask {mask} out of range for {len(universe)} atoms")
        self.universe = universe
        self.mask = mask

    @property
    def true_atoms(self) -> tuple:
        return tuple(a for i, a in enumerate(self.universe.atoms) if self.mask >> i & 1)

    def value(self, name: str) -> int:
        return self.mask >> self.universe.index(name) & 1

    def __int__(self):
        return self.mask

    def __eq__(self, other):
        return (
            isinstance(other, Interpretation)
            and self.universe == other.universe
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.universe, self.mask))

    def __lt__(self, other):
        if not isinstance(other, Interpretation):
            return NotImplemented
        if self.universe != other.universe:
            raise UniverseMismatchError("cannot compare across universes")
        return self.mask < other.mask

    def __str__(self):
        return "{" + ",".join(self.true_atoms) + "}"

    def __repr__(self):
        return f"Interpretation({self})"


class ModelSet:
    """Set of interpretations sharing one universe."""

    __slots__ = ("universe", "masks", "_hash")

    def __init__(self, universe: Universe, masks=()):
        width = 1 << len(universe)
        masks = frozenset(masks)
        for m in masks:
            if not 0 <= m < width:
                raise ValueError(f"mask {m} out of range for {len(universe)} atoms")
        self.universe = universe
        self.masks = masks
        self._hash = hash((universe, masks))

    @classmethod
    def of(cls, *interps) -> "ModelSet":
        if not interps:
            raise ValueError("use ModelSet(universe) for the empty set")
        universe = interps[0].universe
        for w in interps:
            if w.universe != universe:
                raise UniverseMismatchError("interpretations over different universes")
        return cls(universe, (w.mask for w in interps))

    @classmethod
    def from_sets(cls, universe, *atom_sets) -> "ModelSet":
        """Build from iterables of atom names, e.g. from_sets(u, "", "a", "ab")."""
        return cls(universe, (universe.interpretation(s).mask for s in atom_sets))

    @classmethod
    def empty(cls, universe) -> "ModelSet":
        return cls(universe)

    @classmethod
    def full(cls, universe) -> "ModelSet":
        return cls(universe, universe.all_masks())

    @property
    def members(self) -> tuple:
        return tuple(Interpretation(self.universe, m) for m in sorted(self.masks))

    def __len__(self):
        return len(self.masks)

    def __bool__(self):
        return bool(self.masks)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, w):
        if isinstance(w, Interpretation):
            return w.universe == self.universe and w.mask in self.masks
        return w in self.masks

    def __eq__(self, other):
        return (
            isinstance(other, ModelSet)
            and self.universe == other.universe
            and self.masks == other.masks
        )

    def __hash__(self):
        return self._hash

    def _coerce(self, other):
        if not isinstance(other, ModelSet):
            raise TypeError(f"expected ModelSet, got {type(other).__name__}")
        if other.universe != self.universe:
            raise UniverseMismatchError("model sets over different universes")
        return other

    def __and__(self, other):
        return ModelSet(self.universe, self.masks & self._coerce(other).masks)

    def __or__(self, other):
        return ModelSet(self.universe, self.masks | self._coerce(other).masks)

    def __sub__(self, other):
        return ModelSet(self.universe, self.masks - self._coerce(other).masks)

    def issubset(self, other) -> bool:
        return self.masks <= self._coerce(other).masks

    def intersects(self, other) -> bool:
        return not self.masks.isdisjoint(self._coerce(other).masks)

    def render(self, sep=", ") -> str:
        return sep.join(str(w) for w in self.members)

    def compact(self) -> str:
        """Machine rendering: members joined by '|', e.g. '{}|{a}|{a,b}'."""
        return "|".join(str(w) for w in self.members)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"ModelSet[{self.render()}]"


@dataclass(frozen=True)
class BooleanFn:
    """Symmetric, 0/1-reproducing Boolean function given by its truth table.

    table[i] is the output on the input whose bit j equals bit j of i.  By
    symmetry the output only depends on how many inputs are 1, which is what
    the validator checks (cheaper than iterating all permutations).
    """

    arity: int
    table: tuple
    name: str = field(default="", compare=False)
    by_weight: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("arity must be positive")
        table = tuple(1 if v else 0 for v in self.table)
        if len(table) != 1 << self.arity:
            raise ValueError(
                f"table length {len(table)} does not match arity {self.arity}"
            )
        object.__setattr__(self, "table", table)
        by_weight = [None] * (self.arity + 1)
        for idx, out in enumerate(table):
            w = idx.bit_count()
            if by_weight[w] is None:
                by_weight[w] = out
            elif by_weight[w] != out:
                first = next(i for i in range(len(table)) if i.bit_count() == w)
                raise NotSymmetricError(
                    f"not symmetric: inputs {_bits(first, self.arity)} and "
                    f"{_bits(idx, self.arity)} have equal weight but outputs "
                    f"{table[first]} and {out}",
                    witness=(_bits(first, self.arity), _bits(idx, self.arity)),
                )
        if by_weight[0] != 0:
            raise NotReproducingError(
                "not 0-reproducing: all-zero input maps to 1",
                witness=_bits(0, self.arity),
            )
        if by_weight[self.arity] != 1:
            raise NotReproducingError(
                "not 1-reproducing: all-one input maps to 0",
                witness=_bits((1 << self.arity) - 1, self.arity),
            )
        object.__setattr__(self, "by_weight", tuple(by_weight))

    def __call__(self, *bits) -> int:
        if len(bits) != self.arity:
            raise ArityMismatchError(f"expected {self.arity} arguments, got {len(bits)}")
        return self.by_weight[sum(1 for b in bits if b)]

    def __str__(self):
        return self.name or f"fn{self.arity}{''.join(map(str, self.table))}"


def _bits(idx, arity):
    return tuple(idx >> i & 1 for i in range(arity))


def validate_boolean_fn(table, arity: int, name: str = "") -> BooleanFn:
    """Check symmetry and 0/1-reproduction; return the validated function."""
    return BooleanFn(arity, tuple(table), name)


AND2 = BooleanFn(2, (0, 0, 0, 1), "and")
MAJ3 = BooleanFn(3, (0, 0, 0, 1, 0, 1, 1, 1), "maj3")


@dataclass(frozen=True)
class Fragment:
    """Sublanguage characterized by closure of model sets under `beta`.

    `clause_predicate` is the syntactic side, a test on clauses; it is set
    for the builtin Horn and Krom fragments and enables formula synthesis.
    """

    name: str
    beta: BooleanFn
    clause_predicate: object = field(default=None, compare=False)


def _apply_masks(beta: BooleanFn, masks, width: int) -> int:
    by_weight = beta.by_weight
    out = 0
    for i in range(width):
        w = 0
        for m in masks:
            w += m >> i & 1
        if by_weight[w]:
            out |= 1 << i
    return out


def apply_pointwise(beta: BooleanFn, args) -> Interpretation:
    """Apply `beta` coordinate-wise to interpretations over a shared universe."""
    args = tuple(args)
    if len(args) != beta.arity:
        raise ArityMismatchError(f"{beta} expects {beta.arity} arguments, got {len(args)}")
    universe = args[0].universe
    for w in args:
        if w.universe != universe:
            raise UniverseMismatchError("arguments over different universes")
    mask = _apply_masks(beta, tuple(w.mask for w in args), len(universe))
    return Interpretation(universe, mask)


@lru_cache(maxsize=None)
def _closed_witness(beta: BooleanFn, masks: tuple, width: int):
    # Tuples may be drawn with repetition; since beta is symmetric, checking
    # one ordering per multiset of arguments suffices.
    for tup in itertools.combinations_with_replacement(masks, beta.arity):
        img = _apply_masks(beta, tup, width)
        if img not in masks:
            return tup, img
    return None


@lru_cache(maxsize=None)
def _closure_masks(beta: BooleanFn, masks: tuple, width: int) -> frozenset:
    current = set(masks)
    while True:
        fresh = set()
        for tup in itertools.combinations_with_replacement(sorted(current), beta.arity):
            img = _apply_masks(beta, tup, width)
            if img not in current:
                fresh.add(img)
        if not fresh:
            return frozenset(current)
        current |= fresh


def _key(mset: ModelSet) -> tuple:
    return tuple(sorted(mset.masks))


def closure(beta: BooleanFn, mset: ModelSet) -> ModelSet:
    """Least superset of `mset` closed under coordinate-wise `beta`.

    Worklist fixpoint over argument tuples; worst case enumerates
    C(|2^U|+k-1, k) tuples, fine at the universe sizes this library targets.
    """
    masks = _closure_masks(beta, _key(mset), len(mset.universe))
    return ModelSet(mset.universe, masks)


def is_closed(beta: BooleanFn, mset: ModelSet) -> bool:
    """Single-pass fixpoint test, no closure materialized."""
    return _closed_witness(beta, _key(mset), len(mset.universe)) is None


def closure_witness(beta: BooleanFn, mset: ModelSet):
    """First argument tuple whose image escapes `mset`, or None if closed.

    Returns (args, image) as interpretations.
    """
    hit = _closed_witness(beta, _key(mset), len(mset.universe))
    if hit is None:
        return None
    tup, img = hit
    u = mset.universe
    return tuple(Interpretation(u, m) for m in tup), Interpretation(u, img)


@lru_cache(maxsize=None)
def closed_model_sets(beta: BooleanFn, universe: Universe, include_empty: bool = False):
    """All subsets of 2^U closed under `beta`, in ascending subset-code order.

    Cached per (beta, universe); the enumeration walks all 2^(2^|U|) subsets,
    so keep |U| small (the postulate search uses |U| <= 4).
    """
    _check_enum_size(universe)
    n_interps = 1 << len(universe)
    width = len(universe)
    found = []
    start = 0 if include_empty else 1
    for code in range(start, 1 << n_interps):
        masks = tuple(m for m in range(n_interps) if code >> m & 1)
        if _closed_witness(beta, masks, width) is None:
            found.append(ModelSet(universe, masks))
    return tuple(found)
