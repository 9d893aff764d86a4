"""Propositional formulas: parsing, printing, models, clause classification,
and synthesis of a fragment formula from a closed model set.

Grammar (ASCII, whitespace-insensitive):

    atoms       [a-z][a-z0-9_]*
    constants   T  F
    operators   !  &  |  ->  <->     (precedence high to low: ! & | -> <->)
    grouping    ( ... )

`&` and `|` associate to the left, `->` and `<->` to the right.  The printer
emits minimal parentheses with single spaces around binary operators, and
printing then re-parsing yields an equal tree.
"""

import itertools
import re
from dataclasses import dataclass
from enum import Enum

from .interp import (
    AND2,
    MAJ3,
    Fragment,
    ModelSet,
    Universe,
    _check_enum_size,
    closure_witness,
)


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownAtomError(ValueError):
    def __init__(self, name, position=None):
        at = f" (at position {position})" if position is not None else ""
        super().__init__(f"unknown atom {name!r}{at}")
        self.name = name
        self.position = position


class NotClosedError(ValueError):
    """Model set is not closed under the fragment's Boolean function."""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class NoSyntacticFragmentError(ValueError):
    """Fragment has no clause language, or it cannot express the given set."""


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TOP = Const(True)
BOTTOM = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


_TOKEN_RE = re.compile(r"[ \t\r\n]*(?:(?P<atom>[a-z][a-z0-9_]*)|(?P<const>[TF])|(?P<op><->|->|[!&|()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r}", len(text) - len(rest))
        if m.lastgroup == "atom":
            tokens.append(("atom", m.group("atom"), m.start("atom")))
        elif m.lastgroup == "const":
            tokens.append(("const", m.group("const"), m.start("const")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, universe, length):
        self.tokens = tokens
        self.universe = universe
        self.length = length
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, self.length)

    def take_op(self, symbol):
        kind, text, _ = self.peek()
        if kind == "op" and text == symbol:
            self.i += 1
            return True
        return False

    def iff(self):
        left = self.implies()
        if self.take_op("<->"):
            return Iff(left, self.iff())
        return left

    def implies(self):
        left = self.disjunction()
        if self.take_op("->"):
            return Implies(left, self.implies())
        return left

    def disjunction(self):
        node = self.conjunction()
        while self.take_op("|"):
            node = Or(node, self.conjunction())
        return node

    def conjunction(self):
        node = self.unary()
        while self.take_op("&"):
            node = And(node, self.unary())
        return node

    def unary(self):
        if self.take_op("!"):
            return Not(self.unary())
        return self.primary()

    def primary(self):
        kind, text, pos = self.peek()
        if kind == "atom":
            self.i += 1
            if text not in self.universe:
                raise UnknownAtomError(text, pos)
            return Atom(text)
        if kind == "const":
            self.i += 1
            return TOP if text == "T" else BOTTOM
        if kind == "op" and text == "(":
            self.i += 1
            node = self.iff()
            if not self.take_op(")"):
                raise ParseError("expected ')'", self.peek()[2])
            return node
        raise ParseError(f"expected a formula, found {text!r}" if kind else "unexpected end of input", pos)


def parse(text: str, universe: Universe) -> Formula:
    """Parse `text` into an AST; atom names must belong to `universe`."""
    parser = _Parser(_tokenize(text), universe, len(text))
    node = parser.iff()
    kind, text_, pos = parser.peek()
    if kind is not None:
        raise ParseError(f"trailing input {text_!r}", pos)
    return node


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4, Not: 5, Atom: 6, Const: 6}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_RIGHT_ASSOC = (Iff, Implies)


def to_text(phi: Formula) -> str:
    """Print with minimal parentheses; inverse of `parse`."""
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Const):
        return "T" if phi.value else "F"
    if isinstance(phi, Not):
        inner = to_text(phi.operand)
        if _PREC[type(phi.operand)] < _PREC[Not]:
            inner = f"({inner})"
        return f"!{inner}"
    prec = _PREC[type(phi)]
    right_assoc = isinstance(phi, _RIGHT_ASSOC)
    left = to_text(phi.left)
    if _PREC[type(phi.left)] < prec or (_PREC[type(phi.left)] == prec and right_assoc):
        left = f"({left})"
    right = to_text(phi.right)
    if _PREC[type(phi.right)] < prec or (_PREC[type(phi.right)] == prec and not right_assoc):
        right = f"({right})"
    return f"{left} {_SYMBOL[type(phi)]} {right}"


def _atom_pattern(i: int, n: int) -> int:
    # Truth table of atom i over all 2^n interpretations, one bit per mask.
    block = 1 << i
    pat = ((1 << block) - 1) << block
    period = block << 1
    width = 1 << n
    while period < width:
        pat |= pat << period
        period <<= 1
    return pat


def _truth_bits(phi: Formula, universe: Universe, full: int) -> int:
    if isinstance(phi, Atom):
        try:
            i = universe.index(phi.name)
        except KeyError:
            raise UnknownAtomError(phi.name) from None
        return _atom_pattern(i, len(universe))
    if isinstance(phi, Const):
        return full if phi.value else 0
    if isinstance(phi, Not):
        return full ^ _truth_bits(phi.operand, universe, full)
    left = _truth_bits(phi.left, universe, full)
    right = _truth_bits(phi.right, universe, full)
    if isinstance(phi, And):
        return left & right
    if isinstance(phi, Or):
        return left | right
    if isinstance(phi, Implies):
        return (full ^ left) | right
    if isinstance(phi, Iff):
        return full ^ (left ^ right)
    raise TypeError(f"not a formula node: {phi!r}")


def models(phi: Formula, universe: Universe) -> ModelSet:
    """Exact model set by enumerating all 2^|U| interpretations."""
    _check_enum_size(universe)
    full = (1 << (1 << len(universe))) - 1
    bits = _truth_bits(phi, universe, full)
    return ModelSet(universe, (m for m in range(1 << len(universe)) if bits >> m & 1))


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals, each a (atom name, positive?) pair.

    Tautological clauses (an atom in both polarities) can be represented so
    classification can report on arbitrary CNF input, but they are never
    generated for synthesis.
    """

    literals: frozenset

    @property
    def is_tautological(self) -> bool:
        names = [n for n, _ in self.literals]
        return len(set(names)) != len(names)

    @property
    def positive_count(self) -> int:
        return sum(1 for _, pos in self.literals if pos)

    def satisfied_by(self, mask: int, universe: Universe) -> bool:
        return any((mask >> universe.index(n) & 1) == pos for n, pos in self.literals)

    def to_formula(self, universe: Universe = None) -> Formula:
        if not self.literals:
            return BOTTOM
        key = universe.index if universe is not None else (lambda n: n)
        lits = sorted(self.literals, key=lambda lit: (key(lit[0]), not lit[1]))
        parts = [Atom(n) if pos else Not(Atom(n)) for n, pos in lits]
        node = parts[0]
        for part in parts[1:]:
            node = Or(node, part)
        return node

    def __str__(self):
        return to_text(self.to_formula())


class ClauseKind(Enum):
    HORN = "horn"
    KROM = "krom"
    BOTH = "both"
    GENERAL = "general"


def _clause_kind(clause: Clause) -> ClauseKind:
    horn = clause.positive_count <= 1
    krom = len(clause.literals) <= 2
    if horn and krom:
        return ClauseKind.BOTH
    if horn:
        return ClauseKind.HORN
    if krom:
        return ClauseKind.KROM
    return ClauseKind.GENERAL


@dataclass(frozen=True)
class Classification:
    is_cnf: bool
    clauses: tuple

    @property
    def horn(self) -> bool:
        return self.is_cnf and all(k in (ClauseKind.HORN, ClauseKind.BOTH) for _, k in self.clauses)

    @property
    def krom(self) -> bool:
        return self.is_cnf and all(k in (ClauseKind.KROM, ClauseKind.BOTH) for _, k in self.clauses)

    @property
    def verdict(self) -> str:
        if not self.is_cnf:
            return "non-cnf"
        if self.horn and self.krom:
            return "both"
        if self.horn:
            return "horn"
        if self.krom:
            return "krom"
        return "general"


def _conjuncts(phi):
    if isinstance(phi, And):
        return _conjuncts(phi.left) + _conjuncts(phi.right)
    return [phi]

def _literals(phi):
    if isinstance(phi, Or):
        left = _literals(phi.left)
        right = _literals(phi.right)
        return None if left is None or right is None else left + right
    if isinstance(phi, Atom):
        return [(phi.name, True)]
    if isinstance(phi, Not) and isinstance(phi.operand, Atom):
        return [(phi.operand.name, False)]
    return None


def classify(phi: Formula) -> Classification:
    """Syntactic clause classification; no equivalence search.

    Accepts conjunctions of clauses; the constants T (empty conjunction) and
    F (single empty clause) are allowed at top level only.
    """
    if phi == TOP:
        return Classification(True, ())
    if phi == BOTTOM:
        empty = Clause(frozenset())
        return Classification(True, ((empty, _clause_kind(empty)),))
    kinds = []
    for conj in _conjuncts(phi):
        lits = _literals(conj)
        if lits is None:
            return Classification(False, ())
        clause = Clause(frozenset(lits))
        kinds.append((clause, _clause_kind(clause)))
    return Classification(True, tuple(kinds))


def is_horn_clause(clause: Clause) -> bool:
    return clause.positive_count <= 1


def is_krom_clause(clause: Clause) -> bool:
    return len(clause.literals) <= 2


HORN = Fragment("horn", AND2, is_horn_clause)
KROM = Fragment("krom", MAJ3, is_krom_clause)


def _candidate_clauses(universe: Universe, predicate):
    # Each atom is positive, negative, or absent; skip the empty clause.
    # Tautological clauses cannot arise from this encoding.
    for shape in itertools.product((0, 1, 2), repeat=len(universe)):
        if not any(shape):
            continue
        lits = frozenset(
            (name, shape[i] == 1)
            for i, name in enumerate(universe.atoms)
            if shape[i]
        )
        clause = Clause(lits)
        if predicate(clause):
            yield clause


def synthesize(mset: ModelSet, fragment: Fragment, minimize: bool = False) -> Formula:
    """Formula of the fragment whose models are exactly `mset`.

    Takes the conjunction of every fragment clause satisfied by all members
    of `mset`; for the builtin Horn and Krom fragments this pins the model
    set exactly whenever it is closed under the fragment's function.  The
    result is re-checked by enumeration.  With `minimize`, clauses entailed
    by the remaining ones are dropped.
    """
    universe = mset.universe
    if fragment.clause_predicate is None:
        raise NoSyntacticFragmentError(
            f"fragment {fragment.name!r} has no clause predicate"
        )
    witness = closure_witness(fragment.beta, mset)
    if witness is not None:
        args, img = witness
        raise NotClosedError(
            f"model set is not closed under {fragment.beta}: "
            f"({', '.join(map(str, args))}) maps to {img}",
            witness=witness,
        )
    if not mset.masks:
        first = Atom(universe.atoms[0])
        return And(first, Not(first))
    pool = [
        clause
        for clause in _candidate_clauses(universe, fragment.clause_predicate)
        if all(clause.satisfied_by(m, universe) for m in mset.masks)
    ]
    pool.sort(key=lambda c: (len(c.literals), str(c)))
    if minimize:
        kept = list(pool)
        for clause in list(kept):
            trial = [c for c in kept if c is not clause]
            if models(_conjoin(trial, universe), universe) == mset:
                kept = trial
        pool = kept
    result = _conjoin(pool, universe)
    if models(result, universe) != mset:
        raise NoSyntacticFragmentError(
            f"fragment {fragment.name!r} cannot express the given model set"
        )
    return result


def _conjoin(clauses, universe) -> Formula:
    if not clauses:
        return TOP
    node = clauses[0].to_formula(universe)
    for clause in clauses[1:]:
        node = And(node, clause.to_formula(universe))
    return node
