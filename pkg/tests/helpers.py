"""Shared builders for the test suite."""

import itertools

from fragmerge import Base, ModelSet, Profile, Universe

U2 = Universe("ab")
U3 = Universe("abc")


def ms(universe, *atom_sets) -> ModelSet:
    """Model set from strings of single-letter atoms: ms(u, "", "a", "ab")."""
    return ModelSet.from_sets(universe, *atom_sets)


def prof(universe, *base_specs) -> Profile:
    """Profile from tuples of atom-strings: prof(u, ("a", "ab"), ("b",))."""
    return Profile(tuple(Base(ms(universe, *entry)) for entry in base_specs))


class EchoConstraintOperator:
    """Deliberately broken 'refinement': always returns the constraint."""

    label = "echo-constraint"

    def __call__(self, profile, mu):
        return mu


def brute_force_closure(beta, mset):
    """Oracle: saturate by applying beta to every argument tuple, restarting
    from scratch each round (independent of the library's worklist)."""
    current = set(mset.masks)
    width = len(mset.universe)
    changed = True
    while changed:
        changed = False
        for tup in itertools.product(tuple(current), repeat=beta.arity):
            bits = 0
            for i in range(width):
                ones = sum(m >> i & 1 for m in tup)
                if beta.table[_index_of_weight(beta.arity, ones)]:
                    bits |= 1 << i
            if bits not in current:
                current.add(bits)
                changed = True
    return ModelSet(mset.universe, current)


def _index_of_weight(arity, ones):
    # Table index whose bit pattern has the requested number of ones.
    return (1 << ones) - 1


def all_model_sets(universe, include_empty=True):
    n = 1 << len(universe)
    start = 0 if include_empty else 1
    for code in range(start, 1 << n):
        yield ModelSet(universe, (m for m in range(n) if code >> m & 1))
