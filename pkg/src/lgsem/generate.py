"""Exhaustive and random generation of formulas, structures and goals for test batteries."""
from __future__ import annotations

import random
from functools import lru_cache

from . import formula as fm
from .sequent import (
    InLeaf, OutLeaf, SLCoNeg, SLNeg, SLSubStr, SOver, SPar, SProd, SRCoNeg, SRNeg, SRSubStr,
    SUnder, Unfocused,
)

BINARY = (fm.Tensor, fm.Par, fm.Over, fm.Under, fm.RSub, fm.LSub)
UNARY = (fm.LNeg, fm.RNeg, fm.LCoNeg, fm.RCoNeg)


@lru_cache(maxsize=None)
def formulas_of_size(atoms: tuple, n: int) -> tuple:
    """All formulas over ``atoms`` with exactly n connectives."""
    if n == 0:
        return tuple(fm.Atom(a) for a in atoms)
    out = [u(a) for u in UNARY for a in formulas_of_size(atoms, n - 1)]
    for k in range(n):
        for l in formulas_of_size(atoms, k):
            for r in formulas_of_size(atoms, n - 1 - k):
                out.extend(b(l, r) for b in BINARY)
    return tuple(out)


def formulas_up_to(atoms, n: int) -> list:
    atoms = tuple(atoms)
    return [f for k in range(n + 1) for f in formulas_of_size(atoms, k)]


def formula_goals(atoms, total: int):
    """A^x ⊢ B^ν for every pair whose connective counts sum to at most ``total``."""
    atoms = tuple(atoms)
    for n in range(total + 1):
        for k in range(n + 1):
            for a in formulas_of_size(atoms, k):
                for b in formulas_of_size(atoms, n - k):
                    yield Unfocused(InLeaf(a, "x"), OutLeaf(b, "ν"))


def random_formula(rng: random.Random, atoms, max_conn: int) -> fm.Formula:
    n = rng.randint(0, max_conn)
    return _random_sized(rng, tuple(atoms), n)


def _random_sized(rng, atoms, n):
    if n == 0:
        return fm.Atom(rng.choice(atoms))
    if rng.random() < 0.3:
        return rng.choice(UNARY)(_random_sized(rng, atoms, n - 1))
    k = rng.randint(0, n - 1)
    return rng.choice(BINARY)(_random_sized(rng, atoms, k), _random_sized(rng, atoms, n - 1 - k))


class _Labels:
    def __init__(self):
        self.n = 0

    def __call__(self, is_input):
        self.n += 1
        return ("x" if is_input else "e") + str(self.n)


def random_structure(rng, leaves: int, antecedent: bool, leaf_formula, labels) -> object:
    """Random (co)structure with exactly ``leaves`` leaves, using every constructor."""
    if leaves == 1 and rng.random() < 0.75:
        f = leaf_formula()
        return InLeaf(f, labels(True)) if antecedent else OutLeaf(f, labels(False))
    if leaves == 1 or rng.random() < 0.2:
        # unary wrapper: sorts flip for (co)negations
        if antecedent:
            ctor = rng.choice((SRCoNeg, SLCoNeg))
            return ctor(random_structure(rng, leaves, False, leaf_formula, labels))
        ctor = rng.choice((SLNeg, SRNeg))
        return ctor(random_structure(rng, leaves, True, leaf_formula, labels))
    k = rng.randint(1, leaves - 1)
    if antecedent:
        ctor, ls, rs = rng.choice(((SProd, True, True), (SRSubStr, True, False), (SLSubStr, False, True)))
    else:
        ctor, ls, rs = rng.choice(((SPar, False, False), (SUnder, False, True), (SOver, True, False)))
    return ctor(random_structure(rng, k, ls, leaf_formula, labels),
                random_structure(rng, leaves - k, rs, leaf_formula, labels))


def random_sequent(rng: random.Random, max_leaves: int, atoms=("a", "b"), max_conn: int = 2) -> Unfocused:
    labels = _Labels()
    total = rng.randint(2, max_leaves)
    left = rng.randint(1, total - 1)

    def leaf():
        return random_formula(rng, atoms, max_conn)

    return Unfocused(random_structure(rng, left, True, leaf, labels),
                     random_structure(rng, total - left, False, leaf, labels))
