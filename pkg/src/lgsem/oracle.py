"""Unfocused brute-force prover used as an independent check on focused search.

No stoup: any compound leaf may be unfolded (α) at any time, any displayed
negative input or positive output may be split directly into unfocused
premises (β), and structural rules may be interleaved anywhere.  Only
derivability is computed; no terms.
"""
from __future__ import annotations

import itertools

from . import formula as fm
from .formula import is_positive
from .calculus import Fresh, alpha_unfold, is_alpha_leaf
from .search import SearchLimits, Status, _and
from .sequent import (
    InLeaf, OutLeaf, SLCoNeg, SLNeg, SLSubStr, SOver, SPar, SProd, SRCoNeg, SRNeg, SRSubStr,
    SUnder, Unfocused, _display_class, canonical_key, leaves, replace_leaf,
)
from .structural import EMPTY, RulePackage, apply_rule


class BruteForceProver:
    def __init__(self, pkg: RulePackage = EMPTY, limits: SearchLimits = SearchLimits()):
        self.pkg = pkg
        self.limits = limits
        self.memo: dict[str, Status] = {}
        self._n = itertools.count()

    def _label(self, is_input: bool) -> str:
        return ("x" if is_input else "e") + str(next(self._n))

    def status(self, s: Unfocused, depth: int = 0) -> Status:
        key = canonical_key(s, False)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if depth > self.limits.max_depth:
            return Status.UNKNOWN
        classes, capped = self._closure(s)
        result = Status.UNKNOWN if capped else Status.NO
        for rep in classes.values():
            for premises in self._logical(rep):
                st = _and(self.status(p, depth + 1) for p in premises)
                if st is Status.YES:
                    self.memo[key] = Status.YES
                    return Status.YES
                if st is Status.UNKNOWN:
                    result = Status.UNKNOWN
        self.memo[key] = result
        return result

    def _closure(self, s: Unfocused):
        classes = {canonical_key(s, False): s}
        rules = self.pkg.rules
        if not rules:
            return classes, False
        frontier = [s]
        while frontier:
            nxt = []
            for cur in frontier:
                for member in _display_class(cur.oriented()):
                    for r in rules:
                        prem = apply_rule(r, member)
                        if prem is None:
                            continue
                        k = canonical_key(prem, False)
                        if k not in classes:
                            if len(classes) >= self.limits.closure_cap:
                                return classes, True
                            classes[k] = prem
                            nxt.append(prem)
            frontier = nxt
        return classes, False

    def _logical(self, s: Unfocused):
        """Premise lists of every logical rule applicable to s (up to display)."""
        fresh = Fresh(l.label for l in leaves(s))
        for leaf in leaves(s):
            if is_alpha_leaf(leaf):
                repl, _ = alpha_unfold(leaf, fresh)
                yield [replace_leaf(s, leaf.label, repl)]
        for member in _display_class(s.oriented()):
            a, c = member.left, member.right
            if isinstance(a, InLeaf) and isinstance(c, OutLeaf):
                if isinstance(a.formula, fm.Atom) and a.formula == c.formula:
                    yield []
            if isinstance(a, InLeaf) and not is_positive(a.formula):
                prem = self._beta_in(a.formula, c)
                if prem is not None:
                    yield prem
            if isinstance(c, OutLeaf) and is_positive(c.formula) and not isinstance(c.formula, fm.Atom):
                prem = self._beta_out(a, c.formula)
                if prem is not None:
                    yield prem

    def _in(self, f):
        return InLeaf(f, self._label(True))

    def _out(self, f):
        return OutLeaf(f, self._label(False))

    def _beta_in(self, f, p):
        """Negative hypothesis f displayed against consequent p."""
        if isinstance(f, fm.Over) and isinstance(p, SOver):
            return [Unfocused(p.left, self._out(f.right)), Unfocused(self._in(f.left), p.right)]
        if isinstance(f, fm.Under) and isinstance(p, SUnder):
            return [Unfocused(self._in(f.right), p.left), Unfocused(p.right, self._out(f.left))]
        if isinstance(f, fm.Par) and isinstance(p, SPar):
            return [Unfocused(self._in(f.right), p.left), Unfocused(self._in(f.left), p.right)]
        if isinstance(f, fm.LNeg) and isinstance(p, SLNeg):
            return [Unfocused(p.arg, self._out(f.arg))]
        if isinstance(f, fm.RNeg) and isinstance(p, SRNeg):
            return [Unfocused(p.arg, self._out(f.arg))]
        return None

    def _beta_out(self, g, f):
        """Positive conclusion f displayed against antecedent g."""
        if isinstance(f, fm.Tensor) and isinstance(g, SProd):
            return [Unfocused(g.left, self._out(f.left)), Unfocused(g.right, self._out(f.right))]
        if isinstance(f, fm.RSub) and isinstance(g, SRSubStr):
            return [Unfocused(g.left, self._out(f.left)), Unfocused(self._in(f.right), g.right)]
        if isinstance(f, fm.LSub) and isinstance(g, SLSubStr):
            return [Unfocused(self._in(f.left), g.left), Unfocused(g.right, self._out(f.right))]
        if isinstance(f, fm.RCoNeg) and isinstance(g, SRCoNeg):
            return [Unfocused(self._in(f.arg), g.arg)]
        if isinstance(f, fm.LCoNeg) and isinstance(g, SLCoNeg):
            return [Unfocused(self._in(f.arg), g.arg)]
        return None


def brute_force_derivable(goal: Unfocused, pkg: RulePackage = EMPTY,
                          limits: SearchLimits = SearchLimits()) -> Status:
    return BruteForceProver(pkg, limits).status(goal)
