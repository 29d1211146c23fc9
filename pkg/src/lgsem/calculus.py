"""Logical rules of the focused display calculus, applied backwards, with term construction.

A ``RuleApplication`` pairs a conclusion with its premises and a function that
builds the conclusion's LP term from the premises' terms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from . import formula as fm
from .formula import is_positive, input_type, output_type
from .lp import App, Case, Lam, LinTerm, Pair, Var, rename
from .sequent import (
    FocusedConclusion, FocusedHypothesis, InLeaf, OutLeaf, SLCoNeg, SLNeg,
    SLSubStr, SOver, SPar, SProd, SRCoNeg, SRNeg, SRSubStr, SUnder, Unfocused,
    displayed_leaves, labels, leaves, replace_leaf,
)


@dataclass
class RuleApplication:
    rule: str
    conclusion: object
    premises: list
    build: Callable[..., LinTerm] = field(repr=False)

    def term(self, *premise_terms: LinTerm) -> LinTerm:
        return self.build(*premise_terms)


# ---------------------------------------------------------------------------
# fresh (co)variables

_VAR_POOL = ["u", "w", "t", "r", "q", "m", "l", "k", "h", "g", "f", "e", "d", "c", "b", "a"]
_COVAR_POOL = ["κ", "ε", "δ", "β", "μ", "ρ", "σ", "τ", "ω", "φ", "χ", "ψ"]


class Fresh:
    """Hands out (co)variable names not already used in the goal or earlier in the search."""

    def __init__(self, avoid=()):
        self.used = set(avoid)
        self.counts = {True: 0, False: 0}

    def _next(self, is_var: bool) -> str:
        pool = _VAR_POOL if is_var else _COVAR_POOL
        while True:
            n = self.counts[is_var]
            self.counts[is_var] += 1
            name = pool[n % len(pool)] + ("" if n < len(pool) else str(n // len(pool)))
            if name not in self.used:
                self.used.add(name)
                return name

    def var(self) -> str:
        return self._next(True)

    def covar(self) -> str:
        return self._next(False)

    def avoid(self, names):
        self.used.update(names)


def is_focusable(leaf) -> bool:
    """Negative inputs and positive outputs may be decided on."""
    if isinstance(leaf, InLeaf):
        return not is_positive(leaf.formula)
    return is_positive(leaf.formula)


def is_alpha_leaf(leaf) -> bool:
    """Compound positive inputs and compound negative outputs unfold invertibly."""
    f = leaf.formula
    if isinstance(f, fm.Atom):
        return False
    return is_positive(f) if isinstance(leaf, InLeaf) else not is_positive(f)


# ---------------------------------------------------------------------------
# α rules

_ALPHA_NAME = {fm.Tensor: "α-⊗", fm.Over: "α-/", fm.Under: "α-\\", fm.Par: "α-⊕", fm.RSub: "α-⊘",
               fm.LSub: "α-⦸", fm.LNeg: "α-ln", fm.RNeg: "α-rn", fm.LCoNeg: "α-lc", fm.RCoNeg: "α-rc"}


def alpha_unfold(leaf, fresh: Fresh):
    """Structural unfolding of an α-leaf.

    Returns (replacement, binders) where binders is a pair of labels for binary
    connectives (bound by ``case``) or a single label for unary ones (renamed).
    For binary connectives the pair order is always the left-to-right order of
    the two new leaves, which coincides with the translation's component order.
    """
    f = leaf.formula
    if isinstance(leaf, InLeaf):
        if isinstance(f, fm.Tensor):
            y, z = fresh.var(), fresh.var()
            return SProd(InLeaf(f.left, y), InLeaf(f.right, z)), (y, z)
        if isinstance(f, fm.LSub):          # B⦸A
            k, z = fresh.covar(), fresh.var()
            return SLSubStr(OutLeaf(f.left, k), InLeaf(f.right, z)), (k, z)
        if isinstance(f, fm.RSub):          # A⊘B
            y, n = fresh.var(), fresh.covar()
            return SRSubStr(InLeaf(f.left, y), OutLeaf(f.right, n)), (y, n)
        if isinstance(f, fm.RCoNeg):
            k = fresh.covar()
            return SRCoNeg(OutLeaf(f.arg, k)), k
        if isinstance(f, fm.LCoNeg):
            k = fresh.covar()
            return SLCoNeg(OutLeaf(f.arg, k)), k
    else:
        if isinstance(f, fm.Over):          # A/B
            y, n = fresh.var(), fresh.covar()
            return SOver(InLeaf(f.right, y), OutLeaf(f.left, n)), (y, n)
        if isinstance(f, fm.Under):         # B\A
            k, z = fresh.covar(), fresh.var()
            return SUnder(OutLeaf(f.right, k), InLeaf(f.left, z)), (k, z)
        if isinstance(f, fm.Par):           # A⊕B
            k, n = fresh.covar(), fresh.covar()
            return SPar(OutLeaf(f.right, k), OutLeaf(f.left, n)), (k, n)
        if isinstance(f, fm.LNeg):
            y = fresh.var()
            return SLNeg(InLeaf(f.arg, y)), y
        if isinstance(f, fm.RNeg):
            y = fresh.var()
            return SRNeg(InLeaf(f.arg, y)), y
    raise ValueError(f"{leaf} is not an α-leaf")


def alpha_term(scrut: str, binders, body: LinTerm) -> LinTerm:
    if isinstance(binders, tuple):
        return Case(Var(scrut), binders[0], binders[1], body)
    return rename(body, binders, scrut)


def alpha_expansions(s: Unfocused, fresh: Optional[Fresh] = None) -> list:
    fresh = fresh or Fresh(labels(s))
    out = []
    for leaf in leaves(s):
        if not is_alpha_leaf(leaf):
            continue
        repl, binders = alpha_unfold(leaf, fresh)
        premise = replace_leaf(s, leaf.label, repl)
        out.append(RuleApplication(
            _ALPHA_NAME[type(leaf.formula)], s, [premise],
            lambda m, _l=leaf.label, _b=binders: alpha_term(_l, _b, m)))
    return out


def alpha_saturate(s: Unfocused, fresh: Fresh):
    """Apply α eagerly until no α-leaf remains.

    Returns the final sequent and the list of (rule, conclusion, scrutinee, binders)
    steps in application order, so terms can be wrapped innermost-last.
    """
    steps = []
    changed = True
    while changed:
        changed = False
        for leaf in leaves(s):
            if is_alpha_leaf(leaf):
                repl, binders = alpha_unfold(leaf, fresh)
                nxt = replace_leaf(s, leaf.label, repl)
                steps.append((_ALPHA_NAME[type(leaf.formula)], s, leaf.label, binders))
                s = nxt
                changed = True
                break
    return s, steps


# ---------------------------------------------------------------------------
# axiom, decisions, reactions

def axiom(s) -> Optional[RuleApplication]:
    if (isinstance(s, FocusedConclusion) and isinstance(s.focus, fm.Atom)
            and isinstance(s.ante, InLeaf) and s.ante.formula == s.focus):
        x = s.ante.label
        return RuleApplication("Ax", s, [], lambda: Var(x))
    return None


def decide_leaf(displayed: Unfocused, leaf) -> RuleApplication:
    """D• / D∘ on a leaf that is already a whole side of ``displayed``."""
    lab = leaf.label
    if isinstance(leaf, InLeaf):
        prem = FocusedHypothesis(displayed.cons, leaf.formula)
        return RuleApplication("D•", displayed, [prem], lambda m: App(Var(lab), m))
    prem = FocusedConclusion(displayed.ante, leaf.formula)
    return RuleApplication("D∘", displayed, [prem], lambda m: App(Var(lab), m))


def decide(s: Unfocused) -> list:
    """Decisions on every focusable leaf, each displayed first (left-to-right leaf order)."""
    shown = displayed_leaves(s)
    out = []
    for leaf in leaves(s):
        if is_focusable(leaf):
            out.append(decide_leaf(shown[leaf.label], leaf))
    return out


def react(s, fresh: Optional[Fresh] = None) -> Optional[RuleApplication]:
    """R• for a positive hypothesis in focus, R∘ for a negative conclusion in focus."""
    if isinstance(s, FocusedHypothesis) and is_positive(s.focus):
        fresh = fresh or Fresh(labels(s.cons))
        x = fresh.var()
        prem = Unfocused(InLeaf(s.focus, x), s.cons)
        ty = input_type(s.focus)
        return RuleApplication("R•", s, [prem], lambda m: Lam(x, m, ty))
    if isinstance(s, FocusedConclusion) and not is_positive(s.focus):
        fresh = fresh or Fresh(labels(s.ante))
        e = fresh.covar()
        prem = Unfocused(s.ante, OutLeaf(s.focus, e))
        ty = output_type(s.focus)
        return RuleApplication("R∘", s, [prem], lambda m: Lam(e, m, ty))
    return None


# ---------------------------------------------------------------------------
# β rules

def _pair(m, n):
    return Pair(m, n)


def _same(m):
    return m


def beta_expansions(s) -> list:
    """Split a compound focus; the structure around it must have the matching shape."""
    f = s.focus
    if isinstance(s, FocusedConclusion):
        g = s.ante
        if isinstance(f, fm.Tensor) and isinstance(g, SProd):
            prems = [FocusedConclusion(g.left, f.left), FocusedConclusion(g.right, f.right)]
            return [RuleApplication("β-⊗", s, prems, _pair)]
        if isinstance(f, fm.RSub) and isinstance(g, SRSubStr):
            prems = [FocusedConclusion(g.left, f.left), FocusedHypothesis(g.right, f.right)]
            return [RuleApplication("β-⊘", s, prems, _pair)]
        if isinstance(f, fm.LSub) and isinstance(g, SLSubStr):
            prems = [FocusedHypothesis(g.left, f.left), FocusedConclusion(g.right, f.right)]
            return [RuleApplication("β-⦸", s, prems, _pair)]
        if isinstance(f, fm.RCoNeg) and isinstance(g, SRCoNeg):
            return [RuleApplication("β-rc", s, [FocusedHypothesis(g.arg, f.arg)], _same)]
        if isinstance(f, fm.LCoNeg) and isinstance(g, SLCoNeg):
            return [RuleApplication("β-lc", s, [FocusedHypothesis(g.arg, f.arg)], _same)]
        return []
    p = s.cons
    if isinstance(f, fm.Over) and isinstance(p, SOver):
        prems = [FocusedConclusion(p.left, f.right), FocusedHypothesis(p.right, f.left)]
        return [RuleApplication("β-/", s, prems, _pair)]
    if isinstance(f, fm.Under) and isinstance(p, SUnder):
        prems = [FocusedHypothesis(p.left, f.right), FocusedConclusion(p.right, f.left)]
        return [RuleApplication("β-\\", s, prems, _pair)]
    if isinstance(f, fm.Par) and isinstance(p, SPar):
        prems = [FocusedHypothesis(p.left, f.right), FocusedHypothesis(p.right, f.left)]
        return [RuleApplication("β-⊕", s, prems, _pair)]
    if isinstance(f, fm.LNeg) and isinstance(p, SLNeg):
        return [RuleApplication("β-ln", s, [FocusedConclusion(p.arg, f.arg)], _same)]
    if isinstance(f, fm.RNeg) and isinstance(p, SRNeg):
        return [RuleApplication("β-rn", s, [FocusedConclusion(p.arg, f.arg)], _same)]
    return []


def focused_step(s, fresh: Fresh) -> Optional[RuleApplication]:
    """The unique rule that can apply to a focused sequent, if any.

    The focused phase is deterministic: atoms in conclusion focus need Ax,
    polarity-switching foci react, everything else must match a β shape.
    """
    if isinstance(s, FocusedConclusion):
        if isinstance(s.focus, fm.Atom):
            return axiom(s)
        if not is_positive(s.focus):
            return react(s, fresh)
    else:
        if is_positive(s.focus):
            return react(s, fresh)
    apps = beta_expansions(s)
    return apps[0] if apps else None
