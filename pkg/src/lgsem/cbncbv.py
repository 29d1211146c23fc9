"""Uniform-polarity translations (call-by-name, call-by-value) and their stouped calculi.

``cbn_type`` treats every formula as negative and ``cbv_type`` every formula
as positive.  LGT (call-by-name) only admits hypotheses in the stoup, LGQ
(call-by-value) only conclusions.  Both reuse the display machinery of the
main calculus; only the logical rules differ.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import formula as fm
from .formula import LinType, TAtom, TNeg, TProd, input_type, neg_count
from .lp import App, Case, Lam, LinTerm, Pair, Var, alpha_key
from .search import Derivation
from .sequent import (
    FocusedConclusion, FocusedHypothesis, InLeaf, OutLeaf, SLSubStr, SOver, SPar, SProd,
    SRSubStr, SUnder, Unfocused, displayed_leaves, labels, leaves,
)
from .calculus import Fresh


class TranslationMode(Enum):
    CBN = "cbn"
    CBV = "cbv"
    POLARIZED = "polar"


class UnsupportedConnective(ValueError):
    pass


def cbn_type(a: fm.Formula) -> LinType:
    """⌊A⌋: every formula negative."""
    f = cbn_type
    if isinstance(a, fm.Atom):
        return TNeg(TAtom(a.name))
    if isinstance(a, fm.Over):
        return TProd(TNeg(f(a.right)), f(a.left))
    if isinstance(a, fm.Under):
        return TProd(TNeg(f(a.left)), f(a.right))
    if isinstance(a, fm.RSub):
        return TNeg(TProd(f(a.right), TNeg(f(a.left))))
    if isinstance(a, fm.LSub):
        return TNeg(TProd(f(a.left), TNeg(f(a.right))))
    if isinstance(a, fm.Tensor):
        return TNeg(TProd(TNeg(f(a.left)), TNeg(f(a.right))))
    if isinstance(a, fm.Par):
        return TProd(f(a.right), f(a.left))
    raise UnsupportedConnective(f"no call-by-name clause for {fm.print_formula(a)}")


def cbv_type(a: fm.Formula) -> LinType:
    """⌈A⌉: every formula positive."""
    f = cbv_type
    if isinstance(a, fm.Atom):
        return TAtom(a.name)
    if isinstance(a, fm.Over):
        return TNeg(TProd(f(a.right), TNeg(f(a.left))))
    if isinstance(a, fm.Under):
        return TNeg(TProd(f(a.left), TNeg(f(a.right))))
    if isinstance(a, fm.RSub):
        return TProd(TNeg(f(a.right)), f(a.left))
    if isinstance(a, fm.LSub):
        return TProd(TNeg(f(a.left)), f(a.right))
    if isinstance(a, fm.Tensor):
        return TProd(f(a.left), f(a.right))
    if isinstance(a, fm.Par):
        return TNeg(TProd(TNeg(f(a.right)), TNeg(f(a.left))))
    raise UnsupportedConnective(f"no call-by-value clause for {fm.print_formula(a)}")


def lexical_type(a: fm.Formula, mode: TranslationMode) -> LinType:
    """Type of a word meaning (an input occurrence) under each interpretation."""
    if mode is TranslationMode.CBN:
        return TNeg(cbn_type(a))
    if mode is TranslationMode.CBV:
        return cbv_type(a)
    return input_type(a)


def mode_types(mode: TranslationMode):
    """(input type, output type) functions for sequent contexts under a mode."""
    if mode is TranslationMode.CBN:
        return (lambda a: TNeg(cbn_type(a))), cbn_type
    if mode is TranslationMode.CBV:
        return cbv_type, (lambda a: TNeg(cbv_type(a)))
    return input_type, fm.output_type


def mode_context(s, mode: TranslationMode) -> dict:
    i, o = mode_types(mode)
    if isinstance(s, FocusedConclusion):
        s = s.ante
    elif isinstance(s, FocusedHypothesis):
        s = s.cons
    return {l.label: (i(l.formula) if isinstance(l, InLeaf) else o(l.formula)) for l in leaves(s)}


@dataclass
class Comparison:
    formula: fm.Formula
    types: dict      # mode -> LinType
    counts: dict     # mode -> int

    def rows(self):
        from .semantics import delinearize_type
        for mode in TranslationMode:
            t = self.types[mode]
            try:
                simple = str(delinearize_type(t))
            except KeyError:
                simple = "-"
            yield mode.value, str(t), simple, self.counts[mode]

    def __str__(self):
        lines = [f"lexical types for {fm.print_formula(self.formula)}"]
        for name, lin, simple, n in self.rows():
            lines.append(f"  {name:6} {lin}    [{simple}]    ¬-count {n}")
        return "\n".join(lines)


def compare(a: fm.Formula) -> Comparison:
    if isinstance(a, str):
        a = fm.parse_formula(a)
    types = {m: lexical_type(a, m) for m in TranslationMode}
    return Comparison(a, types, {m: neg_count(t) for m, t in types.items()})


# ---------------------------------------------------------------------------
# LGT / LGQ engines

def _pattern_lam(x: str, y: str, body: LinTerm, fresh: Fresh) -> LinTerm:
    z = fresh.var()
    return Lam(z, Case(Var(z), x, y, body))


class StoupEngine:
    """Backward search for LGT (call-by-name) or LGQ (call-by-value)."""

    def __init__(self, mode: TranslationMode, max_depth: int = 64):
        if mode is TranslationMode.POLARIZED:
            raise ValueError("the polarized calculus lives in lgsem.search")
        self.mode = mode
        self.max_depth = max_depth

    @property
    def name(self):
        return "LGT" if self.mode is TranslationMode.CBN else "LGQ"

    # Each option is (rule, conclusion, premises, build) with premises either
    # Unfocused or focused sequents.

    def _unfocused_options(self, s: Unfocused, fresh: Fresh):
        shown = displayed_leaves(s)
        out = []
        for leaf in leaves(s):
            d = shown[leaf.label]
            out.extend(self._leaf_options(d, leaf, fresh))
        return out

    def _leaf_options(self, d: Unfocused, leaf, fresh: Fresh):
        f, lab = leaf.formula, leaf.label
        g, p = d.ante, d.cons
        if self.mode is TranslationMode.CBN:
            if isinstance(leaf, InLeaf):
                yield "D", d, [FocusedHypothesis(p, f)], (lambda m, _l=lab: App(Var(_l), m))
                return
            if isinstance(f, fm.Under):
                e, y = fresh.covar(), fresh.var()
                prem = Unfocused(g, SUnder(OutLeaf(f.right, e), InLeaf(f.left, y)))
                yield "\\∘", d, [prem], (lambda m, _n=lab, _e=e, _y=y: Case(Var(_n), _y, _e, m))
            elif isinstance(f, fm.Over):
                e, y = fresh.covar(), fresh.var()
                prem = Unfocused(g, SOver(InLeaf(f.right, y), OutLeaf(f.left, e)))
                yield "/∘", d, [prem], (lambda m, _n=lab, _e=e, _y=y: Case(Var(_n), _y, _e, m))
            elif isinstance(f, fm.Par):
                k, e = fresh.covar(), fresh.covar()
                prem = Unfocused(g, SPar(OutLeaf(f.right, k), OutLeaf(f.left, e)))
                yield "⊕∘", d, [prem], (lambda m, _n=lab, _k=k, _e=e: Case(Var(_n), _k, _e, m))
            elif isinstance(f, fm.Tensor) and isinstance(g, SProd):
                e, k = fresh.covar(), fresh.covar()
                prems = [Unfocused(g.left, OutLeaf(f.left, e)), Unfocused(g.right, OutLeaf(f.right, k))]
                yield "⊗∘", d, prems, (lambda m, n, _n=lab, _e=e, _k=k:
                                       App(Var(_n), Pair(Lam(_e, m), Lam(_k, n))))
            elif isinstance(f, fm.RSub) and isinstance(g, SRSubStr):
                e = fresh.covar()
                prems = [FocusedHypothesis(g.right, f.right), Unfocused(g.left, OutLeaf(f.left, e))]
                yield "⊘∘", d, prems, (lambda n, m, _n=lab, _e=e: App(Var(_n), Pair(n, Lam(_e, m))))
            elif isinstance(f, fm.LSub) and isinstance(g, SLSubStr):
                e = fresh.covar()
                prems = [FocusedHypothesis(g.left, f.left), Unfocused(g.right, OutLeaf(f.right, e))]
                yield "⦸∘", d, prems, (lambda n, m, _n=lab, _e=e: App(Var(_n), Pair(n, Lam(_e, m))))
            return
        # call-by-value
        if isinstance(leaf, OutLeaf):
            yield "D", d, [FocusedConclusion(g, f)], (lambda m, _l=lab: App(Var(_l), m))
            return
        if isinstance(f, fm.Tensor):
            y, z = fresh.var(), fresh.var()
            prem = Unfocused(SProd(InLeaf(f.left, y), InLeaf(f.right, z)), p)
            yield "⊗•", d, [prem], (lambda m, _n=lab, _y=y, _z=z: Case(Var(_n), _y, _z, m))
        elif isinstance(f, fm.RSub):
            x, k = fresh.var(), fresh.covar()
            prem = Unfocused(SRSubStr(InLeaf(f.left, x), OutLeaf(f.right, k)), p)
            yield "⊘•", d, [prem], (lambda m, _n=lab, _x=x, _k=k: Case(Var(_n), _k, _x, m))
        elif isinstance(f, fm.LSub):
            x, k = fresh.var(), fresh.covar()
            prem = Unfocused(SLSubStr(OutLeaf(f.left, k), InLeaf(f.right, x)), p)
            yield "⦸•", d, [prem], (lambda m, _n=lab, _x=x, _k=k: Case(Var(_n), _k, _x, m))
        elif isinstance(f, fm.Under) and isinstance(p, SUnder):
            x = fresh.var()
            prems = [FocusedConclusion(p.right, f.left), Unfocused(InLeaf(f.right, x), p.left)]
            yield "\\•", d, prems, (lambda n, m, _n=lab, _x=x: App(Var(_n), Pair(n, Lam(_x, m))))
        elif isinstance(f, fm.Over) and isinstance(p, SOver):
            x = fresh.var()
            prems = [FocusedConclusion(p.left, f.right), Unfocused(InLeaf(f.left, x), p.right)]
            yield "/•", d, prems, (lambda n, m, _n=lab, _x=x: App(Var(_n), Pair(n, Lam(_x, m))))
        elif isinstance(f, fm.Par) and isinstance(p, SPar):
            y, x = fresh.var(), fresh.var()
            prems = [Unfocused(InLeaf(f.right, y), p.left), Unfocused(InLeaf(f.left, x), p.right)]
            yield "⊕•", d, prems, (lambda n, m, _n=lab, _y=y, _x=x:
                                   App(Var(_n), Pair(Lam(_y, n), Lam(_x, m))))

    def _focused_option(self, s, fresh: Fresh):
        f = s.focus
        if self.mode is TranslationMode.CBN:
            if not isinstance(s, FocusedHypothesis):
                return None
            p = s.cons
            if isinstance(f, fm.Atom):
                if isinstance(p, OutLeaf) and p.formula == f:
                    return "Ax", s, [], (lambda _e=p.label: Var(_e))
                return None
            if isinstance(f, fm.Tensor):
                x, y = fresh.var(), fresh.var()
                prem = Unfocused(SProd(InLeaf(f.left, x), InLeaf(f.right, y)), p)
                return "⊗•", s, [prem], (lambda m, _x=x, _y=y: _pattern_lam(_x, _y, m, fresh))
            if isinstance(f, fm.RSub):
                y, n = fresh.var(), fresh.covar()
                prem = Unfocused(SRSubStr(InLeaf(f.left, y), OutLeaf(f.right, n)), p)
                return "⊘•", s, [prem], (lambda m, _y=y, _n=n: _pattern_lam(_n, _y, m, fresh))
            if isinstance(f, fm.LSub):
                y, n = fresh.var(), fresh.covar()
                prem = Unfocused(SLSubStr(OutLeaf(f.left, n), InLeaf(f.right, y)), p)
                return "⦸•", s, [prem], (lambda m, _y=y, _n=n: _pattern_lam(_n, _y, m, fresh))
            if isinstance(f, fm.Under) and isinstance(p, SUnder):
                e = fresh.covar()
                prems = [Unfocused(p.right, OutLeaf(f.left, e)), FocusedHypothesis(p.left, f.right)]
                return "\\•", s, prems, (lambda n, m, _e=e: Pair(Lam(_e, n), m))
            if isinstance(f, fm.Over) and isinstance(p, SOver):
                e = fresh.covar()
                prems = [Unfocused(p.left, OutLeaf(f.right, e)), FocusedHypothesis(p.right, f.left)]
                return "/•", s, prems, (lambda n, m, _e=e: Pair(Lam(_e, n), m))
            if isinstance(f, fm.Par) and isinstance(p, SPar):
                prems = [FocusedHypothesis(p.left, f.right), FocusedHypothesis(p.right, f.left)]
                return "⊕•", s, prems, (lambda n, m: Pair(n, m))
            return None
        if not isinstance(s, FocusedConclusion):
            return None
        g = s.ante
        if isinstance(f, fm.Atom):
            if isinstance(g, InLeaf) and g.formula == f:
                return "Ax", s, [], (lambda _x=g.label: Var(_x))
            return None
        if isinstance(f, fm.Under):
            e, y = fresh.covar(), fresh.var()
            prem = Unfocused(g, SUnder(OutLeaf(f.right, e), InLeaf(f.left, y)))
            return "\\∘", s, [prem], (lambda m, _e=e, _y=y: _pattern_lam(_y, _e, m, fresh))
        if isinstance(f, fm.Over):
            e, y = fresh.covar(), fresh.var()
            prem = Unfocused(g, SOver(InLeaf(f.right, y), OutLeaf(f.left, e)))
            return "/∘", s, [prem], (lambda m, _e=e, _y=y: _pattern_lam(_y, _e, m, fresh))
        if isinstance(f, fm.Par):
            k, e = fresh.covar(), fresh.covar()
            prem = Unfocused(g, SPar(OutLeaf(f.right, k), OutLeaf(f.left, e)))
            return "⊕∘", s, [prem], (lambda m, _k=k, _e=e: _pattern_lam(_k, _e, m, fresh))
        if isinstance(f, fm.Tensor) and isinstance(g, SProd):
            prems = [FocusedConclusion(g.left, f.left), FocusedConclusion(g.right, f.right)]
            return "⊗∘", s, prems, (lambda m, n: Pair(m, n))
        if isinstance(f, fm.RSub) and isinstance(g, SRSubStr):
            z = fresh.var()
            prems = [Unfocused(InLeaf(f.right, z), g.right), FocusedConclusion(g.left, f.left)]
            return "⊘∘", s, prems, (lambda n, m, _z=z: Pair(Lam(_z, n), m))
        if isinstance(f, fm.LSub) and isinstance(g, SLSubStr):
            z = fresh.var()
            prems = [Unfocused(InLeaf(f.left, z), g.left), FocusedConclusion(g.right, f.right)]
            return "⦸∘", s, prems, (lambda n, m, _z=z: Pair(Lam(_z, n), m))
        return None

    def derive(self, s, depth: int = 0, fresh: Optional[Fresh] = None) -> list:
        """All derivations (with α-distinct terms) of s."""
        if depth > self.max_depth:
            return []
        fresh = fresh or Fresh(labels(s.ante if isinstance(s, FocusedConclusion) else
                                      s.cons if isinstance(s, FocusedHypothesis) else s))
        if isinstance(s, Unfocused):
            options = self._unfocused_options(s, fresh)
        else:
            opt = self._focused_option(s, fresh)
            options = [opt] if opt else []
        found = {}
        for rule, concl, prems, build in options:
            subs = [self.derive(p, depth + 1, fresh) for p in prems]
            for combo in itertools.product(*subs):
                term = build(*[c.term for c in combo])
                node = Derivation(rule, concl, term, list(combo))
                if concl != s:
                    node = Derivation("dp", s, term, [node])
                found.setdefault(alpha_key(term), node)
        return list(found.values())

    def derivable(self, s: Unfocused) -> bool:
        return bool(self.derive(s))


def lgt() -> StoupEngine:
    return StoupEngine(TranslationMode.CBN)


def lgq() -> StoupEngine:
    return StoupEngine(TranslationMode.CBV)


# The lexical terms for a ditransitive verb under the three interpretations.
OFFERED_TERMS = {
    TranslationMode.CBN: "lam <Z,<Y,<X,q>>>. (Z lam z. (Y lam y. (X lam x. (q (((OFFERED z) y) x)))))",
    TranslationMode.CBV: "lam <z,Y>. (Y lam <y,X>. (X lam <x,q>. (q (((OFFERED z) y) x))))",
    TranslationMode.POLARIZED: "lam <z,<y,<q,x>>>. (q (((OFFERED z) y) x))",
}


@dataclass(frozen=True)
class StoupRule:
    name: str
    conclusion: str
    premises: tuple
    term: str


_LGT = (
    StoupRule("Ax", "p^ε ⊢ [p]", (), "ε"),
    StoupRule("D", "Π ⊢ A^x", ("Π ⊢ [A] : M",), "(x M)"),
    StoupRule("⊗•", "Π ⊢ [A⊗B]", ("A^x • B^y ⊢ Π : M",), "λ⟨x,y⟩M"),
    StoupRule("⊗∘", "Γ • Δ ⊢ A⊗B^ν", ("Γ ⊢ A^ε : M", "Δ ⊢ B^κ : N"), "(ν ⟨λεM,λκN⟩)"),
    StoupRule("\\∘", "Γ ⊢ B\\A^ν", ("Γ ⊢ A^ε ↼ B^y : M",), "case ν of ⟨y,ε⟩→M"),
    StoupRule("\\•", "Π ↼ Δ ⊢ [B\\A]", ("Δ ⊢ B^ε : N", "Π ⊢ [A] : M"), "⟨λεN,M⟩"),
    StoupRule("/∘", "Γ ⊢ A/B^ν", ("Γ ⊢ B^y ⇀ A^ε : M",), "case ν of ⟨y,ε⟩→M"),
    StoupRule("/•", "Δ ⇀ Π ⊢ [A/B]", ("Δ ⊢ B^ε : N", "Π ⊢ [A] : M"), "⟨λεN,M⟩"),
    StoupRule("⊕∘", "Γ ⊢ A⊕B^ν", ("Γ ⊢ B^κ ∘ A^ε : M",), "case ν of ⟨κ,ε⟩→M"),
    StoupRule("⊕•", "Σ ∘ Π ⊢ [A⊕B]", ("Σ ⊢ [B] : N", "Π ⊢ [A] : M"), "⟨N,M⟩"),
    StoupRule("⊘•", "Π ⊢ [A⊘B]", ("A^y ⟜ B^ν ⊢ Π : M",), "λ⟨ν,y⟩M"),
    StoupRule("⊘∘", "Γ ⟜ Σ ⊢ A⊘B^ν", ("Σ ⊢ [B] : N", "Γ ⊢ A^ε : M"), "(ν ⟨N,λεM⟩)"),
    StoupRule("⦸•", "Π ⊢ [B⦸A]", ("B^ν ⟞ A^y ⊢ Π : M",), "λ⟨ν,y⟩M"),
    StoupRule("⦸∘", "Σ ⟞ Γ ⊢ B⦸A^ν", ("Σ ⊢ [B] : N", "Γ ⊢ A^ε : M"), "(ν ⟨N,λεM⟩)"),
)

_LGQ = (
    StoupRule("Ax", "p^x ⊢ [p]", (), "x"),
    StoupRule("D", "Γ ⊢ A^ε", ("Γ ⊢ [A] : M",), "(ε M)"),
    StoupRule("⊗•", "A⊗B^x ⊢ Π", ("A^y • B^z ⊢ Π : M",), "case x of ⟨y,z⟩→M"),
    StoupRule("⊗∘", "Γ • Δ ⊢ [A⊗B]", ("Γ ⊢ [A] : M", "Δ ⊢ [B] : N"), "⟨M,N⟩"),
    StoupRule("\\∘", "Γ ⊢ [B\\A]", ("Γ ⊢ A^ε ↼ B^y : M",), "λ⟨y,ε⟩M"),
    StoupRule("\\•", "B\\A^z ⊢ Π ↼ Δ", ("Δ ⊢ [B] : N", "A^x ⊢ Π : M"), "(z ⟨N,λxM⟩)"),
    StoupRule("/∘", "Γ ⊢ [A/B]", ("Γ ⊢ B^y ⇀ A^ε : M",), "λ⟨y,ε⟩M"),
    StoupRule("/•", "A/B^z ⊢ Δ ⇀ Π", ("Δ ⊢ [B] : N", "A^x ⊢ Π : M"), "(z ⟨N,λxM⟩)"),
    StoupRule("⊕∘", "Γ ⊢ [A⊕B]", ("Γ ⊢ B^κ ∘ A^ε : M",), "λ⟨κ,ε⟩M"),
    StoupRule("⊕•", "A⊕B^z ⊢ Σ ∘ Π", ("B^y ⊢ Σ : N", "A^x ⊢ Π : M"), "(z ⟨λyN,λxM⟩)"),
    StoupRule("⊘•", "A⊘B^z ⊢ Π", ("A^x ⟜ B^κ ⊢ Π : M",), "case z of ⟨κ,x⟩→M"),
    StoupRule("⊘∘", "Γ ⟜ Σ ⊢ [A⊘B]", ("B^z ⊢ Σ : N", "Γ ⊢ [A] : M"), "⟨λzN,M⟩"),
    StoupRule("⦸•", "B⦸A^z ⊢ Π", ("B^κ ⟞ A^x ⊢ Π : M",), "case z of ⟨κ,x⟩→M"),
    StoupRule("⦸∘", "Σ ⟞ Γ ⊢ [B⦸A]", ("B^z ⊢ Σ : N", "Γ ⊢ [A] : M"), "⟨λzN,M⟩"),
)


def lgt_rules() -> tuple:
    """Rule schemata implemented by the call-by-name engine (hypotheses in the stoup)."""
    return _LGT


def lgq_rules() -> tuple:
    """Rule schemata implemented by the call-by-value engine (conclusions in the stoup)."""
    return _LGQ
