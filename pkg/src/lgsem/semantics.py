"""Lexical semantics: delinearization into simply-typed terms and reading extraction.

Derivation terms live in LP.  After delinearization (⊥ ↦ t, ⊗ ↦ ×, ¬τ ↦ τ→t,
case ↦ projections) the lexical meanings are substituted for the word
variables and the result is β/π-normalized.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import formula as fm
from .formula import LinType, TAtom, TBottom, TNeg, TProd, input_type, output_type
from .lp import (
    App, Case, Lam, LinTerm, Pair, TermParser, TermSyntaxError, Var, alpha_key, free_vars, pretty_term,
    subst_many,
)
from .search import DEFAULT_LIMITS, Prover, SearchLimits, Status
from .sequent import InLeaf, OutLeaf, SProd, Unfocused
from .structural import EMPTY, RulePackage


# ---------------------------------------------------------------------------
# simple types

class SimpleType:
    __slots__ = ()

    def __str__(self):
        return pretty_simple_type(self)


@dataclass(frozen=True)
class E(SimpleType):
    pass


@dataclass(frozen=True)
class T(SimpleType):
    pass


@dataclass(frozen=True)
class Prod(SimpleType):
    left: SimpleType
    right: SimpleType


@dataclass(frozen=True)
class Arrow(SimpleType):
    arg: SimpleType
    res: SimpleType


def pretty_simple_type(t: SimpleType, top: bool = True) -> str:
    if isinstance(t, E):
        return "e"
    if isinstance(t, T):
        return "t"
    if isinstance(t, Prod):
        body = f"{pretty_simple_type(t.left, False)}×{pretty_simple_type(t.right, False)}"
    else:
        body = f"{pretty_simple_type(t.arg, False)}→{pretty_simple_type(t.res, True)}"
    return body if top else f"({body})"


_STT = re.compile(r"\s*(->|→|[*×()]|[et]\b)")


def parse_simple_type(text: str) -> SimpleType:
    """``e``, ``t``, ``a * b`` (or ×) and right-associative ``a -> b`` (or →)."""
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _STT.match(text, pos)
        if not m:
            raise ValueError(f"bad simple type {text!r} at position {pos}")
        toks.append({"→": "->", "×": "*"}.get(m.group(1), m.group(1)))
        pos = m.end()
    toks.append("")
    i = 0

    def arrow():
        nonlocal i
        left = prod()
        if toks[i] == "->":
            i += 1
            return Arrow(left, arrow())
        return left

    def prod():
        nonlocal i
        left = base()
        while toks[i] == "*":
            i += 1
            left = Prod(left, base())
        return left

    def base():
        nonlocal i
        tok = toks[i]
        i += 1
        if tok == "e":
            return E()
        if tok == "t":
            return T()
        if tok == "(":
            inner = arrow()
            if toks[i] != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            i += 1
            return inner
        raise ValueError(f"unexpected {tok or 'end'!r} in simple type {text!r}")

    out = arrow()
    if toks[i] != "":
        raise ValueError(f"trailing input in simple type {text!r}")
    return out


class UnknownAtom(KeyError):
    pass


DEFAULT_BASEMAP = {"s": T(), "np": E(), "n": Arrow(E(), T())}


def delinearize_type(t: LinType, basemap: dict = DEFAULT_BASEMAP) -> SimpleType:
    if isinstance(t, TBottom):
        return T()
    if isinstance(t, TAtom):
        try:
            return basemap[t.name]
        except KeyError:
            raise UnknownAtom(t.name) from None
    if isinstance(t, TProd):
        return Prod(delinearize_type(t.left, basemap), delinearize_type(t.right, basemap))
    if isinstance(t, TNeg):
        return Arrow(delinearize_type(t.arg, basemap), T())
    raise TypeError(t)


# ---------------------------------------------------------------------------
# simple terms: LP terms plus constants, projections and conjunction

@dataclass(frozen=True)
class Const(LinTerm):
    name: str

    def subterms(self):
        return ()

    def map_children(self, f):
        return self

    def alpha_parts(self, parts, env, go):
        parts.append(f"!{self.name}")

    def ascii(self, p):
        return self.name

    def pretty(self, p):
        return self.name


@dataclass(frozen=True)
class Proj(LinTerm):
    index: int
    arg: LinTerm

    def subterms(self):
        return (self.arg,)

    def map_children(self, f):
        return Proj(self.index, f(self.arg))

    def alpha_parts(self, parts, env, go):
        parts.append(f"π{self.index}(")
        go(self.arg, env)
        parts.append(")")

    def ascii(self, p):
        return f"(p{self.index} {p(self.arg)})"

    def pretty(self, p):
        return f"π{self.index}({p(self.arg)})"


@dataclass(frozen=True)
class And(LinTerm):
    left: LinTerm
    right: LinTerm

    def subterms(self):
        return (self.left, self.right)

    def map_children(self, f):
        return And(f(self.left), f(self.right))

    def alpha_parts(self, parts, env, go):
        parts.append("(")
        go(self.left, env)
        parts.append(" ∧ ")
        go(self.right, env)
        parts.append(")")

    def ascii(self, p):
        return f"({p(self.left)} /\\ {p(self.right)})"

    def pretty(self, p):
        return f"({p(self.left)} ∧ {p(self.right)})"


class SimpleTermParser(TermParser):
    """Term syntax with ``/\\`` for conjunction and ``p1``/``p2`` for projections."""

    allow_and = True

    def make_app(self, fn, arg):
        if isinstance(fn, Var) and fn.name in ("p1", "p2"):
            return Proj(int(fn.name[1]), arg)
        return App(fn, arg)

    def make_and(self, left, right):
        return And(left, right)


def parse_simple_term(text: str) -> LinTerm:
    """Parse a meaning term; free identifiers starting with an uppercase letter are constants."""
    return _constify(SimpleTermParser(text).parse(), frozenset())


def _constify(m, bound):
    if isinstance(m, Var):
        return Const(m.name) if m.name not in bound and m.name[0].isupper() else m
    if isinstance(m, Lam):
        return Lam(m.var, _constify(m.body, bound | {m.var}), m.type)
    if isinstance(m, Case):
        return Case(_constify(m.scrut, bound), m.x, m.y, _constify(m.body, bound | {m.x, m.y}))
    if isinstance(m, App):
        return App(_constify(m.fn, bound), _constify(m.arg, bound))
    if isinstance(m, Pair):
        return Pair(_constify(m.left, bound), _constify(m.right, bound))
    return m.map_children(lambda c: _constify(c, bound))


class SimpleTypeError(TypeError):
    pass


def simple_typecheck(m: LinTerm, env: dict, consts: dict, expected: Optional[SimpleType] = None) -> SimpleType:
    """Simply-typed checking (no linearity); λs need an annotation or an expected type."""
    if expected is not None:
        if isinstance(m, Lam) and m.type is None:
            if not isinstance(expected, Arrow):
                raise SimpleTypeError(f"λ{m.var} checked against non-function type {expected}")
            simple_typecheck(m.body, {**env, m.var: expected.arg}, consts, expected.res)
            return expected
        if isinstance(m, Pair):
            if not isinstance(expected, Prod):
                raise SimpleTypeError(f"pair checked against non-product type {expected}")
            simple_typecheck(m.left, env, consts, expected.left)
            simple_typecheck(m.right, env, consts, expected.right)
            return expected
        if isinstance(m, Case):
            st = simple_typecheck(m.scrut, env, consts)
            if not isinstance(st, Prod):
                raise SimpleTypeError(f"case on non-product {st}")
            return simple_typecheck(m.body, {**env, m.x: st.left, m.y: st.right}, consts, expected)
        got = simple_typecheck(m, env, consts)
        if got != expected:
            raise SimpleTypeError(f"expected {expected}, found {got} for {pretty_term(m)}")
        return got
    if isinstance(m, Var):
        if m.name not in env:
            raise SimpleTypeError(f"unbound variable {m.name}")
        return env[m.name]
    if isinstance(m, Const):
        if m.name not in consts:
            raise SimpleTypeError(f"undeclared constant {m.name}")
        return consts[m.name]
    if isinstance(m, App):
        if isinstance(m.fn, Lam) and m.fn.type is None:
            at = simple_typecheck(m.arg, env, consts)
            return simple_typecheck(m.fn.body, {**env, m.fn.var: at}, consts)
        ft = simple_typecheck(m.fn, env, consts)
        if not isinstance(ft, Arrow):
            raise SimpleTypeError(f"applying non-function {pretty_term(m.fn)} : {ft}")
        simple_typecheck(m.arg, env, consts, ft.arg)
        return ft.res
    if isinstance(m, Proj):
        pt = simple_typecheck(m.arg, env, consts)
        if not isinstance(pt, Prod):
            raise SimpleTypeError(f"projection from non-product {pt}")
        return pt.left if m.index == 1 else pt.right
    if isinstance(m, And):
        simple_typecheck(m.left, env, consts, T())
        simple_typecheck(m.right, env, consts, T())
        return T()
    if isinstance(m, Pair):
        return Prod(simple_typecheck(m.left, env, consts), simple_typecheck(m.right, env, consts))
    if isinstance(m, Lam):
        if not isinstance(m.type, SimpleType):
            raise SimpleTypeError(f"cannot infer the type of λ{m.var}")
        return Arrow(m.type, simple_typecheck(m.body, {**env, m.var: m.type}, consts))
    if isinstance(m, Case):
        st = simple_typecheck(m.scrut, env, consts)
        if not isinstance(st, Prod):
            raise SimpleTypeError(f"case on non-product {st}")
        return simple_typecheck(m.body, {**env, m.x: st.left, m.y: st.right}, consts)
    raise SimpleTypeError(f"unknown term {m!r}")


def delinearize_term(m: LinTerm, basemap: Optional[dict] = None) -> LinTerm:
    """Replace ``case N of ⟨x,y⟩→M`` by M[π1 N/x, π2 N/y]; λ annotations are delinearized too."""
    if isinstance(m, Var) or isinstance(m, Const):
        return m
    if isinstance(m, App):
        return App(delinearize_term(m.fn, basemap), delinearize_term(m.arg, basemap))
    if isinstance(m, Pair):
        return Pair(delinearize_term(m.left, basemap), delinearize_term(m.right, basemap))
    if isinstance(m, Lam):
        ty = m.type
        if isinstance(ty, LinType) and basemap is not None:
            ty = delinearize_type(ty, basemap)
        elif isinstance(ty, LinType):
            ty = None
        return Lam(m.var, delinearize_term(m.body, basemap), ty)
    if isinstance(m, Case):
        n = delinearize_term(m.scrut, basemap)
        body = delinearize_term(m.body, basemap)
        return subst_many(body, {m.x: Proj(1, n), m.y: Proj(2, n)})
    return m.map_children(lambda c: delinearize_term(c, basemap))


def simple_normalize(m: LinTerm, fuel: int = 100_000) -> LinTerm:
    """β and π normal form (terminates on simply-typed input; fuel guards the rest)."""
    budget = [fuel]

    def go(t):
        budget[0] -= 1
        if budget[0] < 0:
            from .lp import Diverged
            raise Diverged("simple normalization ran out of fuel")
        if isinstance(t, App):
            f = go(t.fn)
            a = go(t.arg)
            if isinstance(f, Lam):
                return go(subst_many(f.body, {f.var: a}))
            return App(f, a)
        if isinstance(t, Lam):
            return Lam(t.var, go(t.body), t.type)
        if isinstance(t, Pair):
            return Pair(go(t.left), go(t.right))
        if isinstance(t, Proj):
            a = go(t.arg)
            if isinstance(a, Pair):
                return a.left if t.index == 1 else a.right
            return Proj(t.index, a)
        if isinstance(t, Case):
            s = go(t.scrut)
            if isinstance(s, Pair):
                return go(subst_many(t.body, {t.x: s.left, t.y: s.right}))
            return Case(s, t.x, t.y, go(t.body))
        if isinstance(t, And):
            return And(go(t.left), go(t.right))
        return t

    return go(m)


# ---------------------------------------------------------------------------
# lexicons

class UnknownWord(KeyError):
    pass


class NoDerivation(Exception):
    pass


class GrammarError(ValueError):
    def __init__(self, message, line_no=None):
        super().__init__(f"line {line_no}: {message}" if line_no else message)
        self.line_no = line_no


@dataclass(frozen=True)
class LexEntry:
    word: str
    category: fm.Formula
    term: LinTerm


@dataclass
class Lexicon:
    basemap: dict = field(default_factory=dict)
    consts: dict = field(default_factory=dict)
    entries: dict = field(default_factory=dict)
    goal: Optional[fm.Formula] = None

    def add(self, word: str, category: fm.Formula, term: LinTerm, check: bool = True):
        entry = LexEntry(word, category, term)
        if check:
            self.check_entry(entry)
        self.entries.setdefault(word, []).append(entry)

    def lookup(self, word: str) -> list:
        try:
            return self.entries[word]
        except KeyError:
            raise UnknownWord(word) from None

    def entry_type(self, category: fm.Formula) -> SimpleType:
        """Meanings of category A have type ⟦A⟧ (A positive) or ¬⟦A⟧ (A negative)."""
        return delinearize_type(input_type(category), self.basemap)

    def check_entry(self, entry: LexEntry):
        if free_vars(entry.term):
            raise GrammarError(f"meaning of {entry.word!r} has free variables {sorted(free_vars(entry.term))}")
        try:
            simple_typecheck(entry.term, {}, self.consts, self.entry_type(entry.category))
        except SimpleTypeError as exc:
            raise GrammarError(f"meaning of {entry.word!r} does not fit its category: {exc}") from None


def parse_grammar(text: str) -> Lexicon:
    """Line-oriented grammar: ``atom``, ``const``, ``word`` and ``goal`` lines; ``#`` comments."""
    lex = Lexicon()
    pending = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "atom":
                name, ty = _split(rest, ":")
                lex.basemap[name] = parse_simple_type(ty)
            elif head == "const":
                name, ty = _split(rest, ":")
                lex.consts[name] = parse_simple_type(ty)
            elif head == "goal":
                lex.goal = fm.parse_formula(rest)
            elif head == "word":
                word, spec = _split(rest, ":")
                cat, term = _split(spec, "=")
                pending.append((no, word, fm.parse_formula(cat), parse_simple_term(term)))
            else:
                raise GrammarError(f"unknown directive {head!r}", no)
        except (ValueError, TermSyntaxError) as exc:
            if isinstance(exc, GrammarError):
                raise
            raise GrammarError(str(exc), no) from None
    for no, word, cat, term in pending:
        try:
            lex.add(word, cat, term)
        except (GrammarError, UnknownAtom) as exc:
            raise GrammarError(str(exc), no) from None
    return lex


def _split(text, sep):
    left, found, right = text.partition(sep)
    if not found or not left.strip() or not right.strip():
        raise GrammarError(f"expected '<lhs> {sep} <rhs>' in {text!r}")
    return left.strip(), right.strip()


def load_grammar(path) -> Lexicon:
    return parse_grammar(Path(path).read_text(encoding="utf-8"))


def shipped_grammar_path() -> Path:
    return Path(__file__).parent / "data" / "paper.lg"


def shipped_lexicon() -> Lexicon:
    return load_grammar(shipped_grammar_path())


# ---------------------------------------------------------------------------
# sentences and readings

def parse_brackets(text: str):
    """``[a [b c]]`` -> ('a', ('b', 'c')); a bare word list gives a flat list of words."""
    toks = re.findall(r"\[|\]|[^\s\[\]]+", text)
    if not toks:
        raise ValueError("empty sentence")
    if "[" not in toks and "]" not in toks:
        return list(toks)
    pos = 0

    def node():
        nonlocal pos
        tok = toks[pos]
        pos += 1
        if tok == "[":
            kids = []
            while pos < len(toks) and toks[pos] != "]":
                kids.append(node())
            if pos >= len(toks):
                raise ValueError("unbalanced brackets")
            pos += 1
            if len(kids) == 1:
                return kids[0]
            if len(kids) != 2:
                raise ValueError("brackets must group exactly two constituents")
            return tuple(kids)
        if tok == "]":
            raise ValueError("unbalanced brackets")
        return tok

    tree = node()
    if pos != len(toks):
        raise ValueError("trailing input after bracketed sentence")
    return tree


def bracketings(words: list):
    """All binary trees over the word sequence."""
    if len(words) == 1:
        yield words[0]
        return
    for k in range(1, len(words)):
        for l in bracketings(words[:k]):
            for r in bracketings(words[k:]):
                yield (l, r)


def tree_words(tree) -> list:
    if isinstance(tree, str):
        return [tree]
    return tree_words(tree[0]) + tree_words(tree[1])


def show_tree(tree) -> str:
    if isinstance(tree, str):
        return tree
    return f"[{show_tree(tree[0])} {show_tree(tree[1])}]"


def _build_structure(tree, cats, counter):
    if isinstance(tree, str):
        i = next(counter)
        return InLeaf(cats[i], f"w{i}")
    return SProd(_build_structure(tree[0], cats, counter), _build_structure(tree[1], cats, counter))


@dataclass
class Reading:
    term: LinTerm
    derivations: int
    tree: object
    linear_terms: list

    def __str__(self):
        return pretty_term(self.term)


GOAL_COVAR = "γ"


def readings_for_tree(tree, category: fm.Formula, lex: Lexicon, pkg: RulePackage = EMPTY,
                      limits: SearchLimits = DEFAULT_LIMITS, prover: Optional[Prover] = None) -> list:
    words = tree_words(tree)
    choices = [lex.lookup(w) for w in words]
    prover = prover or Prover(pkg, limits)
    found: dict[str, Reading] = {}
    any_unknown = False
    for combo in itertools.product(*choices):
        cats = [e.category for e in combo]
        goal = Unfocused(_build_structure(tree, cats, itertools.count()), OutLeaf(category, GOAL_COVAR))
        st = prover.status(goal)
        if st is Status.UNKNOWN:
            any_unknown = True
            continue
        if st is not Status.YES:
            continue
        lexsub = {f"w{i}": delinearize_term(e.term) for i, e in enumerate(combo)}
        for d in prover.derivations(goal):
            m = delinearize_term(d.term, lex.basemap)
            m = subst_many(m, lexsub)
            goal_ty = delinearize_type(output_type(category), lex.basemap)
            simple_typecheck(m, {GOAL_COVAR: goal_ty}, lex.consts, T())
            nf = simple_normalize(m)
            k = alpha_key(nf)
            if k in found:
                found[k].derivations += 1
                found[k].linear_terms.append(d.term)
            else:
                found[k] = Reading(nf, 1, tree, [d.term])
    if not found and any_unknown:
        from .search import DepthExceeded
        raise DepthExceeded("search limits reached before a reading was found")
    return list(found.values())


def reading(sentence, category, lex: Lexicon, pkg: RulePackage = EMPTY,
            limits: SearchLimits = DEFAULT_LIMITS, all_brackets: bool = False) -> list:
    """Normal-form readings of a bracketed sentence at the given category.

    Raises UnknownWord for words missing from the lexicon and NoDerivation
    when no bracketing/lexical choice yields a derivation.
    """
    if isinstance(category, str):
        category = fm.parse_formula(category)
    tree = parse_brackets(sentence) if isinstance(sentence, str) else sentence
    for w in (tree if isinstance(tree, list) else tree_words(tree)):
        lex.lookup(w)
    if isinstance(tree, list):
        if not all_brackets and len(tree) > 1:
            raise ValueError("sentence has no brackets; bracket it or enumerate all bracketings")
        trees = list(bracketings(tree))
    else:
        trees = [tree]
    prover = Prover(pkg, limits)
    found: dict[str, Reading] = {}
    for t in trees:
        for r in readings_for_tree(t, category, lex, pkg, limits, prover):
            k = alpha_key(r.term)
            if k in found:
                found[k].derivations += r.derivations
                found[k].linear_terms += r.linear_terms
            else:
                found[k] = r
    if not found:
        raise NoDerivation(f"no derivation of {sentence} as {fm.print_formula(category)}")
    return list(found.values())


def goal_free_variable_renamed(m: LinTerm, name: str) -> LinTerm:
    """Rename the free goal covariable, for comparison against readings printed with another name."""
    return subst_many(m, {GOAL_COVAR: Var(name)})
