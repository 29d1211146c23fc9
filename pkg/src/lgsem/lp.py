"""The linear target calculus LP: terms, linear typing, reduction and α-equivalence.

Terms are immutable.  ``Lam`` carries an optional type annotation; derivations
always fill it in.  The semantics module reuses ``Var``/``App``/``Lam``/``Pair``
and ``Case`` for its simply-typed terms and adds constants, projections and ∧.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Optional

from .formula import BOTTOM, LinType, TNeg, TProd, pretty_type


class LinTerm:
    __slots__ = ()

    def __str__(self):
        return pretty_term(self)


@dataclass(frozen=True)
class Var(LinTerm):
    name: str


@dataclass(frozen=True)
class App(LinTerm):
    fn: LinTerm
    arg: LinTerm


@dataclass(frozen=True)
class Lam(LinTerm):
    var: str
    body: LinTerm
    type: Optional[object] = field(default=None, compare=False)


@dataclass(frozen=True)
class Pair(LinTerm):
    left: LinTerm
    right: LinTerm


@dataclass(frozen=True)
class Case(LinTerm):
    """case scrut of ⟨x, y⟩ → body"""
    scrut: LinTerm
    x: str
    y: str
    body: LinTerm


# ---------------------------------------------------------------------------
# errors

class LPTypeError(Exception):
    pass


class UnboundVariable(LPTypeError):
    pass


class VariableUsedTwice(LPTypeError):
    pass


class VariableUnused(LPTypeError):
    pass


class TypeMismatch(LPTypeError):
    def __init__(self, expected, found, where=None):
        msg = f"expected {_show_type(expected)}, found {_show_type(found)}"
        if where is not None:
            msg += f" in {where}"
        super().__init__(msg)
        self.expected = expected
        self.found = found


class Diverged(Exception):
    pass


def _show_type(t):
    return pretty_type(t) if isinstance(t, LinType) else str(t)


# ---------------------------------------------------------------------------
# free variables, substitution, renaming

def free_vars(m: LinTerm) -> set[str]:
    if isinstance(m, Var):
        return {m.name}
    if isinstance(m, App):
        return free_vars(m.fn) | free_vars(m.arg)
    if isinstance(m, Lam):
        return free_vars(m.body) - {m.var}
    if isinstance(m, Pair):
        return free_vars(m.left) | free_vars(m.right)
    if isinstance(m, Case):
        return free_vars(m.scrut) | (free_vars(m.body) - {m.x, m.y})
    return _extension_free_vars(m)


def free_occurrences(m: LinTerm) -> list[str]:
    """Free variables as a multiset (list, traversal order)."""
    out: list[str] = []

    def go(t, bound):
        if isinstance(t, Var):
            if t.name not in bound:
                out.append(t.name)
        elif isinstance(t, Lam):
            go(t.body, bound | {t.var})
        elif isinstance(t, Case):
            go(t.scrut, bound)
            go(t.body, bound | {t.x, t.y})
        else:
            for c in children(t):
                go(c, bound)

    go(m, frozenset())
    return out


def children(m: LinTerm) -> tuple:
    if isinstance(m, App):
        return (m.fn, m.arg)
    if isinstance(m, Pair):
        return (m.left, m.right)
    if isinstance(m, Lam):
        return (m.body,)
    if isinstance(m, Case):
        return (m.scrut, m.body)
    return getattr(m, "subterms", lambda: ())()


def bound_vars(m: LinTerm) -> list[str]:
    out: list[str] = []

    def go(t):
        if isinstance(t, Lam):
            out.append(t.var)
        elif isinstance(t, Case):
            out.extend((t.x, t.y))
        for c in children(t):
            go(c)

    go(m)
    return out


def binders_unique(m: LinTerm) -> bool:
    bs = bound_vars(m)
    return len(bs) == len(set(bs)) and not (set(bs) & free_vars(m))


def term_size(m: LinTerm) -> int:
    return 1 + sum(term_size(c) for c in children(m))


_counter = itertools.count()


def fresh(base: str, avoid: set[str]) -> str:
    stem = re.sub(r"_\d+$", "", base) or "v"
    while True:
        cand = f"{stem}_{next(_counter)}"
        if cand not in avoid:
            return cand


def subst(m: LinTerm, x: str, n: LinTerm) -> LinTerm:
    """Capture-avoiding m[n/x]."""
    return subst_many(m, {x: n})


def subst_many(m: LinTerm, sub: dict) -> LinTerm:
    if not sub:
        return m
    if isinstance(m, Var):
        return sub.get(m.name, m)
    if isinstance(m, App):
        return App(subst_many(m.fn, sub), subst_many(m.arg, sub))
    if isinstance(m, Pair):
        return Pair(subst_many(m.left, sub), subst_many(m.right, sub))
    if isinstance(m, Lam):
        inner = {k: v for k, v in sub.items() if k != m.var}
        if not inner:
            return m
        fv = set().union(*(free_vars(v) for v in inner.values()))
        var, body = m.var, m.body
        if var in fv:
            new = fresh(var, fv | free_vars(body) | set(inner))
            body = subst_many(body, {var: Var(new)})
            var = new
        return Lam(var, subst_many(body, inner), m.type)
    if isinstance(m, Case):
        scrut = subst_many(m.scrut, sub)
        inner = {k: v for k, v in sub.items() if k not in (m.x, m.y)}
        if not inner:
            return Case(scrut, m.x, m.y, m.body)
        fv = set().union(*(free_vars(v) for v in inner.values()))
        x, y, body = m.x, m.y, m.body
        ren = {}
        avoid = fv | free_vars(body) | set(inner)
        if x in fv:
            nx = fresh(x, avoid)
            avoid.add(nx)
            ren[x] = Var(nx)
            x = nx
        if y in fv:
            ny = fresh(y, avoid)
            ren[y] = Var(ny)
            y = ny
        body = subst_many(body, ren)
        return Case(scrut, x, y, subst_many(body, inner))
    return m.map_children(lambda c: subst_many(c, sub))


def rename(m: LinTerm, old: str, new: str) -> LinTerm:
    """m[new/old] for variable-for-variable renaming (unary α-rules)."""
    return subst(m, old, Var(new))


def _extension_free_vars(m):
    return set().union(*(free_vars(c) for c in children(m))) if children(m) else set()


# ---------------------------------------------------------------------------
# α-equivalence

def alpha_key(m: LinTerm) -> str:
    """Serialization invariant under renaming of bound variables."""
    names: dict[str, str] = {}
    counter = itertools.count()
    parts: list[str] = []

    def bind(v, env):
        env = dict(env)
        env[v] = f"#{next(counter)}"
        return env

    def go(t, env):
        if isinstance(t, Var):
            parts.append(env.get(t.name, t.name))
        elif isinstance(t, App):
            parts.append("(")
            go(t.fn, env)
            parts.append(" ")
            go(t.arg, env)
            parts.append(")")
        elif isinstance(t, Lam):
            env2 = bind(t.var, env)
            parts.append(f"λ{env2[t.var]}.")
            go(t.body, env2)
        elif isinstance(t, Pair):
            parts.append("<")
            go(t.left, env)
            parts.append(",")
            go(t.right, env)
            parts.append(">")
        elif isinstance(t, Case):
            parts.append("case ")
            go(t.scrut, env)
            env2 = bind(t.y, bind(t.x, env))
            parts.append(f" of<{env2[t.x]},{env2[t.y]}>.")
            go(t.body, env2)
        else:
            t.alpha_parts(parts, env, go)

    go(m, names)
    return "".join(parts)


def alpha_eq(m: LinTerm, n: LinTerm) -> bool:
    return alpha_key(m) == alpha_key(n)


def rename_free(m: LinTerm, mapping: dict[str, str]) -> LinTerm:
    return subst_many(m, {k: Var(v) for k, v in mapping.items()})


# ---------------------------------------------------------------------------
# typing

def typecheck(ctx: dict, m: LinTerm, expected: Optional[LinType] = None) -> LinType:
    """Type of m in the linear context ctx (name -> LinType).

    Every variable of ctx must occur free exactly once.  Unannotated λs are
    accepted only where the expected type is known (checking mode).
    """
    env = {k: [t, 0] for k, t in ctx.items()}
    t = _check(env, m, expected) if expected is not None else _infer(env, m)
    for name, (_, uses) in env.items():
        if uses == 0:
            raise VariableUnused(name)
    return t


def _use(env, name):
    if name not in env:
        raise UnboundVariable(name)
    slot = env[name]
    if slot[1]:
        raise VariableUsedTwice(name)
    slot[1] = 1
    return slot[0]


def _bind(env, name, ty, k):
    saved = env.get(name)
    env[name] = [ty, 0]
    try:
        result = k()
        if env[name][1] == 0:
            raise VariableUnused(name)
        return result
    finally:
        if saved is None:
            del env[name]
        else:
            env[name] = saved


def _infer(env, m):
    if isinstance(m, Var):
        return _use(env, m.name)
    if isinstance(m, App):
        if isinstance(m.fn, Lam) and m.fn.type is None:
            arg_t = _infer(env, m.arg)
            _check(env, m.fn, TNeg(arg_t))
            return BOTTOM
        fn_t = _infer(env, m.fn)
        if not isinstance(fn_t, TNeg):
            raise TypeMismatch("¬τ", fn_t, m)
        _check(env, m.arg, fn_t.arg)
        return BOTTOM
    if isinstance(m, Lam):
        if m.type is None:
            raise LPTypeError(f"cannot infer the type of unannotated binder {m.var}")
        _bind(env, m.var, m.type, lambda: _check(env, m.body, BOTTOM))
        return TNeg(m.type)
    if isinstance(m, Pair):
        return TProd(_infer(env, m.left), _infer(env, m.right))
    if isinstance(m, Case):
        st = _infer(env, m.scrut)
        if not isinstance(st, TProd):
            raise TypeMismatch("τ⊗σ", st, m)
        return _bind(env, m.x, st.left, lambda: _bind(env, m.y, st.right, lambda: _infer(env, m.body)))
    raise LPTypeError(f"not an LP term: {m!r}")


def _check(env, m, expected):
    if isinstance(m, Lam):
        if not isinstance(expected, TNeg):
            raise TypeMismatch(expected, "¬τ", m)
        if m.type is not None and m.type != expected.arg:
            raise TypeMismatch(expected.arg, m.type, m)
        _bind(env, m.var, expected.arg, lambda: _check(env, m.body, BOTTOM))
        return expected
    if isinstance(m, Pair) and isinstance(expected, TProd):
        _check(env, m.left, expected.left)
        _check(env, m.right, expected.right)
        return expected
    if isinstance(m, Case):
        st = _infer(env, m.scrut)
        if not isinstance(st, TProd):
            raise TypeMismatch("τ⊗σ", st, m)
        return _bind(env, m.x, st.left,
                     lambda: _bind(env, m.y, st.right, lambda: _check(env, m.body, expected)))
    t = _infer(env, m)
    if t != expected:
        raise TypeMismatch(expected, t, m)
    return t


# ---------------------------------------------------------------------------
# reduction

def step(m: LinTerm) -> Optional[LinTerm]:
    """One leftmost-outermost β or c step, or None if m is normal."""
    r = _contract(m)
    if r is not None:
        return r
    if isinstance(m, App):
        s = step(m.fn)
        if s is not None:
            return App(s, m.arg)
        s = step(m.arg)
        return None if s is None else App(m.fn, s)
    if isinstance(m, Lam):
        s = step(m.body)
        return None if s is None else Lam(m.var, s, m.type)
    if isinstance(m, Pair):
        s = step(m.left)
        if s is not None:
            return Pair(s, m.right)
        s = step(m.right)
        return None if s is None else Pair(m.left, s)
    if isinstance(m, Case):
        s = step(m.scrut)
        if s is not None:
            return Case(s, m.x, m.y, m.body)
        s = step(m.body)
        return None if s is None else Case(m.scrut, m.x, m.y, s)
    return None


def _contract(m):
    if isinstance(m, App):
        if isinstance(m.fn, Lam):
            return subst(m.fn.body, m.fn.var, m.arg)
        if isinstance(m.fn, Case):
            c = _freshen_case(m.fn, free_vars(m.arg))
            return Case(c.scrut, c.x, c.y, App(c.body, m.arg))
    if isinstance(m, Case):
        if isinstance(m.scrut, Pair):
            return subst_many(m.body, {m.x: m.scrut.left, m.y: m.scrut.right})
        if isinstance(m.scrut, Case):
            inner = _freshen_case(m.scrut, free_vars(m.body) | {m.x, m.y})
            return Case(inner.scrut, inner.x, inner.y, Case(inner.body, m.x, m.y, m.body))
    return None


def _freshen_case(c: Case, avoid: set[str]) -> Case:
    if c.x not in avoid and c.y not in avoid:
        return c
    taken = avoid | free_vars(c.body)
    nx = fresh(c.x, taken) if c.x in avoid else c.x
    ny = fresh(c.y, taken | {nx}) if c.y in avoid else c.y
    return Case(c.scrut, nx, ny, subst_many(c.body, {c.x: Var(nx), c.y: Var(ny)}))


DEFAULT_FUEL = 10_000


def normalize(m: LinTerm, fuel: int = DEFAULT_FUEL, stepper=step) -> LinTerm:
    for _ in range(fuel):
        nxt = stepper(m)
        if nxt is None:
            return m
        m = nxt
    raise Diverged(f"no normal form within {fuel} steps")


def is_normal(m: LinTerm) -> bool:
    return step(m) is None


def step_innermost(m: LinTerm) -> Optional[LinTerm]:
    """Alternative strategy (rightmost-innermost) used to probe confluence."""
    if isinstance(m, App):
        s = step_innermost(m.arg)
        if s is not None:
            return App(m.fn, s)
        s = step_innermost(m.fn)
        if s is not None:
            return App(s, m.arg)
    elif isinstance(m, Lam):
        s = step_innermost(m.body)
        if s is not None:
            return Lam(m.var, s, m.type)
    elif isinstance(m, Pair):
        s = step_innermost(m.right)
        if s is not None:
            return Pair(m.left, s)
        s = step_innermost(m.left)
        if s is not None:
            return Pair(s, m.right)
    elif isinstance(m, Case):
        s = step_innermost(m.body)
        if s is not None:
            return Case(m.scrut, m.x, m.y, s)
        s = step_innermost(m.scrut)
        if s is not None:
            return Case(s, m.x, m.y, m.body)
    return _contract(m)


# ---------------------------------------------------------------------------
# printing

def print_term(m: LinTerm) -> str:
    """ASCII form accepted by parse_term."""
    if isinstance(m, Var):
        return m.name
    if isinstance(m, App):
        return f"({print_term(m.fn)} {print_term(m.arg)})"
    if isinstance(m, Lam):
        return f"lam {m.var}. {print_term(m.body)}"
    if isinstance(m, Pair):
        return f"<{print_term(m.left)}, {print_term(m.right)}>"
    if isinstance(m, Case):
        return f"case {print_term(m.scrut)} of <{m.x},{m.y}>. {print_term(m.body)}"
    return m.ascii(print_term)


def _pattern(m: LinTerm):
    """Recognize λz.case z of ⟨x,y⟩→M (z used once, as the scrutinee) as λ⟨x,y⟩M."""
    if isinstance(m, Lam) and isinstance(m.body, Case) and m.body.scrut == Var(m.var) \
            and m.var not in free_vars(m.body.body):
        x, y, body = m.body.x, m.body.y, m.body.body
        return f"⟨{x},{y}⟩", body
    return None


def pretty_term(m: LinTerm) -> str:
    if isinstance(m, Var):
        return m.name
    if isinstance(m, App):
        return f"({pretty_term(m.fn)} {pretty_term(m.arg)})"
    if isinstance(m, Lam):
        pat = _pattern(m)
        head, body = pat if pat else (m.var, m.body)
        b = pretty_term(body)
        return f"λ{head}{b}" if b.startswith("(") else f"λ{head}.{b}"
    if isinstance(m, Pair):
        return f"⟨{pretty_term(m.left)},{pretty_term(m.right)}⟩"
    if isinstance(m, Case):
        return f"case {pretty_term(m.scrut)} of ⟨{m.x},{m.y}⟩→{pretty_term(m.body)}"
    return m.pretty(pretty_term)


# ---------------------------------------------------------------------------
# parsing

class TermSyntaxError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TTOK = re.compile(r"\s*(?:(/\\|[()<>,.]|λ|⟨|⟩|→)|((?:(?!λ)[^\W\d])(?:(?!λ)[\w'])*))")
_KEYWORDS = {"lam", "case", "of"}


def _ttokens(text):
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TTOK.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos]!r}", pos)
        sym, ident = m.group(1), m.group(2)
        if sym:
            sym = {"λ": "lam", "⟨": "<", "⟩": ">", "→": "."}.get(sym, sym)
            out.append(("kw" if sym == "lam" else "sym", sym, m.start(1)))
        else:
            out.append(("kw" if ident in _KEYWORDS else "id", ident, m.start(2)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class TermParser:
    """Recursive-descent parser for the shared term syntax.

    Subclasses override ``make_var`` / ``make_app`` / ``make_and`` to add
    constants, projections and conjunction.
    """

    allow_and = False

    def __init__(self, text: str):
        self.toks = _ttokens(text)
        self.i = 0
        self._gensym = itertools.count()

    def peek(self, k=0):
        return self.toks[self.i + k]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise TermSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self):
        t = self.term()
        kind, v, pos = self.peek()
        if kind != "end":
            raise TermSyntaxError(f"trailing input {v!r}", pos)
        return t

    def ident(self):
        kind, v, pos = self.take()
        if kind != "id":
            raise TermSyntaxError(f"expected identifier, found {v or 'end of input'!r}", pos)
        return v

    def pattern(self):
        if self.peek()[1] == "<":
            self.take()
            a = self.pattern()
            self.expect(",")
            b = self.pattern()
            self.expect(">")
            return (a, b)
        return self.ident()

    def term(self):
        kind, v, pos = self.peek()
        if kind == "kw" and v == "lam":
            self.take()
            pat = self.pattern()
            self.expect(".")
            body = self.term()
            return self.make_lam(pat, body)
        if kind == "kw" and v == "case":
            self.take()
            scrut = self.term()
            kind2, v2, pos2 = self.take()
            if v2 != "of":
                raise TermSyntaxError("expected 'of'", pos2)
            self.expect("<")
            x = self.ident()
            self.expect(",")
            y = self.ident()
            self.expect(">")
            self.expect(".")
            return Case(scrut, x, y, self.term())
        return self.atom()

    def atom(self):
        kind, v, pos = self.take()
        if kind == "id":
            return self.make_var(v)
        if v == "<":
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(">")
            return Pair(a, b)
        if v == "(":
            left = self.app_seq()
            if self.peek()[1] == "/\\":
                if not self.allow_and:
                    raise TermSyntaxError("'/\\' is not part of LP", self.peek()[2])
                self.take()
                right = self.app_seq()
                self.expect(")")
                return self.make_and(left, right)
            self.expect(")")
            return left
        raise TermSyntaxError(f"unexpected {v or 'end of input'!r}", pos)

    def app_seq(self):
        items = [self.term()]
        while self.peek()[1] not in (")", "/\\") and self.peek()[0] != "end":
            items.append(self.term())
        head = items[0]
        for arg in items[1:]:
            head = self.make_app(head, arg)
        return head

    def make_var(self, name):
        return Var(name)

    def make_app(self, fn, arg):
        return App(fn, arg)

    def make_and(self, left, right):
        raise NotImplementedError

    def make_lam(self, pat, body):
        if isinstance(pat, str):
            return Lam(pat, body)
        z = f"p_{next(self._gensym)}"
        return Lam(z, self.destructure(Var(z), pat, body))

    def destructure(self, scrut, pat, body):
        a, b = pat
        x = a if isinstance(a, str) else f"p_{next(self._gensym)}"
        y = b if isinstance(b, str) else f"p_{next(self._gensym)}"
        if not isinstance(b, str):
            body = self.destructure(Var(y), b, body)
        if not isinstance(a, str):
            body = self.destructure(Var(x), a, body)
        return Case(scrut, x, y, body)


def parse_term(text: str) -> LinTerm:
    return TermParser(text).parse()


T = parse_term


def show_typing(ctx: dict, m: LinTerm, t: LinType) -> str:
    c = ", ".join(f"{k}:{pretty_type(v)}" for k, v in ctx.items())
    return f"{c} ⊢ {pretty_term(m)} : {pretty_type(t)}"
