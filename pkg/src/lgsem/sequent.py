"""Antecedent structures, consequent costructures, sequents and the display postulates."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Union

from . import formula as fm
from .formula import Formula, input_type, output_type, print_formula, pretty_formula


class _Node:
    __slots__ = ()

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_h", h)
            return h


class Structure(_Node):
    """Antecedent structure (Γ, Δ)."""
    __slots__ = ()


class CoStructure(_Node):
    """Consequent costructure (Π, Σ)."""
    __slots__ = ()


def _node(cls):
    cls = dataclass(frozen=True)(cls)
    cls.__hash__ = _Node.__hash__
    return cls


@_node
class InLeaf(Structure):
    formula: Formula
    label: str


@_node
class SProd(Structure):
    """Γ • Δ"""
    left: Structure
    right: Structure


@_node
class SRSubStr(Structure):
    """Γ ⟜ Σ"""
    left: Structure
    right: CoStructure


@_node
class SLSubStr(Structure):
    """Π ⟞ Γ"""
    left: CoStructure
    right: Structure


@_node
class SRCoNeg(Structure):
    """Structural right conegation; reads back as F(Π)¹."""
    arg: CoStructure


@_node
class SLCoNeg(Structure):
    """Structural left conegation; reads back as ¹F(Σ)."""
    arg: CoStructure


@_node
class OutLeaf(CoStructure):
    formula: Formula
    label: str


@_node
class SPar(CoStructure):
    """Σ ∘ Π"""
    left: CoStructure
    right: CoStructure


@_node
class SUnder(CoStructure):
    """Π ↼ Γ"""
    left: CoStructure
    right: Structure


@_node
class SOver(CoStructure):
    """Δ ⇀ Π"""
    left: Structure
    right: CoStructure


@_node
class SLNeg(CoStructure):
    """Structural left negation; reads back as ⁰F(Δ)."""
    arg: Structure


@_node
class SRNeg(CoStructure):
    """Structural right negation; reads back as F(Γ)⁰."""
    arg: Structure


@_node
class MetaS(Structure):
    """Structure metavariable, used only in structural-rule patterns."""
    name: str


@_node
class MetaC(CoStructure):
    name: str


Struct = Union[Structure, CoStructure]
LEAVES = (InLeaf, OutLeaf)
BINARY = (SProd, SRSubStr, SLSubStr, SPar, SUnder, SOver)
UNARY = (SRCoNeg, SLCoNeg, SLNeg, SRNeg)


# ---------------------------------------------------------------------------
# sequents

@_node
class Unfocused:
    """Γ ⊢ Π.  Either side may be the structure; ``ante``/``cons`` sort them out."""
    left: Struct
    right: Struct

    @property
    def ante(self) -> Structure:
        return self.left if isinstance(self.left, Structure) else self.right

    @property
    def cons(self) -> CoStructure:
        return self.right if isinstance(self.left, Structure) else self.left

    def oriented(self) -> "Unfocused":
        return self if isinstance(self.left, Structure) else Unfocused(self.right, self.left)

    def __str__(self):
        return pretty_sequent(self)


@_node
class FocusedConclusion:
    """Γ ⊢ [A]: a conclusion in the stoup."""
    ante: Structure
    focus: Formula

    def __str__(self):
        return pretty_sequent(self)


@_node
class FocusedHypothesis:
    """Π ⊢ [A]: a hypothesis in the stoup."""
    cons: CoStructure
    focus: Formula

    def __str__(self):
        return pretty_sequent(self)


Sequent = Union[Unfocused, FocusedConclusion, FocusedHypothesis]


def seq(ante: Structure, cons: CoStructure) -> Unfocused:
    return Unfocused(ante, cons)


# ---------------------------------------------------------------------------
# traversal

def subnodes(s) -> tuple:
    if isinstance(s, BINARY):
        return (s.left, s.right)
    if isinstance(s, UNARY):
        return (s.arg,)
    return ()


def leaves(s) -> Iterator:
    """Leaves left to right (for a sequent: antecedent side first)."""
    if isinstance(s, Unfocused):
        yield from leaves(s.left)
        yield from leaves(s.right)
    elif isinstance(s, LEAVES):
        yield s
    else:
        for c in subnodes(s):
            yield from leaves(c)


def leaf_count(s) -> int:
    return sum(1 for _ in leaves(s))


def labels(s) -> list[str]:
    return [l.label for l in leaves(s)]


def formula_size(s) -> int:
    return sum(fm.size(l.formula) for l in leaves(s))


def node_count(s) -> int:
    if isinstance(s, Unfocused):
        return node_count(s.left) + node_count(s.right)
    return 1 + sum(node_count(c) for c in subnodes(s))


def replace_leaf(s, label: str, new):
    """Substitute ``new`` for the leaf carrying ``label``."""
    if isinstance(s, Unfocused):
        return Unfocused(replace_leaf(s.left, label, new), replace_leaf(s.right, label, new))
    if isinstance(s, LEAVES):
        return new if s.label == label else s
    if isinstance(s, BINARY):
        l, r = replace_leaf(s.left, label, new), replace_leaf(s.right, label, new)
        return s if (l is s.left and r is s.right) else type(s)(l, r)
    if isinstance(s, UNARY):
        a = replace_leaf(s.arg, label, new)
        return s if a is s.arg else type(s)(a)
    return s


# ---------------------------------------------------------------------------
# readback and context interpretation

def readback(s) -> Formula:
    """F(·): the formula a (co)structure stands for."""
    if isinstance(s, LEAVES):
        return s.formula
    if isinstance(s, SProd):
        return fm.Tensor(readback(s.left), readback(s.right))
    if isinstance(s, SPar):
        return fm.Par(readback(s.right), readback(s.left))
    if isinstance(s, SOver):
        return fm.Over(readback(s.right), readback(s.left))
    if isinstance(s, SUnder):
        return fm.Under(readback(s.right), readback(s.left))
    if isinstance(s, SRSubStr):
        return fm.RSub(readback(s.left), readback(s.right))
    if isinstance(s, SLSubStr):
        return fm.LSub(readback(s.left), readback(s.right))
    if isinstance(s, SLNeg):
        return fm.LNeg(readback(s.arg))
    if isinstance(s, SRNeg):
        return fm.RNeg(readback(s.arg))
    if isinstance(s, SRCoNeg):
        return fm.RCoNeg(readback(s.arg))
    if isinstance(s, SLCoNeg):
        return fm.LCoNeg(readback(s.arg))
    raise TypeError(f"no readback for {s!r}")


def context(s) -> dict:
    """⟦·⟧ of a sequent (or a bare (co)structure) as an LP context."""
    if isinstance(s, FocusedConclusion):
        return context(s.ante)
    if isinstance(s, FocusedHypothesis):
        return context(s.cons)
    ctx = {}
    for leaf in leaves(s):
        if leaf.label in ctx:
            raise ValueError(f"label {leaf.label} occurs twice")
        ctx[leaf.label] = input_type(leaf.formula) if isinstance(leaf, InLeaf) else output_type(leaf.formula)
    return ctx


def stoup_type(s):
    """Type the term of a sequent must have: ⊥ when unfocused, per the stoup table otherwise."""
    if isinstance(s, Unfocused):
        return fm.BOTTOM
    if isinstance(s, FocusedConclusion):
        return input_type(s.focus)
    return output_type(s.focus)


# ---------------------------------------------------------------------------
# display postulates

def _oriented_moves(ante: Structure, cons: CoStructure) -> Iterator[tuple]:
    """Every sequent one display postulate away from ante ⊢ cons (as oriented pairs)."""
    g, p = ante, cons
    if isinstance(g, SProd):
        yield g.left, SOver(g.right, p)
        yield g.right, SUnder(p, g.left)
    elif isinstance(g, SRSubStr):
        yield g.left, SPar(g.right, p)
    elif isinstance(g, SLSubStr):
        yield g.right, SPar(p, g.left)
    elif isinstance(g, SRCoNeg):
        yield SLCoNeg(p), g.arg
    elif isinstance(g, SLCoNeg):
        yield SRCoNeg(p), g.arg
    if isinstance(p, SOver):
        yield SProd(g, p.left), p.right
    elif isinstance(p, SUnder):
        yield SProd(p.right, g), p.left
    elif isinstance(p, SPar):
        yield SRSubStr(g, p.left), p.right
        yield SLSubStr(p.right, g), p.left
    elif isinstance(p, SLNeg):
        yield p.arg, SRNeg(g)
    elif isinstance(p, SRNeg):
        yield p.arg, SLNeg(g)


def display_moves(s: Unfocused) -> set:
    """All sequents one postulate application away, the antecedent/consequent swap included."""
    out = {Unfocused(s.right, s.left)}
    for a, c in _oriented_moves(s.ante, s.cons):
        out.add(Unfocused(a, c))
        out.add(Unfocused(c, a))
    return out


def display_class(s: Unfocused) -> list:
    """The display-equivalence class of s, each member oriented antecedent-first."""
    return list(_display_class(s.oriented()))


@lru_cache(maxsize=200_000)
def _display_class(start: Unfocused) -> tuple:
    seen = {start}
    queue = deque([start])
    order = []
    while queue:
        cur = queue.popleft()
        order.append(cur)
        for a, c in _oriented_moves(cur.left, cur.right):
            nxt = Unfocused(a, c)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return tuple(order)


class NotFound(LookupError):
    pass


def display(s: Unfocused, label: str) -> Unfocused:
    """The display-equivalent sequent in which the leaf ``label`` is a whole side."""
    for member in _display_class(s.oriented()):
        a, c = member.left, member.right
        if (isinstance(a, InLeaf) and a.label == label) or (isinstance(c, OutLeaf) and c.label == label):
            return member
    raise NotFound(label)


def displayed_leaves(s: Unfocused) -> dict:
    """label -> displayed sequent, for every leaf of s."""
    out = {}
    for member in _display_class(s.oriented()):
        if isinstance(member.left, InLeaf):
            out.setdefault(member.left.label, member)
        if isinstance(member.right, OutLeaf):
            out.setdefault(member.right.label, member)
    return out


# ---------------------------------------------------------------------------
# serialization keys

@lru_cache(maxsize=100_000)
def _fkey(f: Formula) -> str:
    return print_formula(f)


_KEYOP = {SProd: ".", SRSubStr: "</", SLSubStr: "/>", SPar: "o", SUnder: "<-", SOver: "->"}
_KEYUN = {SRCoNeg: "RC", SLCoNeg: "LC", SLNeg: "LN", SRNeg: "RN"}


def skey(s, with_labels: bool = True) -> str:
    if isinstance(s, InLeaf):
        return f"[{_fkey(s.formula)}^{s.label}]" if with_labels else f"[{_fkey(s.formula)}]"
    if isinstance(s, OutLeaf):
        return f"{{{_fkey(s.formula)}^{s.label}}}" if with_labels else f"{{{_fkey(s.formula)}}}"
    if isinstance(s, BINARY):
        return f"({skey(s.left, with_labels)}{_KEYOP[type(s)]}{skey(s.right, with_labels)})"
    if isinstance(s, UNARY):
        return f"{_KEYUN[type(s)]}({skey(s.arg, with_labels)})"
    if isinstance(s, (MetaS, MetaC)):
        return f"?{s.name}"
    raise TypeError(s)


def sequent_key(s: Unfocused, with_labels: bool = True) -> str:
    o = s.oriented()
    return skey(o.left, with_labels) + "|-" + skey(o.right, with_labels)


def canonical(s: Unfocused, with_labels: bool = True) -> Unfocused:
    """Least member of the display class under the serialization order."""
    return min(_display_class(s.oriented()), key=lambda m: sequent_key(m, with_labels))


def canonical_key(s: Unfocused, with_labels: bool = True) -> str:
    return min(sequent_key(m, with_labels) for m in _display_class(s.oriented()))


def display_equivalent(s: Unfocused, t: Unfocused) -> bool:
    return canonical_key(s) == canonical_key(t)


# ---------------------------------------------------------------------------
# duality

def dualize_struct(s):
    if isinstance(s, InLeaf):
        return OutLeaf(fm.dual(s.formula), s.label)
    if isinstance(s, OutLeaf):
        return InLeaf(fm.dual(s.formula), s.label)
    if isinstance(s, MetaS):
        return MetaC(s.name)
    if isinstance(s, MetaC):
        return MetaS(s.name)
    d = dualize_struct
    if isinstance(s, SProd):
        return SPar(d(s.left), d(s.right))
    if isinstance(s, SPar):
        return SProd(d(s.left), d(s.right))
    if isinstance(s, SOver):
        return SLSubStr(d(s.left), d(s.right))
    if isinstance(s, SLSubStr):
        return SOver(d(s.left), d(s.right))
    if isinstance(s, SUnder):
        return SRSubStr(d(s.left), d(s.right))
    if isinstance(s, SRSubStr):
        return SUnder(d(s.left), d(s.right))
    if isinstance(s, SLNeg):
        return SRCoNeg(d(s.arg))
    if isinstance(s, SRCoNeg):
        return SLNeg(d(s.arg))
    if isinstance(s, SRNeg):
        return SLCoNeg(d(s.arg))
    if isinstance(s, SLCoNeg):
        return SRNeg(d(s.arg))
    raise TypeError(s)


def dualize(s: Unfocused) -> Unfocused:
    """Γ ⊢ Π  ↦  Π∞ ⊢ Γ∞, so that F-readback turns A ≤ B into B∞ ≤ A∞."""
    o = s.oriented()
    return Unfocused(dualize_struct(o.right), dualize_struct(o.left))


# ---------------------------------------------------------------------------
# printing

_PRETTY_OP = {SProd: "•", SRSubStr: "⟜", SLSubStr: "⟞", SPar: "∘", SUnder: "↼", SOver: "⇀"}
_ASCII_OP = {SProd: ".", SRSubStr: "</", SLSubStr: "/>", SPar: "o", SUnder: "<-", SOver: "->"}


def pretty_struct(s, top: bool = True) -> str:
    if isinstance(s, LEAVES):
        f = pretty_formula(s.formula, top=isinstance(s.formula, fm.Atom))
        return f"{f}^{s.label}"
    if isinstance(s, (MetaS, MetaC)):
        return s.name
    if isinstance(s, UNARY):
        return f"{_KEYUN[type(s)]}{{{pretty_struct(s.arg)}}}"
    body = f"{pretty_struct(s.left, False)} {_PRETTY_OP[type(s)]} {pretty_struct(s.right, False)}"
    return body if top else f"({body})"


def ascii_struct(s, top: bool = True, with_labels: bool = True) -> str:
    if isinstance(s, LEAVES):
        f = print_formula(s.formula)
        if not isinstance(s.formula, fm.Atom) and (not top or with_labels):
            f = f"({f})"
        return f"{f}^{s.label}" if with_labels else f
    if isinstance(s, (MetaS, MetaC)):
        return s.name
    if isinstance(s, UNARY):
        return f"{_KEYUN[type(s)]}{{{ascii_struct(s.arg, True, with_labels)}}}"
    body = (f"{ascii_struct(s.left, False, with_labels)} {_ASCII_OP[type(s)]} "
            f"{ascii_struct(s.right, False, with_labels)}")
    return body if top else f"({body})"


def pretty_sequent(s) -> str:
    if isinstance(s, Unfocused):
        return f"{pretty_struct(s.left)} ⊢ {pretty_struct(s.right)}"
    if isinstance(s, FocusedConclusion):
        return f"{pretty_struct(s.ante)} ⊢ [{pretty_formula(s.focus)}]"
    return f"{pretty_struct(s.cons)} ⊢ [{pretty_formula(s.focus)}]"


def print_sequent(s: Unfocused, with_labels: bool = True) -> str:
    return f"{ascii_struct(s.left, True, with_labels)} |- {ascii_struct(s.right, True, with_labels)}"


# ---------------------------------------------------------------------------
# parsing

class SequentSyntaxError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_STOK = re.compile(
    r"\s*(?:(\|-|\./|\.\\|/>|</|->|<-|LN\{|RN\{|LC\{|RC\{|[.*+/\\(){}^])|([A-Za-z_α-ωΑ-Ω][A-Za-z0-9_'α-ωΑ-Ω]*))")
_STRUCT_BIN = {".": "S", "</": "S", "/>": "S", "o": "C", "->": "C", "<-": "C"}
_STRUCT_UN = {"LN{": "C", "RN{": "C", "LC{": "S", "RC{": "S"}
_BIN_ARGS = {".": ("S", "S"), "</": ("S", "C"), "/>": ("C", "S"),
             "o": ("C", "C"), "->": ("S", "C"), "<-": ("C", "S")}
_UN_ARG = {"LN{": "S", "RN{": "S", "LC{": "C", "RC{": "C"}
_BIN_CTOR = {".": SProd, "</": SRSubStr, "/>": SLSubStr, "o": SPar, "->": SOver, "<-": SUnder}
_UN_CTOR = {"LN{": SLNeg, "RN{": SRNeg, "LC{": SLCoNeg, "RC{": SRCoNeg}

_IN_NAMES = ["x", "y", "z", "w", "u", "v"]
_OUT_NAMES = ["ν", "κ", "ε", "δ", "γ"]


class _SequentParser:
    def __init__(self, text):
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _STOK.match(text, pos)
            if not m:
                raise SequentSyntaxError(f"unexpected character {text[pos]!r}", pos)
            if m.group(1):
                self.toks.append(("op", m.group(1), m.start(1)))
            else:
                word = m.group(2)
                self.toks.append(("op" if word == "o" else "id", word, m.start(2)))
            pos = m.end()
        self.toks.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, v):
        kind, val, pos = self.take()
        if val != v:
            raise SequentSyntaxError(f"expected {v!r}, found {val or 'end of input'!r}", pos)

    def sequent(self):
        left = self.expr()
        self.expect("|-")
        right = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise SequentSyntaxError(f"trailing input {v!r}", pos)
        return left, right

    def expr(self):
        """Structural operators bind looser than formula connectives."""
        left = self.fexpr()
        kind, v, pos = self.peek()
        if kind == "op" and v in _BIN_ARGS:
            self.take()
            right = self.fexpr()
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 in _BIN_ARGS:
                raise SequentSyntaxError("operators are non-associative; add parentheses", p2)
            return ("bin", v, left, right, pos)
        return left

    def fexpr(self):
        start = self.peek()[2]
        left = self.primary()
        kind, v, pos = self.peek()
        if kind == "op" and v in fm.BINARY_OPS:
            self.take()
            right = self.primary()
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 in fm.BINARY_OPS:
                raise SequentSyntaxError("operators are non-associative; add parentheses", p2)
            left = ("bin", v, left, right, pos)
        return self.labelled(left, start)

    def primary(self):
        kind, v, pos = self.take()
        if v == "(":
            node = self.expr()
            self.expect(")")
        elif v in _UN_ARG:
            inner = self.expr()
            self.expect("}")
            node = ("sun", v, inner, pos)
        elif kind == "id":
            if v in fm.UNARY_OPS and self.peek()[1] == "(":
                self.take()
                inner = self.expr()
                self.expect(")")
                node = ("fun", v, inner, pos)
            else:
                node = ("atom", v, pos)
        else:
            raise SequentSyntaxError(f"unexpected {v or 'end of input'!r}", pos)
        return node

    def labelled(self, node, pos):
        if self.peek()[1] == "^":
            self.take()
            kind, lab, p = self.take()
            if kind != "id":
                raise SequentSyntaxError("expected a label after '^'", p)
            node = ("label", node, lab, pos)
        return node


def _is_formula(node) -> bool:
    tag = node[0]
    if tag == "atom":
        return True
    if tag == "fun":
        return _is_formula(node[2])
    if tag == "bin":
        return node[1] in fm.BINARY_OPS and _is_formula(node[2]) and _is_formula(node[3])
    return False


def _to_formula(node) -> Formula:
    tag = node[0]
    if tag == "atom":
        return fm.Atom(node[1])
    if tag == "fun":
        return fm.UNARY_OPS[node[1]](_to_formula(node[2]))
    return fm.BINARY_OPS[node[1]](_to_formula(node[2]), _to_formula(node[3]))


def _sort_of(node):
    if node[0] == "label":
        return None
    if node[0] == "bin" and node[1] in _BIN_ARGS:
        return _STRUCT_BIN[node[1]]
    if node[0] == "sun":
        return _STRUCT_UN[node[1]]
    return None


class _Labeler:
    def __init__(self, taken):
        self.taken = set(taken)
        self.nin = 0
        self.nout = 0

    def next(self, is_input):
        while True:
            if is_input:
                pool, n = _IN_NAMES, self.nin
                self.nin += 1
            else:
                pool, n = _OUT_NAMES, self.nout
                self.nout += 1
            name = pool[n % len(pool)] + ("" if n < len(pool) else str(n // len(pool)))
            if name not in self.taken:
                self.taken.add(name)
                return name


def _collect_labels(node, acc):
    if node[0] == "label":
        acc.append(node[2])
    for part in node[1:]:
        if isinstance(part, tuple):
            _collect_labels(part, acc)
    return acc


def _build(node, sort, labeler):
    label = None
    if node[0] == "label":
        label, node = node[2], node[1]
    if _is_formula(node):
        f = _to_formula(node)
        lab = label or labeler.next(sort == "S")
        return InLeaf(f, lab) if sort == "S" else OutLeaf(f, lab)
    if label is not None:
        raise SequentSyntaxError("labels attach to formulas only", node[-1])
    want = _sort_of(node)
    if want is None:
        raise SequentSyntaxError("cannot mix formula and structural operators", node[-1])
    if want != sort:
        kind = "antecedent" if sort == "S" else "consequent"
        raise SequentSyntaxError(f"operator {node[1]!r} cannot occur in {kind} position", node[-1])
    if node[0] == "bin":
        ls, rs = _BIN_ARGS[node[1]]
        return _BIN_CTOR[node[1]](_build(node[2], ls, labeler), _build(node[3], rs, labeler))
    return _UN_CTOR[node[1]](_build(node[2], _UN_ARG[node[1]], labeler))


def parse_sequent(text: str) -> Unfocused:
    """Parse ``Γ |- Π``.  Leaves may carry ``^label``; missing labels are generated."""
    p = _SequentParser(text)
    left, right = p.sequent()
    ls, rs = _sort_of(left), _sort_of(right)
    if ls is None:
        ls = "C" if rs == "S" else "S"
    if rs is None:
        rs = "C" if ls == "S" else "S"
    if ls == rs:
        raise SequentSyntaxError("both sides have the same sort", 0)
    taken = _collect_labels(left, []) + _collect_labels(right, [])
    if len(taken) != len(set(taken)):
        raise SequentSyntaxError("duplicate labels", 0)
    labeler = _Labeler(taken)
    if ls == "S":
        a = _build(left, "S", labeler)
        c = _build(right, "C", labeler)
        return Unfocused(a, c)
    # Π ⊢ Γ presentation: label the structure side first so inputs get x, y, ...
    c_node, a_node = left, right
    a = _build(a_node, "S", labeler)
    c = _build(c_node, "C", labeler)
    return Unfocused(c, a)


S = parse_sequent
