"""Lambek-Grishin formulas: syntax, duality, polarity and the LP type translation.

Binary constructors keep their operands in textual order: ``Over(A, B)`` is
``A/B``, ``Under(B, A)`` is ``B\\A``, ``RSub(A, B)`` is ``A⊘B`` and
``LSub(B, A)`` is ``B⦸A``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class Formula:
    __slots__ = ()

    def __str__(self):
        return pretty_formula(self)


class _Hashed:
    """Frozen dataclass mixin that caches its hash (trees are used as dict keys a lot)."""

    __slots__ = ()

    def __hash__(self):
        try:
            return self._h
        except AttributeError:
            h = hash((type(self).__name__,) + tuple(getattr(self, f) for f in self.__dataclass_fields__))
            object.__setattr__(self, "_h", h)
            return h


@dataclass(frozen=True, eq=True)
class Atom(_Hashed, Formula):
    name: str
    __hash__ = _Hashed.__hash__


@dataclass(frozen=True, eq=True)
class Binary(_Hashed, Formula):
    left: Formula
    right: Formula
    __hash__ = _Hashed.__hash__


@dataclass(frozen=True, eq=True)
class Unary(_Hashed, Formula):
    arg: Formula
    __hash__ = _Hashed.__hash__


class Tensor(Binary):
    """A⊗B"""
    __hash__ = _Hashed.__hash__


class Par(Binary):
    """A⊕B"""
    __hash__ = _Hashed.__hash__


class Over(Binary):
    """A/B, stored as Over(A, B)."""
    __hash__ = _Hashed.__hash__


class Under(Binary):
    """B\\A, stored as Under(B, A)."""
    __hash__ = _Hashed.__hash__


class RSub(Binary):
    """A⊘B, stored as RSub(A, B)."""
    __hash__ = _Hashed.__hash__


class LSub(Binary):
    """B⦸A, stored as LSub(B, A)."""
    __hash__ = _Hashed.__hash__


class LNeg(Unary):
    """⁰A"""
    __hash__ = _Hashed.__hash__


class RNeg(Unary):
    """A⁰"""
    __hash__ = _Hashed.__hash__


class LCoNeg(Unary):
    """¹A"""
    __hash__ = _Hashed.__hash__


class RCoNeg(Unary):
    """A¹"""
    __hash__ = _Hashed.__hash__


# ---------------------------------------------------------------------------
# polarity

class Polarity(Enum):
    POS = "+"
    NEG = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEG if self is Polarity.POS else Polarity.POS


_POSITIVE = (Atom, Tensor, RSub, LSub, LCoNeg, RCoNeg)


def polarity(a: Formula) -> Polarity:
    # atoms carry positive bias
    return Polarity.POS if isinstance(a, _POSITIVE) else Polarity.NEG


def is_positive(a: Formula) -> bool:
    return isinstance(a, _POSITIVE)


# ---------------------------------------------------------------------------
# duality

_DUAL_BINARY = {Tensor: Par, Par: Tensor, Over: LSub, LSub: Over, Under: RSub, RSub: Under}
_DUAL_UNARY = {LNeg: RCoNeg, RCoNeg: LNeg, RNeg: LCoNeg, LCoNeg: RNeg}


def dual(a: Formula) -> Formula:
    """The order-reversing involution: binary operands swap, families trade places."""
    if isinstance(a, Atom):
        return a
    if isinstance(a, Binary):
        return _DUAL_BINARY[type(a)](dual(a.right), dual(a.left))
    return _DUAL_UNARY[type(a)](dual(a.arg))


def size(a: Formula) -> int:
    """Number of connectives."""
    if isinstance(a, Atom):
        return 0
    if isinstance(a, Binary):
        return 1 + size(a.left) + size(a.right)
    return 1 + size(a.arg)


def atoms(a: Formula) -> set[str]:
    if isinstance(a, Atom):
        return {a.name}
    if isinstance(a, Binary):
        return atoms(a.left) | atoms(a.right)
    return atoms(a.arg)


# ---------------------------------------------------------------------------
# LP types

class LinType:
    __slots__ = ()

    def __str__(self):
        return pretty_type(self)


@dataclass(frozen=True)
class TAtom(LinType):
    name: str


@dataclass(frozen=True)
class TBottom(LinType):
    pass


@dataclass(frozen=True)
class TProd(LinType):
    left: LinType
    right: LinType


@dataclass(frozen=True)
class TNeg(LinType):
    """¬τ, i.e. τ ⊸ ⊥ kept as its own constructor."""
    arg: LinType


BOTTOM = TBottom()


def pretty_type(t: LinType) -> str:
    if isinstance(t, TAtom):
        return t.name
    if isinstance(t, TBottom):
        return "⊥"
    if isinstance(t, TNeg):
        inner = pretty_type(t.arg)
        return "¬" + (f"({inner})" if isinstance(t.arg, TProd) else inner)
    return f"{_type_operand(t.left)} * {_type_operand(t.right)}"


def _type_operand(t):
    s = pretty_type(t)
    return f"({s})" if isinstance(t, TProd) else s


def neg_count(t: LinType) -> int:
    if isinstance(t, TNeg):
        return 1 + neg_count(t.arg)
    if isinstance(t, TProd):
        return neg_count(t.left) + neg_count(t.right)
    return 0


def type_size(t: LinType) -> int:
    if isinstance(t, TNeg):
        return 1 + type_size(t.arg)
    if isinstance(t, TProd):
        return 1 + type_size(t.left) + type_size(t.right)
    return 1


def input_type(a: Formula) -> LinType:
    """Type of a hypothesis occurrence: ⟦A⟧ if A is positive, ¬⟦A⟧ otherwise."""
    t = translate(a)
    return t if is_positive(a) else TNeg(t)


def output_type(a: Formula) -> LinType:
    """Type of a conclusion occurrence: ⟦A⟧ if A is negative, ¬⟦A⟧ otherwise."""
    t = translate(a)
    return TNeg(t) if is_positive(a) else t


def translate(a: Formula) -> LinType:
    """⟦A⟧ with product components in the order the α/β rules bind them."""
    i, o = input_type, output_type
    if isinstance(a, Atom):
        return TAtom(a.name)
    if isinstance(a, Tensor):
        return TProd(i(a.left), i(a.right))
    if isinstance(a, Par):
        return TProd(o(a.right), o(a.left))
    if isinstance(a, Over):
        return TProd(i(a.right), o(a.left))
    if isinstance(a, Under):
        return TProd(o(a.right), i(a.left))
    if isinstance(a, RSub):
        return TProd(i(a.left), o(a.right))
    if isinstance(a, LSub):
        return TProd(o(a.left), i(a.right))
    if isinstance(a, (LNeg, RNeg)):
        return i(a.arg)
    return o(a.arg)


# ---------------------------------------------------------------------------
# surface syntax

_ASCII_BIN = {Tensor: "*", Par: "+", Over: "/", Under: "\\", RSub: "./", LSub: ".\\"}
_ASCII_UN = {LNeg: "ln", RNeg: "rn", LCoNeg: "lc", RCoNeg: "rc"}
BINARY_OPS = {v: k for k, v in _ASCII_BIN.items()}
UNARY_OPS = {v: k for k, v in _ASCII_UN.items()}

_PRETTY_BIN = {Tensor: "⊗", Par: "⊕", Over: "/", Under: "\\", RSub: "⊘", LSub: "⦸"}


def print_formula(a: Formula, top: bool = True) -> str:
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, Unary):
        return f"{_ASCII_UN[type(a)]}({print_formula(a.arg)})"
    op = _ASCII_BIN[type(a)]
    spaced = op not in ("/", "\\")
    body = (f"{print_formula(a.left, False)} {op} {print_formula(a.right, False)}" if spaced
            else f"{print_formula(a.left, False)}{op}{print_formula(a.right, False)}")
    return body if top else f"({body})"


def pretty_formula(a: Formula, top: bool = True) -> str:
    if isinstance(a, Atom):
        return a.name
    if isinstance(a, LNeg):
        return "⁰" + pretty_formula(a.arg, False)
    if isinstance(a, RNeg):
        return pretty_formula(a.arg, False) + "⁰"
    if isinstance(a, LCoNeg):
        return "¹" + pretty_formula(a.arg, False)
    if isinstance(a, RCoNeg):
        return pretty_formula(a.arg, False) + "¹"
    body = f"{pretty_formula(a.left, False)}{_PRETTY_BIN[type(a)]}{pretty_formula(a.right, False)}"
    return body if top else f"({body})"


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\./|\.\\|[*+/\\()])|([a-z][A-Za-z0-9_']*))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Tokens as (kind, value, position); kind is 'op', 'id' or 'end'."""
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1):
            out.append(("op", m.group(1), m.start(1)))
        else:
            out.append(("id", m.group(2), m.start(2)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _FormulaParser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.take()
        if v != value:
            raise FormulaSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def formula(self) -> Formula:
        left = self.primary()
        kind, v, pos = self.peek()
        if kind == "op" and v in BINARY_OPS:
            self.take()
            right = self.primary()
            kind2, v2, pos2 = self.peek()
            if kind2 == "op" and v2 in BINARY_OPS:
                raise FormulaSyntaxError("operators are non-associative; add parentheses", pos2)
            return BINARY_OPS[v](left, right)
        return left

    def primary(self) -> Formula:
        kind, v, pos = self.take()
        if v == "(":
            f = self.formula()
            self.expect(")")
            return f
        if kind == "id":
            if v in UNARY_OPS and self.peek()[1] == "(":
                self.take()
                f = self.formula()
                self.expect(")")
                return UNARY_OPS[v](f)
            return Atom(v)
        raise FormulaSyntaxError(f"unexpected {v or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    p = _FormulaParser(text)
    f = p.formula()
    kind, v, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError(f"trailing input {v!r}", pos)
    return f


def F(text: str) -> Formula:
    """Shorthand used throughout the tests and the grammar loader."""
    return parse_formula(text)
