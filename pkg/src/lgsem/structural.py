"""Optional structural rule packages: linear distributivity and half De Morgan.

Rules are schematic sequents over metavariables (``MetaS`` for structures,
``MetaC`` for costructures).  They are used backwards: a goal whose display
class contains an instance of a rule's conclusion may be replaced by the
corresponding premise.  The LP term is unchanged by every structural step.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import formula as fm
from .calculus import RuleApplication
from .sequent import (
    BINARY, UNARY, CoStructure, InLeaf, MetaC, MetaS, OutLeaf, Structure, Unfocused,
    _display_class, dualize, parse_sequent, skey,
)


@dataclass(frozen=True)
class StructuralRule:
    name: str
    premise: Unfocused
    conclusion: Unfocused

    def __str__(self):
        from .sequent import ascii_struct
        p, c = self.premise, self.conclusion
        return (f"{self.name}: {ascii_struct(p.left)} |- {ascii_struct(p.right)}"
                f"  ==>  {ascii_struct(c.left)} |- {ascii_struct(c.right)}")


def _metafy(s):
    if isinstance(s, InLeaf):
        return MetaS(s.formula.name)
    if isinstance(s, OutLeaf):
        return MetaC(s.formula.name)
    if isinstance(s, BINARY):
        return type(s)(_metafy(s.left), _metafy(s.right))
    return type(s)(_metafy(s.arg))


def pattern(text: str) -> Unfocused:
    """Schematic sequent; every leaf is read as a metavariable named by its atom."""
    s = parse_sequent(text).oriented()
    return Unfocused(_metafy(s.left), _metafy(s.right))


def rule(name: str, premise: str, conclusion: str) -> StructuralRule:
    return StructuralRule(name, pattern(premise), pattern(conclusion))


# G, D: antecedent structures; P, S: consequent costructures
DIST_RULES = (
    rule("(⦸,/)", "P /> G |- D -> S", "G . D |- S o P"),
    rule("(⊘,\\)", "D </ S |- P <- G", "G . D |- S o P"),
    rule("(⦸,\\)", "P /> D |- S <- G", "G . D |- S o P"),
    rule("(⊘,/)", "G </ S |- D -> P", "G . D |- S o P"),
)

HALFDM_RULES = (
    rule("(⊘,⁰·)", "G . D |- P", "G </ P |- LN{D}"),
    rule("(⦸,·⁰)", "G . D |- P", "P /> D |- RN{G}"),
    rule("(⊘,·⁰)", "G . D |- P", "D </ P |- RN{G}"),
    rule("(⦸,⁰·)", "G . D |- P", "P /> G |- LN{D}"),
)

# Probes for non-derivability experiments only; never part of a package.
PROBE_RULES = {
    "assoc": (
        rule("ass•1", "G . (D . T) |- P", "(G . D) . T |- P"),
        rule("ass•2", "(G . D) . T |- P", "G . (D . T) |- P"),
    ),
    "comm": (
        rule("comm•", "D . G |- P", "G . D |- P"),
    ),
}


def _rename_metas(s, mapping):
    if isinstance(s, MetaS):
        return MetaS(mapping.setdefault(("S", s.name), f"S{len(mapping)}"))
    if isinstance(s, MetaC):
        return MetaC(mapping.setdefault(("C", s.name), f"C{len(mapping)}"))
    if isinstance(s, BINARY):
        l = _rename_metas(s.left, mapping)
        return type(s)(l, _rename_metas(s.right, mapping))
    return type(s)(_rename_metas(s.arg, mapping))


def _rule_signature(r: StructuralRule) -> str:
    m = {}
    c = r.conclusion
    cl, cr = _rename_metas(c.left, m), _rename_metas(c.right, m)
    p = r.premise
    pl, pr = _rename_metas(p.left, m), _rename_metas(p.right, m)
    return f"{skey(cl)}|-{skey(cr)} <= {skey(pl)}|-{skey(pr)}"


def dual_rule(r: StructuralRule) -> StructuralRule:
    return StructuralRule(r.name + "∞", dualize(r.premise), dualize(r.conclusion))


def dual_closure(rules) -> tuple:
    """The given rules plus their dual images, without duplicates."""
    out, seen = [], set()
    for r in list(rules) + [dual_rule(r) for r in rules]:
        sig = _rule_signature(r)
        if sig not in seen:
            seen.add(sig)
            out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class RulePackage:
    dist: bool = False
    halfdm: bool = False
    probes: tuple = ()

    @staticmethod
    def parse(text: Optional[str]) -> "RulePackage":
        flags = {t.strip() for t in (text or "").split(",") if t.strip()} - {"none", "empty", "∅"}
        unknown = flags - {"dist", "halfdm"}
        if unknown:
            raise ValueError(f"unknown rule package(s): {', '.join(sorted(unknown))}")
        return RulePackage(dist="dist" in flags, halfdm="halfdm" in flags)

    @property
    def rules(self) -> tuple:
        return _package_rules(self)

    def __str__(self):
        names = [n for n, on in (("dist", self.dist), ("halfdm", self.halfdm)) if on]
        names += list(self.probes)
        return ",".join(names) or "∅"


EMPTY = RulePackage()
DIST = RulePackage(dist=True)
DIST_HALFDM = RulePackage(dist=True, halfdm=True)


@lru_cache(maxsize=None)
def _package_rules(pkg: RulePackage) -> tuple:
    rules = []
    if pkg.dist:
        rules += DIST_RULES
    if pkg.halfdm:
        rules += HALFDM_RULES
    rules = list(dual_closure(rules))
    for name in pkg.probes:
        rules += PROBE_RULES[name]
    return tuple(rules)


# ---------------------------------------------------------------------------
# matching

def match(pat, s, binding: dict) -> bool:
    if isinstance(pat, MetaS):
        if not isinstance(s, Structure):
            return False
        prev = binding.get(("S", pat.name))
        if prev is None:
            binding[("S", pat.name)] = s
            return True
        return prev == s
    if isinstance(pat, MetaC):
        if not isinstance(s, CoStructure):
            return False
        prev = binding.get(("C", pat.name))
        if prev is None:
            binding[("C", pat.name)] = s
            return True
        return prev == s
    if type(pat) is not type(s):
        return False
    if isinstance(pat, BINARY):
        return match(pat.left, s.left, binding) and match(pat.right, s.right, binding)
    if isinstance(pat, UNARY):
        return match(pat.arg, s.arg, binding)
    return pat == s


def instantiate(pat, binding: dict):
    if isinstance(pat, MetaS):
        return binding[("S", pat.name)]
    if isinstance(pat, MetaC):
        return binding[("C", pat.name)]
    if isinstance(pat, BINARY):
        return type(pat)(instantiate(pat.left, binding), instantiate(pat.right, binding))
    if isinstance(pat, UNARY):
        return type(pat)(instantiate(pat.arg, binding))
    return pat


def apply_rule(r: StructuralRule, member: Unfocused) -> Optional[Unfocused]:
    """Premise of ``r`` if the oriented sequent ``member`` is an instance of its conclusion."""
    b = {}
    if match(r.conclusion.left, member.left, b) and match(r.conclusion.right, member.right, b):
        return Unfocused(instantiate(r.premise.left, b), instantiate(r.premise.right, b))
    return None


def structural_steps(s: Unfocused, pkg: RulePackage):
    """(rule, displayed conclusion, premise) for every member of the display class of s."""
    rules = pkg.rules
    if not rules:
        return
    for member in _display_class(s.oriented()):
        for r in rules:
            prem = apply_rule(r, member)
            if prem is not None:
                yield r, member, prem


def structural_expansions(s: Unfocused, pkg: RulePackage) -> list:
    return [RuleApplication(r.name, concl, [prem], lambda m: m)
            for r, concl, prem in structural_steps(s, pkg)]


def distributivity_instances() -> list:
    """The four mixed ⊗/⊕ inequalities over distinct atoms, as (lhs, rhs) formula pairs."""
    F = fm.parse_formula
    return [
        (F("(a + b) * c"), F("a + (b * c)")),
        (F("a * (b + c)"), F("(a * b) + c")),
        (F("(a + b) * c"), F("(a * c) + b")),
        (F("a * (b + c)"), F("b + (a * c)")),
    ]


def distributivity_instance_checks(limits=None) -> dict:
    """Derivability of each distributivity instance under {dist} and under ∅."""
    from .search import derivable, formula_goal
    report = {}
    for lhs, rhs in distributivity_instances():
        goal = formula_goal(lhs, rhs)
        key = f"{fm.print_formula(lhs)} |- {fm.print_formula(rhs)}"
        report[key] = {
            "dist": derivable(goal, DIST, limits).status,
            "empty": derivable(goal, EMPTY, limits).status,
        }
    return report
