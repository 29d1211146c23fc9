"""Focused backward proof search with term extraction.

Search runs in two passes.  ``Prover.status`` decides derivability
(YES / NO / UNKNOWN) with a memo keyed on label-free canonical display
representatives.  ``Prover.derivations`` then rebuilds concrete derivations,
descending only into subgoals already known to be derivable.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import formula as fm
from .calculus import (
    Fresh, alpha_saturate, alpha_term, decide_leaf, focused_step, is_focusable,
)
from .lp import LinTerm, alpha_key, pretty_term
from .sequent import (
    InLeaf, OutLeaf, Unfocused, canonical_key, displayed_leaves, labels, leaves, pretty_sequent,
)
from .structural import EMPTY, RulePackage, structural_steps


class Status(Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"

    def __str__(self):
        return self.value


class SearchLimitExceeded(Exception):
    pass


class DepthExceeded(SearchLimitExceeded):
    pass


@dataclass(frozen=True)
class SearchLimits:
    max_depth: int = 64
    max_derivations: int = 16
    closure_cap: int = 20_000

    def __post_init__(self):
        if min(self.max_depth, self.max_derivations, self.closure_cap) <= 0:
            raise ValueError("search limits must be positive")


DEFAULT_LIMITS = SearchLimits()


@dataclass
class Derivation:
    rule: str
    sequent: object
    term: LinTerm
    children: list = field(default_factory=list)

    def nodes(self):
        yield self
        for c in self.children:
            yield from c.nodes()

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def rules_used(self) -> set:
        return {n.rule for n in self.nodes()}

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "sequent": pretty_sequent(self.sequent),
            "term": pretty_term(self.term),
            "children": [c.to_dict() for c in self.children],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kw)

    def pretty(self, indent: str = "") -> str:
        """Tree listing with the root at the top."""
        lines = [f"{indent}{pretty_sequent(self.sequent)}  [{self.rule}]  {pretty_term(self.term)}"]
        for c in self.children:
            lines.append(c.pretty(indent + "  "))
        return "\n".join(lines)


@dataclass
class Verdict:
    status: Status
    derivation: Optional[Derivation] = None

    def __bool__(self):
        return self.status is Status.YES


def formula_goal(lhs, rhs, x: str = "x", e: str = "ν") -> Unfocused:
    """A^x ⊢ B^ν"""
    if isinstance(lhs, str):
        lhs = fm.parse_formula(lhs)
    if isinstance(rhs, str):
        rhs = fm.parse_formula(rhs)
    return Unfocused(InLeaf(lhs, x), OutLeaf(rhs, e))


def _and(statuses) -> Status:
    out = Status.YES
    for st in statuses:
        if st is Status.NO:
            return Status.NO
        if st is Status.UNKNOWN:
            out = Status.UNKNOWN
    return out


# ---------------------------------------------------------------------------
# focused phase

@dataclass
class _Plan:
    """A focused-phase tree: rule applications whose leaves are unfocused subgoals."""
    app: object            # RuleApplication
    children: list         # _Plan or Unfocused

    def subgoals(self) -> list:
        out = []
        for c in self.children:
            if isinstance(c, _Plan):
                out.extend(c.subgoals())
            else:
                out.append(c)
        return out


def focus_plan(s, fresh: Fresh) -> Optional[_Plan]:
    """Run the deterministic focused phase from a focused sequent; None if it gets stuck."""
    app = focused_step(s, fresh)
    if app is None:
        return None
    kids = []
    for p in app.premises:
        if isinstance(p, Unfocused):
            kids.append(p)
        else:
            sub = focus_plan(p, fresh)
            if sub is None:
                return None
            kids.append(sub)
    return _Plan(app, kids)


# ---------------------------------------------------------------------------
# the prover

class Prover:
    """Search engine for one rule package and one set of limits.

    The derivability memo persists across goals, so reusing one prover over a
    battery of related goals is much faster than calling the module functions.
    """

    def __init__(self, pkg: RulePackage = EMPTY, limits: SearchLimits = DEFAULT_LIMITS):
        self.pkg = pkg
        self.limits = limits
        self.memo: dict[str, Status] = {}
        self.hit_depth = False
        self.hit_cap = False

    # -- pass 1: derivability -------------------------------------------------

    def _closure(self, s: Unfocused, with_labels: bool):
        """BFS over display classes reachable by backward structural steps.

        Returns (classes, capped) where classes maps canonical key to
        (representative, parent key, rule, displayed conclusion).
        """
        k0 = canonical_key(s, with_labels)
        classes = {k0: (s, None, None, None)}
        if not self.pkg.rules:
            return classes, False
        queue = deque([s])
        while queue:
            cur = queue.popleft()
            ck = canonical_key(cur, with_labels)
            for r, concl, prem in structural_steps(cur, self.pkg):
                k = canonical_key(prem, with_labels)
                if k in classes:
                    continue
                if len(classes) >= self.limits.closure_cap:
                    return classes, True
                classes[k] = (prem, ck, r, concl)
                queue.append(prem)
        return classes, False

    def _options(self, member: Unfocused, fresh: Fresh):
        """(decision application, focused plan) for every focusable leaf of member."""
        shown = displayed_leaves(member)
        for leaf in leaves(member):
            if not is_focusable(leaf):
                continue
            d = decide_leaf(shown[leaf.label], leaf)
            plan = focus_plan(d.premises[0], fresh)
            if plan is not None:
                yield d, plan

    def status(self, s: Unfocused, depth: int = 0) -> Status:
        fresh = Fresh(labels(s))
        s, _ = alpha_saturate(s, fresh)
        return self._status(s, depth, fresh)

    def _status(self, s: Unfocused, depth: int, fresh: Fresh) -> Status:
        key = canonical_key(s, False)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if depth > self.limits.max_depth:
            self.hit_depth = True
            return Status.UNKNOWN
        classes, capped = self._closure(s, False)
        if capped:
            self.hit_cap = True
        result = Status.UNKNOWN if capped else Status.NO
        for rep, *_ in classes.values():
            for _d, plan in self._options(rep, fresh):
                st = _and(self._substatus(g, depth + 1, fresh) for g in plan.subgoals())
                if st is Status.YES:
                    self.memo[key] = Status.YES
                    return Status.YES
                if st is Status.UNKNOWN:
                    result = Status.UNKNOWN
        if result is Status.NO:
            # everything backward-reachable from an underivable goal is underivable too
            for k in classes:
                self.memo[k] = Status.NO
        elif not self.hit_depth:
            self.memo[key] = result
        return result

    def _substatus(self, g: Unfocused, depth: int, fresh: Fresh) -> Status:
        g, _ = alpha_saturate(g, fresh)
        return self._status(g, depth, fresh)

    # -- pass 2: derivations --------------------------------------------------

    def derivations(self, goal: Unfocused, limit: Optional[int] = None) -> list:
        limit = limit or self.limits.max_derivations
        fresh = Fresh(labels(goal))
        return self._derive(goal, 0, fresh, limit)

    def _derive(self, s: Unfocused, depth: int, fresh: Fresh, limit: int) -> list:
        s, steps = alpha_saturate(s, fresh)
        if self._status(s, depth, Fresh(fresh.used)) is not Status.YES:
            return []
        classes, _ = self._closure(s, True)
        found: dict[str, Derivation] = {}
        for key, (rep, *_rest) in classes.items():
            for d, plan in self._options(rep, fresh):
                goals = plan.subgoals()
                if any(self._substatus_nosat(g, depth + 1, fresh) is not Status.YES for g in goals):
                    continue
                subs = [self._derive(g, depth + 1, fresh, limit) for g in goals]
                for combo in itertools.product(*subs):
                    it = iter(combo)
                    top = self._build_decision(rep, d, plan, it)
                    top = self._wrap_structural(classes, key, top)
                    top = _wrap_alpha(top, steps, s)
                    k = alpha_key(top.term)
                    if k not in found:
                        found[k] = top
                        if len(found) >= limit:
                            return list(found.values())
        return list(found.values())

    def _substatus_nosat(self, g: Unfocused, depth: int, fresh: Fresh) -> Status:
        scratch = Fresh(fresh.used)
        g2, _ = alpha_saturate(g, scratch)
        return self._status(g2, depth, scratch)

    def _build_decision(self, rep, d, plan, subderivs) -> Derivation:
        inner = _build_plan(plan, subderivs)
        node = Derivation(d.rule, d.conclusion, d.term(inner.term), [inner])
        if d.conclusion != rep:
            node = Derivation("dp", rep, node.term, [node])
        return node

    def _wrap_structural(self, classes, key, node: Derivation) -> Derivation:
        rep, parent, r, concl = classes[key]
        while parent is not None:
            node = Derivation(r.name, concl, node.term, [node])
            prep, pparent, pr, pconcl = classes[parent]
            if concl != prep:
                node = Derivation("dp", prep, node.term, [node])
            parent, r, concl = pparent, pr, pconcl
        return node


def _build_plan(plan: _Plan, subderivs) -> Derivation:
    kids = []
    for c in plan.children:
        kids.append(_build_plan(c, subderivs) if isinstance(c, _Plan) else next(subderivs))
    term = plan.app.term(*[k.term for k in kids])
    return Derivation(plan.app.rule, plan.app.conclusion, term, kids)


def _wrap_alpha(node: Derivation, steps, final) -> Derivation:
    for rule, concl, scrut, binders in reversed(steps):
        node = Derivation(rule, concl, alpha_term(scrut, binders, node.term), [node])
    return node


# ---------------------------------------------------------------------------
# module-level API

def _prover(pkg, limits, prover):
    if prover is not None:
        return prover
    return Prover(pkg or EMPTY, limits or DEFAULT_LIMITS)


def derivable(goal: Unfocused, pkg: Optional[RulePackage] = None, limits: Optional[SearchLimits] = None,
              prover: Optional[Prover] = None) -> Verdict:
    p = _prover(pkg, limits, prover)
    st = p.status(goal)
    if st is Status.YES:
        ds = p.derivations(goal, 1)
        return Verdict(Status.YES, ds[0] if ds else None)
    return Verdict(st)


def prove(goal: Unfocused, pkg: Optional[RulePackage] = None, limits: Optional[SearchLimits] = None,
          prover: Optional[Prover] = None) -> Optional[Derivation]:
    """One derivation of goal, or None when there is definitely none."""
    v = derivable(goal, pkg, limits, prover)
    if v.status is Status.UNKNOWN:
        raise DepthExceeded("search limits reached before the search space was exhausted")
    return v.derivation


def prove_all(goal: Unfocused, pkg: Optional[RulePackage] = None, limits: Optional[SearchLimits] = None,
              prover: Optional[Prover] = None) -> list:
    """Up to ``limits.max_derivations`` derivations with pairwise α-distinct terms."""
    p = _prover(pkg, limits, prover)
    return p.derivations(goal)
