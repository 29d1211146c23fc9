import json

import pytest

from conftest import COLLAPSE_PROBES, OBJECT_RELATIVE, SUBJECT_RELATIVE, TRANSITIVE
from lgsem.lp import alpha_eq, parse_term, typecheck
from lgsem.search import (
    DepthExceeded, Prover, SearchLimits, Status, derivable, formula_goal, prove, prove_all,
)
from lgsem.sequent import context, parse_sequent, stoup_type
from lgsem.structural import DIST_HALFDM, EMPTY


def test_transitive_clause_term():
    d = prove(parse_sequent(TRANSITIVE))
    assert alpha_eq(d.term, parse_term("(y <z, <lam u. (ν u), x>>)"))


def test_identity_term():
    d = prove(parse_sequent("p^x |- p^ε"))
    assert alpha_eq(d.term, parse_term("(ε x)"))
    assert [n.rule for n in d.nodes()] == ["D∘", "Ax"]


def test_subject_relative_term():
    d = prove(parse_sequent(SUBJECT_RELATIVE))
    expected = "(w <lam <k, b>. (f <i, <lam z. (k z), b>>), <lam y. (ν y), m>>)"
    assert alpha_eq(d.term, parse_term(expected))


def test_object_relative_needs_interaction_rules():
    goal = parse_sequent(OBJECT_RELATIVE)
    assert derivable(goal, EMPTY).status is Status.NO
    d = prove(goal, DIST_HALFDM)
    expected = "(t <lam <e, k>. (r <e, <lam z. (k z), b>>), <lam y. (ν y), l>>)"
    assert alpha_eq(d.term, parse_term(expected))


def test_commutativity_fails():
    assert derivable(parse_sequent("a . b |- b * a"), DIST_HALFDM).status is Status.NO


@pytest.mark.parametrize("lhs, rhs", COLLAPSE_PROBES[:2])
def test_rebracketing_probe_fails(lhs, rhs):
    assert derivable(formula_goal(lhs, rhs), DIST_HALFDM).status is Status.NO


def test_distinct_atoms():
    assert derivable(parse_sequent("p |- q")).status is Status.NO
    assert prove(parse_sequent("p |- q")) is None


def test_transitive_clause_has_one_derivation():
    assert len(prove_all(parse_sequent(TRANSITIVE))) == 1


def test_identity_has_one_derivation():
    assert len(prove_all(parse_sequent("p |- p"))) == 1


def test_underivable_goal_has_no_derivations():
    assert prove_all(parse_sequent("p |- q")) == []


def test_derivation_count_is_capped():
    goal = parse_sequent("a * (b * c) |- a * (b * c)")
    assert 1 <= len(prove_all(goal, limits=SearchLimits(max_derivations=1))) <= 1


def test_depth_limit_gives_unknown():
    goal = parse_sequent(SUBJECT_RELATIVE)
    v = derivable(goal, EMPTY, SearchLimits(max_depth=1))
    assert v.status is Status.UNKNOWN
    with pytest.raises(DepthExceeded):
        prove(goal, EMPTY, SearchLimits(max_depth=1))


def test_invalid_limits():
    with pytest.raises(ValueError):
        SearchLimits(max_depth=0)


def test_every_node_typechecks(corpus_derivations):
    for _, d in corpus_derivations:
        for node in d.nodes():
            assert typecheck(context(node.sequent), node.term) == stoup_type(node.sequent)


def test_json_round_trip():
    d = prove(parse_sequent(TRANSITIVE))
    data = json.loads(d.to_json())
    assert set(data) == {"rule", "sequent", "term", "children"}
    assert data["term"] == "(y ⟨z,⟨λu(ν u),x⟩⟩)"


def test_prover_memo_is_reused():
    p = Prover()
    p.status(parse_sequent(TRANSITIVE))
    size = len(p.memo)
    p.status(parse_sequent(TRANSITIVE))
    assert len(p.memo) == size > 0
