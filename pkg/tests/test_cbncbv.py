import pytest

from lgsem.cbncbv import (
    OFFERED_TERMS, StoupEngine, TranslationMode, UnsupportedConnective, cbn_type, cbv_type, compare,
    lexical_type, lgq, lgq_rules, lgt, lgt_rules, mode_context,
)
from lgsem.formula import BOTTOM, F, pretty_type
from lgsem.lp import alpha_eq, parse_term, typecheck
from lgsem.semantics import delinearize_type, parse_simple_term, parse_simple_type, simple_typecheck
from lgsem.sequent import FocusedConclusion, FocusedHypothesis, InLeaf, OutLeaf, parse_sequent

DTV = F(r"((np\s)/np)/np")

# Linguistic categories on which the negation counts are compared.
BATTERY = [
    "np", "s", r"np\s", r"(np\s)/np", r"((np\s)/np)/np", "s/np", r"np\(s/np)", r"(n\n)/(np\s)",
    "np/n", r"s/(np\s)", r"(s/np)\s", r"((np\s)\(np\s))/np", r"(np\s)/s", "n/n", "n",
]


def test_cbn_atom():
    assert pretty_type(cbn_type(F("np"))) == "¬np"


def test_cbn_intransitive_verb():
    assert pretty_type(cbn_type(F(r"np\s"))) == "¬¬np * ¬s"


def test_cbv_intransitive_verb():
    assert pretty_type(cbv_type(F(r"np\s"))) == "¬(np * ¬s)"


def test_slash_and_backslash_share_a_translation():
    assert cbn_type(F("s/np")) == cbn_type(F(r"np\s"))
    assert cbv_type(F("s/np")) == cbv_type(F(r"np\s"))


def test_subtractions_share_a_translation():
    assert cbn_type(F("s ./ np")) == cbn_type(F(r"np .\ s"))
    assert pretty_type(cbv_type(F("s ./ np"))) == "¬np * s"


def test_negations_are_out_of_scope():
    with pytest.raises(UnsupportedConnective):
        cbn_type(F("ln(np)"))
    with pytest.raises(UnsupportedConnective):
        cbv_type(F("np * rc(s)"))


def test_ditransitive_comparison():
    c = compare(DTV)
    assert c.counts == {TranslationMode.CBN: 8, TranslationMode.CBV: 6, TranslationMode.POLARIZED: 2}
    assert pretty_type(c.types[TranslationMode.POLARIZED]) == "¬(np * (np * (¬s * np)))"


@pytest.mark.parametrize("mode", list(TranslationMode))
def test_offered_terms_typecheck(mode):
    consts = {"OFFERED": parse_simple_type("e -> e -> e -> t")}
    ty = delinearize_type(lexical_type(DTV, mode))
    assert simple_typecheck(parse_simple_term(OFFERED_TERMS[mode]), {}, consts, ty) == ty


@pytest.mark.parametrize("text", BATTERY)
def test_polarized_types_are_most_economical(text):
    n = compare(F(text)).counts
    assert n[TranslationMode.POLARIZED] <= n[TranslationMode.CBV] <= n[TranslationMode.CBN]


def test_rule_listings():
    names = {r.name for r in lgt_rules()}
    assert names == {r.name for r in lgq_rules()}
    assert {"Ax", "D", "⊗•", "⊗∘", "\\•", "\\∘", "/•", "/∘", "⊕•", "⊕∘", "⊘•", "⊘∘", "⦸•", "⦸∘"} == names


def test_lgq_axiom():
    eng = lgq()
    s = FocusedConclusion(InLeaf(F("p"), "x"), F("p"))
    [d] = eng.derive(s)
    assert d.term == parse_term("x")


def test_lgt_axiom():
    eng = lgt()
    s = FocusedHypothesis(OutLeaf(F("p"), "ε"), F("p"))
    [d] = eng.derive(s)
    assert d.term == parse_term("ε")


def test_lgq_identity():
    [d] = lgq().derive(parse_sequent("p^x |- p^ε"))
    assert alpha_eq(d.term, parse_term("(ε x)"))


def test_lgt_identity():
    [d] = lgt().derive(parse_sequent("p^x |- p^ε"))
    assert alpha_eq(d.term, parse_term("(x ε)"))


def test_polarized_mode_has_no_stoup_engine():
    with pytest.raises(ValueError):
        StoupEngine(TranslationMode.POLARIZED)


GOALS = [
    "p |- p", r"np . np\s |- s", r"np . ((np\s)/np . np) |- s", "a * b |- a * b", "a + b |- a + b",
    "a ./ b |- a ./ b", r"b .\ a |- b .\ a", "a/b |- a/b", r"b\a |- b\a", "a . b |- a * b",
]


@pytest.mark.parametrize("engine", [lgt(), lgq()], ids=["LGT", "LGQ"])
@pytest.mark.parametrize("text", GOALS)
def test_engine_terms_typecheck(engine, text):
    s = parse_sequent(text)
    ds = engine.derive(s)
    assert ds
    for d in ds:
        assert typecheck(mode_context(s, engine.mode), d.term) == BOTTOM


@pytest.mark.parametrize("engine", [lgt(), lgq()], ids=["LGT", "LGQ"])
def test_engine_rejects_distinct_atoms(engine):
    assert engine.derive(parse_sequent("p |- q")) == []
