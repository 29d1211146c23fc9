import pytest

from lgsem.formula import BOTTOM, F, TAtom, TNeg, translate
from lgsem.lp import parse_term, pretty_term
from lgsem.semantics import (
    GOAL_COVAR, Arrow, E, GrammarError, NoDerivation, Prod, T, UnknownWord, bracketings,
    delinearize_term, delinearize_type, goal_free_variable_renamed, parse_brackets, parse_grammar,
    parse_simple_term, parse_simple_type, shipped_lexicon, reading, simple_normalize,
    simple_typecheck,
)
from lgsem.structural import DIST_HALFDM, EMPTY


@pytest.fixture(scope="module")
def lex():
    return shipped_lexicon()


def test_delinearize_negation():
    assert delinearize_type(TNeg(TAtom("s"))) == Arrow(T(), T())


def test_delinearize_transitive_verb():
    assert delinearize_type(translate(F(r"(np\s)/np"))) == Prod(E(), Prod(Arrow(T(), T()), E()))


def test_delinearize_bottom():
    assert delinearize_type(BOTTOM) == T()


def test_parse_simple_type():
    assert parse_simple_type("e -> e -> t") == Arrow(E(), Arrow(E(), T()))
    assert parse_simple_type("e * (t -> t)") == Prod(E(), Arrow(T(), T()))


def test_delinearize_case_into_projections():
    m = delinearize_term(parse_term("case z of <x, y>. (x y)"))
    assert pretty_term(m) == "(π1(z) π2(z))"


def test_delinearize_leaves_plain_terms_alone():
    assert delinearize_term(parse_term("lam x. x")) == parse_term("lam x. x")
    assert delinearize_term(parse_term("<a, b>")) == parse_term("<a, b>")


def test_simple_typecheck_and_normalize():
    consts = {"F": Arrow(E(), T()), "NOT": Arrow(T(), T())}
    m = parse_simple_term("((lam <x, q>. (q (F x))) <c, NOT>)")
    assert simple_typecheck(m, {"c": E()}, consts) == T()
    assert pretty_term(simple_normalize(m)) == "(NOT (F c))"


def test_every_lexical_entry_typechecks(lex):
    for word in lex.entries:
        for entry in lex.lookup(word):
            lex.check_entry(entry)


def test_subject_relative_reading(lex):
    [r] = reading("[mathematician [who [founded intuitionism]]]", "n", lex)
    assert pretty_term(r.term) == "(γ λx((MATHEMATICIAN x) ∧ ((FOUNDED INTUITIONISM) x)))"


def test_object_relative_reading(lex):
    [r] = reading("[law [that [Brouwer rejected]]]", "n", lex, DIST_HALFDM)
    assert pretty_term(r.term) == "(γ λx((LAW x) ∧ ((REJECTED x) BROUWER)))"


def test_object_relative_needs_interaction_rules(lex):
    with pytest.raises(NoDerivation):
        reading("[law [that [Brouwer rejected]]]", "n", lex, EMPTY)


def test_noun_phrase_reading(lex):
    [r] = reading("[intuitionism]", "np", lex)
    assert pretty_term(r.term) == "(γ INTUITIONISM)"


def test_non_peripheral_extraction(lex):
    [r] = reading("[mathematician [whom [TNT [pictured [on [a [post stamp]]]]]]]", "n", lex,
                  DIST_HALFDM)
    expected = ("(γ λx((MATHEMATICIAN x) ∧ (((PICTURED x) TNT) ∧ "
                "((ON (A λz((POST z) ∧ (STAMP z)))) TNT))))")
    assert pretty_term(r.term) == expected


def test_unknown_word(lex):
    with pytest.raises(UnknownWord):
        reading("[unknownword]", "n", lex)


def test_all_bracketings(lex):
    rs = reading("mathematician who founded intuitionism", "n", lex, all_brackets=True)
    assert len(rs) == 1


def test_unbracketed_phrase_needs_flag(lex):
    with pytest.raises(ValueError):
        reading("mathematician who founded intuitionism", "n", lex)


def test_bracketings_are_catalan():
    assert len(list(bracketings(list("abcd")))) == 5


def test_parse_brackets():
    assert parse_brackets("[a [b c]]") == ("a", ("b", "c"))


def test_goal_variable_renaming(lex):
    [r] = reading("[intuitionism]", "np", lex)
    assert pretty_term(goal_free_variable_renamed(r.term, "ν")) == "(ν INTUITIONISM)"
    assert GOAL_COVAR == "γ"


def test_grammar_errors():
    with pytest.raises(GrammarError):
        parse_grammar("word x : np = UNDECLARED")
    with pytest.raises(GrammarError):
        parse_grammar("frobnicate\n")
