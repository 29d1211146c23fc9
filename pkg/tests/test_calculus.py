from lgsem.calculus import (
    Fresh, alpha_expansions, alpha_saturate, axiom, beta_expansions, decide, focused_step, react,
)
from lgsem.formula import F
from lgsem.lp import App, Var, alpha_eq, parse_term, typecheck
from lgsem.search import focus_plan
from lgsem.sequent import (
    FocusedConclusion, FocusedHypothesis, InLeaf, OutLeaf, SLNeg, SOver, SPar, SUnder, Unfocused,
    context, leaves, parse_sequent, stoup_type,
)

np_, s_, n_ = F("np"), F("s"), F("n")


def test_axiom_on_matching_atom():
    app = axiom(FocusedConclusion(InLeaf(np_, "x"), np_))
    assert app.term() == Var("x")


def test_axiom_rejects_mismatch():
    assert axiom(FocusedConclusion(InLeaf(np_, "x"), s_)) is None


def test_axiom_rejects_compound_focus():
    iv = F(r"np\s")
    assert axiom(FocusedConclusion(InLeaf(iv, "x"), iv)) is None


def test_decide_on_positive_output():
    s = Unfocused(InLeaf(n_, "y"), OutLeaf(n_, "ν"))
    [d] = decide(s)
    assert d.rule == "D∘"
    [prem] = d.premises
    assert prem == FocusedConclusion(InLeaf(n_, "y"), n_)
    assert d.term(axiom(prem).term()) == App(Var("ν"), Var("y"))


def test_react_on_positive_hypothesis():
    focused = FocusedHypothesis(OutLeaf(n_, "ν"), n_)
    r = react(focused, Fresh(["ν"]))
    assert r.rule == "R•"
    [prem] = r.premises
    y = prem.ante.label
    m = r.term(App(Var("ν"), Var(y)))
    assert alpha_eq(m, parse_term("lam y. (ν y)"))
    assert typecheck(context(focused), m) == stoup_type(focused)


def test_no_decision_on_positive_input():
    s = Unfocused(InLeaf(np_, "x"), OutLeaf(F("a + b"), "e"))
    assert all(d.rule != "D•" for d in decide(s))


def test_alpha_on_under_output():
    s = Unfocused(InLeaf(np_, "x"), OutLeaf(F(r"np\s"), "δ"))
    [a] = alpha_expansions(s, Fresh(["x", "δ"]))
    [prem] = a.premises
    assert isinstance(prem.cons, SUnder)
    k, b = prem.cons.left.label, prem.cons.right.label
    assert prem.cons.left.formula == s_ and prem.cons.right.formula == np_
    assert a.term(Var("M")) == parse_term(f"case δ of <{k}, {b}>. M")


def test_alpha_on_par_output_puts_right_operand_first():
    s = Unfocused(InLeaf(np_, "x"), OutLeaf(F("s + ln(np)"), "δ"))
    [a] = alpha_expansions(s, Fresh(["x", "δ"]))
    [prem] = a.premises
    assert isinstance(prem.cons, SPar)
    assert prem.cons.left.formula == F("ln(np)") and prem.cons.right.formula == s_
    case = a.term(Var("M"))
    assert (case.x, case.y) == (prem.cons.left.label, prem.cons.right.label)


def test_alpha_on_negation_output_renames():
    s = Unfocused(InLeaf(np_, "x"), OutLeaf(F("ln(np)"), "ε"))
    [a] = alpha_expansions(s, Fresh(["x", "ε"]))
    [prem] = a.premises
    assert isinstance(prem.cons, SLNeg)
    e = prem.cons.arg.label
    assert a.term(App(Var("k"), Var(e))) == App(Var("k"), Var("ε"))


def test_alpha_saturate_leaves_no_alpha_leaf():
    s = parse_sequent(r"a * (b ./ c) |- (a + b) / c")
    sat, steps = alpha_saturate(s, Fresh([l.label for l in leaves(s)]))
    assert [rule for rule, *_ in steps] == ["α-⊗", "α-⊘", "α-/", "α-⊕"]
    assert not alpha_expansions(sat)


def test_beta_splits_transitive_verb_focus():
    cons = SOver(InLeaf(np_, "z"), SUnder(OutLeaf(s_, "ν"), InLeaf(np_, "x")))
    [b] = beta_expansions(FocusedHypothesis(cons, F(r"(np\s)/np")))
    assert b.rule == "β-/"
    assert b.premises[0] == FocusedConclusion(InLeaf(np_, "z"), np_)
    assert b.premises[1] == FocusedHypothesis(cons.right, F(r"np\s"))


def test_focused_phase_builds_transitive_clause_term():
    cons = SOver(InLeaf(np_, "z"), SUnder(OutLeaf(s_, "ν"), InLeaf(np_, "x")))
    focused = FocusedHypothesis(cons, F(r"(np\s)/np"))
    fresh = Fresh(["x", "z", "ν", "y"])
    plan = focus_plan(focused, fresh)
    [goal] = plan.subgoals()           # the s-premise entering through R•
    assert isinstance(goal, Unfocused)
    from lgsem.search import Prover, _build_plan
    [sub] = Prover().derivations(goal)
    d = _build_plan(plan, iter([sub]))
    m = App(Var("y"), d.term)
    assert alpha_eq(m, parse_term("(y <z, <lam u. (ν u), x>>)"))


def test_atom_hypothesis_focus_has_only_axiom_route():
    assert beta_expansions(FocusedHypothesis(OutLeaf(np_, "e"), np_)) == []
    assert focused_step(FocusedConclusion(InLeaf(np_, "x"), np_), Fresh()).rule == "Ax"
