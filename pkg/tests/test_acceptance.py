"""Acceptance checks.  Each test prints one PASS/FAIL line for its criterion."""
import random
import time

from conftest import (
    COLLAPSE_PROBES, HALFDM_AXIOMS, OBJECT_RELATIVE, SUBJECT_RELATIVE, TRANSITIVE, corpus,
)
from lgsem.cbncbv import (
    OFFERED_TERMS, TranslationMode, compare, lexical_type, lgq, lgt, mode_context,
)
from lgsem.formula import BOTTOM, F
from lgsem.generate import formula_goals, random_sequent
from lgsem.lp import alpha_eq, normalize, parse_term, pretty_term, typecheck
from lgsem.oracle import BruteForceProver
from lgsem.search import Prover, SearchLimits, Status, formula_goal, prove_all
from lgsem.semantics import (
    delinearize_type, parse_simple_term, parse_simple_type, shipped_lexicon, reading,
    simple_typecheck,
)
from lgsem.sequent import context, display, display_class, dualize, leaves, parse_sequent, stoup_type
from lgsem.structural import DIST, DIST_HALFDM, EMPTY, distributivity_instances

# Pinned limits.
TRANSITIVE_SECONDS = 1.0
RELATIVE_SECONDS = 2.0
COLLAPSE_SECONDS = 60.0
DISPLAY_SUITE_SIZE = 500
DISPLAY_MAX_LEAVES = 6
DUALITY_SAMPLES = {EMPTY: 3000, DIST_HALFDM: 600}
DUALITY_MAX_LEAVES = 4
TYPING_MAX_CONNECTIVES = 3
ORACLE_MAX_CONNECTIVES = 2

EXAMPLE1 = "[mathematician [who [founded intuitionism]]]"
EXAMPLE2 = "[law [that [Brouwer rejected]]]"
EXAMPLE3 = "[mathematician [whom [TNT [pictured [on [a [post stamp]]]]]]]"
READING1 = "(γ λx((MATHEMATICIAN x) ∧ ((FOUNDED INTUITIONISM) x)))"
READING2 = "(γ λx((LAW x) ∧ ((REJECTED x) BROUWER)))"
# Hand-computed by composing the lexical terms of paper.lg along the bracketing.
READING3 = ("(γ λx((MATHEMATICIAN x) ∧ (((PICTURED x) TNT) ∧ "
            "((ON (A λz((POST z) ∧ (STAMP z)))) TNT))))")


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _simple_eq(term, text):
    return pretty_term(term) == text


def _corpus_terms():
    """Extracted terms of every corpus goal and every reading, with their sequents."""
    provers = {}
    out = []
    for goal, pkg in corpus():
        prover = provers.setdefault(pkg, Prover(pkg))
        for d in prover.derivations(goal):
            out.extend(d.nodes())
    return out


def test_criterion_01_transitive_clause(capsys):
    goal = parse_sequent(TRANSITIVE)
    ds, secs = timed(lambda: prove_all(goal))
    ok = (len(ds) == 1 and alpha_eq(ds[0].term, parse_term("(y <z, <lam u. (ν u), x>>)"))
          and secs < TRANSITIVE_SECONDS)
    report(capsys, 1, ok, f"{len(ds)} derivation, {secs:.3f}s (limit {TRANSITIVE_SECONDS}s)")


def test_criterion_02_relative_clauses(capsys):
    first = parse_sequent(SUBJECT_RELATIVE)
    second = parse_sequent(OBJECT_RELATIVE)
    d1, t1 = timed(lambda: prove_all(first))
    d2, t2 = timed(lambda: prove_all(second, DIST_HALFDM))
    d2_empty = prove_all(second, EMPTY)
    want1 = parse_term("(w <lam <k, b>. (f <i, <lam z. (k z), b>>), <lam y. (ν y), m>>)")
    want2 = parse_term("(t <lam <e, k>. (r <e, <lam z. (k z), b>>), <lam y. (ν y), l>>)")
    ok = (len(d1) == 1 and alpha_eq(d1[0].term, want1)
          and len(d2) == 1 and alpha_eq(d2[0].term, want2)
          and d2_empty == [] and max(t1, t2) < RELATIVE_SECONDS)
    report(capsys, 2, ok, f"subject {t1:.3f}s, object {t2:.3f}s with dist,halfdm, "
                          f"{len(d2_empty)} derivations without (limit {RELATIVE_SECONDS}s each)")


def test_criterion_03_readings(capsys):
    lex = shipped_lexicon()
    r1 = reading(EXAMPLE1, "n", lex)
    r2 = reading(EXAMPLE2, "n", lex, DIST_HALFDM)
    r3 = reading(EXAMPLE3, "n", lex, DIST_HALFDM)
    ok = (len(r1) == len(r2) == len(r3) == 1 and _simple_eq(r1[0].term, READING1)
          and _simple_eq(r2[0].term, READING2) and _simple_eq(r3[0].term, READING3))
    report(capsys, 3, ok, "examples 1, 2 and 3 each give exactly the expected reading")


def test_criterion_04_non_collapse(capsys):
    prover = Prover(DIST_HALFDM)
    probes = [formula_goal(l, r) for l, r in COLLAPSE_PROBES]
    probes.append(parse_sequent("a . b |- b * a"))
    statuses, secs = timed(lambda: [prover.status(g) for g in probes])
    ok = (all(s is Status.NO for s in statuses) and not prover.hit_cap and not prover.hit_depth
          and secs < COLLAPSE_SECONDS)
    report(capsys, 4, ok, f"{len(probes)} probes NO, exhaustive (no cap hit), {secs:.2f}s "
                          f"(limit {COLLAPSE_SECONDS:.0f}s)")


def test_criterion_05_axiom_groups(capsys):
    full, empty, dist = Prover(DIST_HALFDM), Prover(EMPTY), Prover(DIST)
    axioms = [formula_goal(l, r) for l, r in HALFDM_AXIOMS]
    converses = [formula_goal(r, l) for l, r in HALFDM_AXIOMS]
    dist_goals = [formula_goal(l, r) for l, r in distributivity_instances()]
    yes = sum(full.status(g) is Status.YES for g in axioms)
    conv_no = sum(full.status(g) is Status.NO for g in converses)
    dist_yes = sum(dist.status(g) is Status.YES for g in dist_goals)
    empty_no = sum(empty.status(g) is Status.NO for g in axioms + dist_goals)
    ok = (yes, conv_no, dist_yes, empty_no) == (12, 12, 4, 16)
    report(capsys, 5, ok, f"axioms {yes}/12, converses NO {conv_no}/12, distributivity {dist_yes}/4, "
                          f"NO under ∅ {empty_no}/16")


def test_criterion_06_typing_soundness(capsys):
    failures, checked = 0, 0
    for node in _corpus_terms():
        checked += 1
        try:
            ok = typecheck(context(node.sequent), node.term) == stoup_type(node.sequent)
        except Exception:
            ok = False
        failures += not ok
    prover = Prover(EMPTY)
    goals = 0
    for goal in formula_goals(("a", "b"), TYPING_MAX_CONNECTIVES):
        goals += 1
        if prover.status(goal) is not Status.YES:
            continue
        for d in prover.derivations(goal):
            checked += 1
            try:
                ok = typecheck(context(goal), d.term) == BOTTOM
            except Exception:
                ok = False
            failures += not ok
    report(capsys, 6, failures == 0, f"{checked} terms checked over the corpus and {goals} enumerated goals, "
                                     f"{failures} failures")


def test_criterion_07_beta_normal(capsys):
    nodes = _corpus_terms()
    lex = shipped_lexicon()
    linear = [t for r in reading(EXAMPLE1, "n", lex) + reading(EXAMPLE2, "n", lex, DIST_HALFDM)
              + reading(EXAMPLE3, "n", lex, DIST_HALFDM) for t in r.linear_terms]
    terms = [n.term for n in nodes] + linear
    bad = sum(not alpha_eq(normalize(m), m) for m in terms)
    report(capsys, 7, bad == 0, f"{len(terms)} extracted terms, {bad} not β-normal")


def test_criterion_08_display(capsys):
    rng = random.Random(2024)
    failures, displayed, classes = 0, 0, 0
    for _ in range(DISPLAY_SUITE_SIZE):
        s = random_sequent(rng, DISPLAY_MAX_LEAVES, ("a", "b", "c"), 2)
        ctx = context(s)
        members = display_class(s)
        classes += len(members)
        failures += sum(context(m) != ctx for m in members)
        for leaf in leaves(s):
            try:
                d = display(s, leaf.label)
                ok = leaf in (d.left, d.right) and context(d) == ctx
            except Exception:
                ok = False
            displayed += 1
            failures += not ok
    report(capsys, 8, failures == 0, f"{DISPLAY_SUITE_SIZE} sequents, {displayed} leaves displayed, "
                                     f"{classes} class members compared, "
                                     f"{failures} failures")


def test_criterion_09_duality(capsys):
    rng = random.Random(99)
    mismatches, total, yes = 0, 0, 0
    for pkg, n in DUALITY_SAMPLES.items():
        prover = Prover(pkg)
        goals = [random_sequent(rng, DUALITY_MAX_LEAVES, ("a", "b"), 2) for _ in range(n // 2)]
        goals += [random_sequent(rng, DUALITY_MAX_LEAVES, ("a", "b"), 0) for _ in range(n - n // 2)]
        goals += list(formula_goals(("a", "b"), 2))
        for g in goals:
            a, b = prover.status(g), prover.status(dualize(g))
            total += 1
            yes += a is Status.YES
            mismatches += a != b
    report(capsys, 9, mismatches == 0, f"{total} goals under ∅ and dist,halfdm ({yes} derivable), "
                                       f"{mismatches} mismatches")


def test_criterion_10_brute_force_oracle(capsys):
    disagreements, total = 0, 0
    for pkg in (EMPTY, DIST_HALFDM):
        focused, brute = Prover(pkg), BruteForceProver(pkg, SearchLimits())
        for g in formula_goals(("a", "b"), ORACLE_MAX_CONNECTIVES):
            a, b = focused.status(g), brute.status(g)
            total += 1
            disagreements += a is Status.UNKNOWN or b is Status.UNKNOWN or a != b
    report(capsys, 10, disagreements == 0, f"{total} goals over two packages, {disagreements} disagreements")


def test_criterion_11_cbn_cbv(capsys):
    dtv = F(r"((np\s)/np)/np")
    counts = compare(dtv).counts
    consts = {"OFFERED": parse_simple_type("e -> e -> e -> t")}
    typed = 0
    for mode, text in OFFERED_TERMS.items():
        ty = delinearize_type(lexical_type(dtv, mode))
        try:
            typed += simple_typecheck(parse_simple_term(text), {}, consts, ty) == ty
        except Exception:
            pass
    identity = parse_sequent("p^x |- p^ε")
    engines = 0
    for engine in (lgt(), lgq()):
        ds = engine.derive(identity)
        engines += len(ds) == 1 and typecheck(mode_context(identity, engine.mode), ds[0].term) == BOTTOM
    want = {TranslationMode.CBN: 8, TranslationMode.CBV: 6, TranslationMode.POLARIZED: 2}
    ok = counts == want and typed == 3 and engines == 2
    report(capsys, 11, ok, f"¬-counts {counts[TranslationMode.CBN]}/{counts[TranslationMode.CBV]}/"
                           f"{counts[TranslationMode.POLARIZED]}, offered terms typed {typed}/3, "
                           f"LGT and LGQ identity {engines}/2")
