import pytest

from lgsem.search import Prover, formula_goal
from lgsem.sequent import parse_sequent
from lgsem.structural import DIST, DIST_HALFDM, EMPTY, distributivity_instances

TRANSITIVE = r"np^x . ((np\s)/np^y . np^z) |- s^ν"
SUBJECT_RELATIVE = r"n^m . ((n\n)/(np\s)^w . ((np\s)/np^f . np^i)) |- n^ν"
OBJECT_RELATIVE = r"n^l . ((n\n)/(s + ln(np))^t . (np^b . (np\s)/np^r)) |- n^ν"

# Half De Morgan instances: three groups of four, each (left, right) meaning left ⊢ right.
HALFDM_AXIOMS = [
    ("rc(a * b)", "ln(b) + ln(a)"), ("a ./ ln(b)", "a * b"), ("a/b", "a + ln(b)"),
    ("lc(a * b)", "rn(b) + rn(a)"), ("rn(b) .\\ a", "b * a"), ("b\\a", "rn(b) + a"),
    ("rc(a) * rc(b)", "ln(b + a)"), ("b + a", "rc(b)\\a"), ("rc(b) * a", "b .\\ a"),
    ("lc(a) * lc(b)", "rn(b + a)"), ("b + a", "b/lc(a)"), ("a * lc(b)", "a ./ b"),
]

# Rebracketing and commutation probes against a par-shaped consequent whose
# right half is a fresh atom d or its structural negation.
_REBRACKET = [
    ("a * (b * c)", "(a * b) * c"),
    ("(a * b) * c", "a * (b * c)"),
    ("a * (b * c)", "b * (a * c)"),
    ("b * (a * c)", "a * (b * c)"),
]
COLLAPSE_PROBES = [
    (lhs, f"{d} + ({d} .\\ ({inner}))") for lhs, inner in _REBRACKET for d in ("d", "rn(d)")
]


def corpus():
    """(goal, package) pairs whose derivations make up the golden test corpus."""
    goals = [
        (parse_sequent(TRANSITIVE), EMPTY),
        (parse_sequent(SUBJECT_RELATIVE), EMPTY),
        (parse_sequent(SUBJECT_RELATIVE), DIST_HALFDM),
        (parse_sequent(OBJECT_RELATIVE), DIST_HALFDM),
        (parse_sequent("p^x |- p^ε"), EMPTY),
        (parse_sequent(r"np . np\s |- s"), EMPTY),
        (parse_sequent("a . b |- a * b"), EMPTY),
        (parse_sequent("a * b |- a * b"), EMPTY),
        (parse_sequent("a + b |- a + b"), EMPTY),
        (parse_sequent("ln(a) |- ln(a)"), EMPTY),
        (parse_sequent("a |- rn(ln(a))"), EMPTY),
    ]
    goals += [(formula_goal(l, r), DIST_HALFDM) for l, r in HALFDM_AXIOMS]
    goals += [(formula_goal(l, r), DIST) for l, r in distributivity_instances()]
    return goals


@pytest.fixture(scope="session")
def corpus_derivations():
    """Every derivation produced for the corpus, paired with its goal."""
    provers = {}
    out = []
    for goal, pkg in corpus():
        prover = provers.setdefault(pkg, Prover(pkg))
        for d in prover.derivations(goal):
            out.append((goal, d))
    return out
