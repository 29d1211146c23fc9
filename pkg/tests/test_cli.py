import json

import pytest

from lgsem.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_transitive_clause(capsys):
    code, out, _ = run(capsys, "check", r"np . ((np\s)/np . np) |- s")
    assert code == 0
    assert out.startswith("DERIVABLE")
    assert "(y ⟨z,⟨λu(ν u),x⟩⟩)" in out


def test_check_distributivity(capsys):
    code, out, _ = run(capsys, "check", "--rules", "dist", "( (a+b) * c ) |- (a + (b*c))")
    assert code == 0 and out.startswith("DERIVABLE")


def test_check_underivable(capsys):
    code, out, _ = run(capsys, "check", "p |- q")
    assert code == 1 and out.startswith("NOT DERIVABLE")


def test_check_capped(capsys):
    code, out, _ = run(capsys, "check", "--max-depth", "1", r"n . ((n\n)/(np\s) . ((np\s)/np . np)) |- n")
    assert code == 2 and out.startswith("UNKNOWN")


def test_check_json_matches_text(capsys):
    goal = "a * (b * c) |- a * (b * c)"
    _, text, _ = run(capsys, "check", goal)
    _, raw, _ = run(capsys, "check", "--format", "json", goal)
    data = json.loads(raw)
    assert data["status"] == "DERIVABLE"
    assert f"{data['derivation_count']} derivation(s)" in text
    assert len(data["derivations"]) == data["derivation_count"]
    assert set(data["derivations"][0]) == {"rule", "sequent", "term", "children"}


def test_parse_subject_relative(capsys):
    code, out, _ = run(capsys, "parse", "-g", "paper.lg", "--cat", "n",
                       "[mathematician [who [founded intuitionism]]]")
    assert code == 0
    assert "(γ λx((MATHEMATICIAN x) ∧ ((FOUNDED INTUITIONISM) x)))" in out


def test_parse_object_relative(capsys):
    code, out, _ = run(capsys, "parse", "-g", "paper.lg", "--rules", "dist,halfdm", "--cat", "n",
                       "[law [that [Brouwer rejected]]]")
    assert code == 0
    assert "(γ λx((LAW x) ∧ ((REJECTED x) BROUWER)))" in out


def test_parse_object_relative_without_rules(capsys):
    code, out, _ = run(capsys, "parse", "--cat", "n", "[law [that [Brouwer rejected]]]")
    assert code == 1 and out.startswith("NOT DERIVABLE")


def test_parse_unknown_word(capsys):
    code, _, err = run(capsys, "parse", "-g", "paper.lg", "--cat", "n", "[unknownword]")
    assert code == 1 and "UnknownWord" in err


def test_parse_all_brackets_json(capsys):
    code, out, _ = run(capsys, "parse", "--all-brackets", "--format", "json", "--cat", "n",
                       "mathematician who founded intuitionism")
    assert code == 0
    assert json.loads(out)["readings"][0]["derivation_count"] >= 1


def test_translate(capsys):
    assert run(capsys, "translate", r"(np\s)")[:2] == (0, "¬s * np\n")
    assert run(capsys, "translate", "--mode", "cbn", r"np\s")[1] == "¬¬np * ¬s\n"
    assert run(capsys, "translate", "--mode", "cbv", r"np\s")[1] == "¬(np * ¬s)\n"


def test_normalize(capsys):
    assert run(capsys, "normalize", "(lam x. x y)")[:2] == (0, "y\n")


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", r"((np\s)/np)/np")
    assert code == 0
    assert "¬-count 8" in out and "¬-count 6" in out and "¬-count 2" in out


def test_usage_errors(capsys):
    assert run(capsys, "check", "a |-")[0] == 3
    assert run(capsys, "check", "--rules", "bogus", "p |- p")[0] == 3
    assert run(capsys, "translate", "--mode", "cbn", "ln(a)")[0] == 3
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 3


def test_no_color_when_disabled(capsys, monkeypatch):
    monkeypatch.setenv("LGSEM_COLOR", "0")
    _, out, _ = run(capsys, "check", "p |- p")
    assert "\033[" not in out
