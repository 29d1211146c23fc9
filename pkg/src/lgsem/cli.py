"""Command-line front end: lgsem check | parse | translate | normalize | compare."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import formula as fm
from .cbncbv import TranslationMode, UnsupportedConnective, cbn_type, cbv_type, compare
from .lp import Diverged, TermSyntaxError, normalize, parse_term, pretty_term
from .search import DEFAULT_LIMITS, DepthExceeded, Prover, SearchLimits, Status
from .semantics import GrammarError, NoDerivation, UnknownWord, load_grammar, shipped_grammar_path, reading
from .sequent import pretty_sequent, parse_sequent
from .structural import EMPTY, RulePackage

EXIT_OK, EXIT_NO, EXIT_CAPPED, EXIT_USAGE = 0, 1, 2, 3


@dataclass
class Config:
    rules: RulePackage = EMPTY
    limits: SearchLimits = DEFAULT_LIMITS
    format: str = "text"
    grammar: Optional[Path] = None
    color: bool = False


def _paint(cfg: Config, text: str, code: str) -> str:
    return f"\033[{code}m{text}\033[0m" if cfg.color else text


def _emit(cfg: Config, payload: dict, lines: list) -> None:
    if cfg.format == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        print("\n".join(lines))


def cmd_check(text: str, cfg: Config) -> int:
    goal = parse_sequent(text)
    prover = Prover(cfg.rules, cfg.limits)
    st = prover.status(goal)
    derivs = prover.derivations(goal) if st is Status.YES else []
    word = {Status.YES: "DERIVABLE", Status.NO: "NOT DERIVABLE", Status.UNKNOWN: "UNKNOWN"}[st]
    payload = {
        "sequent": pretty_sequent(goal),
        "rules": str(cfg.rules),
        "status": word,
        "derivation_count": len(derivs),
        "derivations": [d.to_dict() for d in derivs],
    }
    colour = {Status.YES: "32", Status.NO: "31", Status.UNKNOWN: "33"}[st]
    lines = [f"{_paint(cfg, word, colour)}  {pretty_sequent(goal)}  [rules: {cfg.rules}]"]
    if st is Status.UNKNOWN:
        lines.append("search limits reached before the search space was exhausted")
    if derivs:
        lines.append(f"{len(derivs)} derivation(s)")
    for i, d in enumerate(derivs, 1):
        lines.append(f"-- derivation {i}: {pretty_term(d.term)}")
        lines.append(d.pretty("   "))
    _emit(cfg, payload, lines)
    return {Status.YES: EXIT_OK, Status.NO: EXIT_NO, Status.UNKNOWN: EXIT_CAPPED}[st]


def cmd_parse(sentence: str, category: Optional[str], all_brackets: bool, cfg: Config) -> int:
    lex = load_grammar(_grammar_path(cfg.grammar))
    cat = fm.parse_formula(category) if category else lex.goal
    if cat is None:
        raise GrammarError("no --cat given and the grammar declares no goal")
    try:
        readings = reading(sentence, cat, lex, cfg.rules, cfg.limits, all_brackets)
    except NoDerivation as e:
        _emit(cfg, {"sentence": sentence, "category": fm.print_formula(cat), "status": "NOT DERIVABLE",
                    "readings": []}, [f"NOT DERIVABLE  {e}"])
        return EXIT_NO
    except DepthExceeded as e:
        _emit(cfg, {"sentence": sentence, "category": fm.print_formula(cat), "status": "UNKNOWN",
                    "readings": []}, [f"UNKNOWN  {e}"])
        return EXIT_CAPPED
    payload = {
        "sentence": sentence,
        "category": fm.print_formula(cat),
        "status": "DERIVABLE",
        "readings": [{"term": pretty_term(r.term), "derivation_count": r.derivations} for r in readings],
    }
    lines = [f"{len(readings)} reading(s) of {sentence} as {fm.pretty_formula(cat)}"]
    for r in readings:
        lines.append(f"  {pretty_term(r.term)}    ({r.derivations} derivation(s))")
    _emit(cfg, payload, lines)
    return EXIT_OK


def _grammar_path(path: Optional[Path]) -> Path:
    """The given grammar file; a bare name of a shipped grammar resolves to the packaged copy."""
    if path is None:
        return shipped_grammar_path()
    shipped = shipped_grammar_path().parent / path.name
    if not path.exists() and path.parent == Path(".") and shipped.exists():
        return shipped
    return path


def cmd_translate(text: str, mode: str, cfg: Config) -> int:
    a = fm.parse_formula(text)
    m = TranslationMode(mode)
    t = {TranslationMode.CBN: cbn_type, TranslationMode.CBV: cbv_type}.get(m, fm.translate)(a)
    _emit(cfg, {"formula": fm.print_formula(a), "mode": m.value, "type": str(t)}, [str(t)])
    return EXIT_OK


def cmd_normalize(text: str, cfg: Config) -> int:
    m = normalize(parse_term(text))
    _emit(cfg, {"term": text, "normal_form": pretty_term(m)}, [pretty_term(m)])
    return EXIT_OK


def cmd_compare(text: str, cfg: Config) -> int:
    c = compare(fm.parse_formula(text))
    rows = [{"mode": n, "type": lin, "simple_type": s, "neg_count": k} for n, lin, s, k in c.rows()]
    _emit(cfg, {"formula": fm.print_formula(c.formula), "types": rows}, [str(c)])
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rules", default="", help="structural packages, e.g. dist,halfdm")
    common.add_argument("--max-depth", type=int, default=DEFAULT_LIMITS.max_depth)
    common.add_argument("--max-derivations", type=int, default=DEFAULT_LIMITS.max_derivations)
    common.add_argument("--format", choices=("text", "json"), default="text")
    p = _Parser(prog="lgsem", description="Lambek-Grishin proof search and semantics")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", parents=[common], help="decide a sequent and print its derivations")
    c.add_argument("sequent")
    q = sub.add_parser("parse", parents=[common], help="readings of a bracketed phrase")
    q.add_argument("sentence")
    q.add_argument("-g", "--grammar", type=Path)
    q.add_argument("--cat")
    q.add_argument("--all-brackets", action="store_true")
    t = sub.add_parser("translate", parents=[common], help="linear type of a formula")
    t.add_argument("formula")
    t.add_argument("--mode", choices=[m.value for m in TranslationMode], default="polar")
    n = sub.add_parser("normalize", parents=[common], help="β-normal form of an LP term")
    n.add_argument("term")
    k = sub.add_parser("compare", parents=[common], help="lexical types under the three interpretations")
    k.add_argument("formula")
    return p


def _config(args) -> Config:
    return Config(
        rules=RulePackage.parse(args.rules),
        limits=SearchLimits(args.max_depth, args.max_derivations),
        format=args.format,
        grammar=getattr(args, "grammar", None),
        color=os.environ.get("LGSEM_COLOR", "1") != "0" and sys.stdout.isatty(),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "check":
            return cmd_check(args.sequent, cfg)
        if args.command == "parse":
            return cmd_parse(args.sentence, args.cat, args.all_brackets, cfg)
        if args.command == "translate":
            return cmd_translate(args.formula, args.mode, cfg)
        if args.command == "normalize":
            return cmd_normalize(args.term, cfg)
        return cmd_compare(args.formula, cfg)
    except UnknownWord as e:
        print(f"error: UnknownWord: {e}", file=sys.stderr)
        return EXIT_NO
    except (ValueError, GrammarError, TermSyntaxError, UnsupportedConnective, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Diverged as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAPPED


if __name__ == "__main__":
    sys.exit(main())
