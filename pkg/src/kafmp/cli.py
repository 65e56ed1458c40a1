"""Command-line front end: ``kafmp <subcommand> ...``.

Exit codes: 0 when the queried property holds, 1 when a violation or a
separating witness was found, 2 for usage, parse and budget errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .automata import Nfa, antimirov_automaton, language_equiv, relation_pairs
from .errors import BudgetExceeded, ParseError
from .fmp import MAX_STATES, fmp_sandwich
from .models import (Interpretation, canonical_model, countermodel_search, interpret,
                     relational_ka, word_interpretation)
from .solver import soli, solve_automaton
from .suite import DEFAULT_CORPUS, lemma_suite
from .syntax import Expr, enumerate_words, letters, member, parse
from .transform import DEFAULT_BUDGET, transformation_automaton, transition_monoid

OK, VIOLATION, USAGE = 0, 1, 2


def _expr(text: str) -> Expr:
    try:
        return parse(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse {text!r}: {exc}") from None


def _automaton(text: str) -> Nfa | Expr:
    """An Nfa JSON file, or an expression (turned into its Antimirov automaton later)."""
    path = Path(text)
    if text.endswith(".json") or path.is_file():
        try:
            return Nfa.from_json(path.read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise argparse.ArgumentTypeError(f"cannot load automaton {text!r}: {exc}") from None
    return _expr(text)


def _emit(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=False))


def _as_nfa(source: Nfa | Expr) -> Nfa:
    return source if isinstance(source, Nfa) else antimirov_automaton(source)


def _describe(A: Nfa) -> None:
    print(f"states ({A.size}):")
    for q, label in enumerate(A.labels):
        marks = ("initial " if q in A.initials else "") + ("final" if q in A.finals else "")
        print(f"  {q}: {label}  {marks}".rstrip())
    print("transitions:")
    for q, a, p in A.transitions():
        print(f"  {q} -{a}-> {p}")


# -- subcommands ---------------------------------------------------------------

def cmd_parse(args) -> int:
    e = args.expr
    if args.json:
        _emit({"expr": str(e), "size": e.size, "nullable": e.nullable,
               "letters": sorted(letters(e))})
    else:
        print(e)
    return OK


def cmd_member(args) -> int:
    found = member(args.word, args.expr)
    if args.json:
        _emit({"word": args.word, "expr": str(args.expr), "member": found})
    else:
        print("yes" if found else "no")
    return OK if found else VIOLATION


def cmd_enumerate(args) -> int:
    words = sorted(enumerate_words(args.expr, args.maxlen), key=lambda w: (len(w), w))
    if args.json:
        _emit(words)
    else:
        for w in words:
            print(w if w else "ε")
    return OK


def cmd_antimirov(args) -> int:
    A = antimirov_automaton(args.expr)
    if args.dot:
        print(A.to_dot())
    elif args.json:
        _emit(A.to_json())
    else:
        _describe(A)
    return OK


def cmd_solve(args) -> int:
    A = _as_nfa(args.source)
    s = solve_automaton(A, simplify=args.simplify)
    total = soli(A, simplify=args.simplify, solution=s)
    if args.json:
        _emit({"states": list(A.labels), "sol": [str(x) for x in s], "soli": str(total)})
    else:
        for label, x in zip(A.labels, s):
            print(f"sol({label}) = {x}")
        print(f"soli = {total}")
    return OK


def _relation(text: str, monoid):
    """A relation given as a JSON pair list or by its monoid name (``id``, ``d_ab``)."""
    names = {monoid.name(i): i for i in range(len(monoid))}
    names.update({f"d_{w}": i for i, w in enumerate(monoid.witnesses) if w})
    if text in names:
        return monoid.elements[names[text]]
    try:
        pairs = json.loads(text)
        return frozenset((int(p), int(q)) for p, q in pairs)
    except (ValueError, TypeError) as exc:
        raise ValueError(f"relation must be a monoid name or a JSON pair list: {text!r}") from exc


def cmd_transform(args) -> int:
    A = _as_nfa(args.source)
    m = transition_monoid(A, args.budget)
    if args.relation is None:
        rows = [{"name": m.name(i), "witness": m.witnesses[i],
                 "relation": relation_pairs(r)} for i, r in enumerate(m.elements)]
        if args.json:
            _emit({"size": len(m), "elements": rows})
        else:
            print(f"transition monoid ({len(m)} elements):")
            for row in rows:
                print(f"  {row['name']}: {row['relation']}")
        return OK
    T = transformation_automaton(A, _relation(args.relation, m), m)
    if args.dot:
        print(T.nfa.to_dot("AR"))
        return OK
    expr = soli(T.nfa, simplify=True,
                solution=solve_automaton(T.nfa, simplify=True, order="greedy"))
    if args.json:
        data = T.nfa.to_json()
        data["soli"] = str(expr)
        _emit(data)
    else:
        _describe(T.nfa)
        print(f"soli = {expr}")
    return OK


def _model(spec: str, e: Expr, args) -> Interpretation:
    kind, _, value = spec.partition(":")
    if kind == "canonical":
        _, h = canonical_model(_expr(value), letters(e), args.budget)
        return h
    if kind == "word":
        return word_interpretation(value, letters(e))
    if kind == "rel":
        n = int(value)
        ka = relational_ka(n)
        if args.assign:
            raw = json.loads(args.assign)
            assignment = {a: frozenset((p, q) for p, q in pairs) for a, pairs in raw.items()}
        else:
            rng = random.Random(args.seed)
            assignment = {a: ka.sample(rng) for a in sorted(letters(e))}
        return Interpretation(ka, assignment, {"n": n})
    raise ValueError(f"unknown model {spec!r}; use canonical:<expr>, word:<w> or rel:<n>")


def cmd_interp(args) -> int:
    h = _model(args.model, args.expr, args)
    value = interpret(h, args.expr)
    if isinstance(value, frozenset) and hasattr(h.ka, "monoid"):
        shown = sorted(h.ka.monoid.name(i) for i in value)
        data = {"model": h.ka.name, "value": shown,
                "relations": [relation_pairs(r) for r in h.ka.relations(value)]}
    else:
        shown = relation_pairs(value)
        data = {"model": h.ka.name, "value": shown,
                "assignment": {a: relation_pairs(r) for a, r in sorted(h.assignment.items())}}
    if args.json:
        _emit(data)
    else:
        print(f"{h.ka.name}: {shown}")
    return OK


def cmd_equiv(args) -> int:
    sigma = letters(args.e) | letters(args.f)
    v = language_equiv(antimirov_automaton(args.e, sigma), antimirov_automaton(args.f, sigma))
    if args.json:
        _emit({"equivalent": v.holds, "counterexample": v.counterexample, "in": v.side})
    elif v:
        print("equivalent")
    else:
        print(f"inequivalent: {v.counterexample!r} only in {v.side}")
    return OK if v else VIOLATION


def cmd_countermodel(args) -> int:
    c = countermodel_search(args.e, args.f)
    if c is None:
        print("equivalent: no countermodel")
        return OK
    _emit(c.to_json())
    return VIOLATION


def cmd_fmp_check(args) -> int:
    report = fmp_sandwich(args.e, args.f, max_states=args.max_states, budget=args.budget)
    if args.json:
        _emit(report.to_json())
    else:
        print(f"{report.e}  vs  {report.f}")
        for name, same in report.preconditions.items():
            print(f"  images agree in {name}: {same}")
        for name, v in report.checks.items():
            suffix = "" if v["holds"] else f"  (counterexample {v['counterexample']!r})"
            print(f"  {name}: {v['holds']}{suffix}")
        print(report.status)
    return OK if report.certified else VIOLATION


def cmd_lemma_suite(args) -> int:
    if args.corpus:
        lines = Path(args.corpus).read_text().splitlines()
        corpus = [_expr(x.strip()) for x in lines if x.strip() and not x.lstrip().startswith("#")]
    else:
        corpus = [parse(x) for x in DEFAULT_CORPUS]
    report = lemma_suite(corpus, seed=args.seed, on_line=None if args.json else print)
    if args.json:
        _emit([vars(line) for line in report.lines])
    else:
        print(f"{len(report.lines)} checks, {report.failures} failures")
    return OK if report.ok else VIOLATION


# -- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="limit on transition monoid elements (default %(default)s)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised commands")

    parser = argparse.ArgumentParser(prog="kafmp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("parse", cmd_parse, "parse and print an expression")
    p.add_argument("expr", type=_expr)

    p = add("member", cmd_member, "decide word membership")
    p.add_argument("word")
    p.add_argument("expr", type=_expr)

    p = add("enumerate", cmd_enumerate, "list the words of an expression up to a length")
    p.add_argument("expr", type=_expr)
    p.add_argument("--maxlen", type=int, default=4)

    p = add("antimirov", cmd_antimirov, "build the Antimirov automaton")
    p.add_argument("expr", type=_expr)
    p.add_argument("--dot", action="store_true")

    p = add("solve", cmd_solve, "least solution of an automaton (JSON file or expression)")
    p.add_argument("source", type=_automaton)
    p.add_argument("--simplify", action="store_true", help="drop 0 and 1 units while eliminating")

    p = add("transform", cmd_transform, "transition monoid and transformation automata")
    p.add_argument("source", type=_automaton)
    p.add_argument("--relation", help="target relation: monoid name (d_ab, id) or JSON pairs")
    p.add_argument("--dot", action="store_true")

    p = add("interp", cmd_interp, "interpret an expression in a finite model")
    p.add_argument("expr", type=_expr)
    p.add_argument("--model", required=True, help="canonical:<expr>, word:<w> or rel:<n>")
    p.add_argument("--assign", help='letter assignment for rel:<n>, e.g. \'{"a": [[0,1]]}\'')

    for name, func, help_ in (("equiv", cmd_equiv, "decide language equivalence"),
                              ("countermodel", cmd_countermodel, "separating word model"),
                              ("fmp-check", cmd_fmp_check, "run the finite-model sandwich")):
        p = add(name, func, help_)
        p.add_argument("e", type=_expr)
        p.add_argument("f", type=_expr)
        if name == "fmp-check":
            p.add_argument("--max-states", type=int, default=MAX_STATES)

    p = add("lemma-suite", cmd_lemma_suite, "run the lemma batteries over a corpus")
    p.add_argument("--corpus", help="file with one expression per line")
    return parser


def main(argv: list[str] | None = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BudgetExceeded, ValueError, KeyError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"kafmp: error: {exc}", file=sys.stderr)
        return USAGE
    except RecursionError:
        print("kafmp: error: expression nested too deeply", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
