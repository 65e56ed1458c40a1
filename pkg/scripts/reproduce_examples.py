"""Recompute the worked examples: the alternating automaton, its transition
monoid, the Antimirov automaton of a.(b.a)* and its canonical interpretation.

    python scripts/reproduce_examples.py [--dot-dir out/]
"""
import argparse
from pathlib import Path

from kafmp.automata import antimirov_automaton, language_equiv, make_nfa, relation_pairs
from kafmp.models import canonical_model, interpret
from kafmp.solver import soli, solve_automaton
from kafmp.syntax import ordered, parse, reachset
from kafmp.transform import transformation_automaton, transition_monoid


def alternating():
    edges = [(0, "a", 1), (0, "a", 3), (2, "a", 1), (2, "a", 3), (1, "b", 2)]
    return make_nfa(4, edges, [0], [3], labels=["q0", "q1", "q2", "q3"], alphabet="ab")


def same(x, text):
    return bool(language_equiv(antimirov_automaton(x, "ab"), antimirov_automaton(parse(text), "ab")))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot-dir", type=Path, help="also write DOT files here")
    args = ap.parse_args()

    A = alternating()
    print("== least solution of the alternating automaton")
    expected = ["(a.b)*.a", "b.(a.b)*.a", "(a.b)*.a", "1"]
    for q, x in enumerate(solve_automaton(A, simplify=True)):
        print(f"  sol({A.labels[q]}) = {x}    ~ {expected[q]}: {same(x, expected[q])}")
    print(f"  soli = {soli(A, simplify=True)}")

    print("== transition monoid")
    m = transition_monoid(A)
    for i, r in enumerate(m.elements):
        print(f"  {m.name(i):12s} {relation_pairs(r)}")

    e = parse("a.(b.a)*")
    print(f"== reachset of {e}")
    for x in ordered(reachset(e)):
        print(f"  {x}")
    Ae = antimirov_automaton(e)

    ka, h = canonical_model(e)
    print(f"== canonical model {ka.name}")
    for text in ["a.b*.a", "a.(b.a)*", "b.a", "(a+b)*"]:
        value = interpret(h, parse(text))
        print(f"  h({text}) = {ka.show(value)}")

    if args.dot_dir:
        args.dot_dir.mkdir(parents=True, exist_ok=True)
        (args.dot_dir / "alternating.dot").write_text(A.to_dot("alt"))
        (args.dot_dir / "antimirov.dot").write_text(Ae.to_dot("Ae"))
        T = transformation_automaton(A, m.elements[m.letter("a")], m)
        (args.dot_dir / "transformation.dot").write_text(T.nfa.to_dot("AR"))
        print(f"wrote DOT files to {args.dot_dir}")


if __name__ == "__main__":
    main()
