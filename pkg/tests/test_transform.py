import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kafmp.automata import accepts, antimirov_automaton, make_nfa, word_relation
from kafmp.errors import BudgetExceeded
from kafmp.suite import transformation_lemmas
from kafmp.syntax import member, parse
from kafmp.transform import (SolvedTransformations, transformation_automaton,
                             transition_monoid)

from conftest import nfas


class TestMonoid:
    def test_alternating_automaton(self, a_alt):
        m = transition_monoid(a_alt)
        assert len(m) == 6
        assert sorted(m.witnesses) == sorted(["", "a", "b", "ab", "ba", "aa"])
        delta = lambda w: word_relation(a_alt, w)  # noqa: E731
        assert delta("a") == delta("aba")
        assert delta("b") == delta("bab")
        assert delta("aa") == delta("bb") == delta("baa") == delta("abb") == frozenset()
        assert set(m.elements) == {delta(w) for w in ["", "a", "b", "ab", "ba", "aa"]}

    def test_names(self, a_alt):
        m = transition_monoid(a_alt)
        assert [m.name(i) for i in range(len(m))] == ["id", "d_a", "d_b", "d_aa=empty",
                                                        "d_ab", "d_ba"]

    def test_self_loop(self):
        A = make_nfa(1, [(0, "a", 0)], [0], [0])
        assert len(transition_monoid(A)) == 1

    def test_antimirov_monoid(self):
        assert len(transition_monoid(antimirov_automaton(parse("a.(b.a)*")))) == 6

    def test_budget(self):
        A = antimirov_automaton(parse("(a+b)*.a.(a+b).(a+b)"))
        with pytest.raises(BudgetExceeded):
            transition_monoid(A, budget=4)

    @given(nfas(), st.randoms(use_true_random=False))
    def test_witnesses_and_closure(self, A, rnd):
        m = transition_monoid(A)
        for i, r in enumerate(m.elements):
            assert word_relation(A, m.witnesses[i]) == r
        for _ in range(50):
            i, j = rnd.randrange(len(m)), rnd.randrange(len(m))
            assert m.elements[m.multiply(i, j)] == word_relation(A, m.witnesses[i] + m.witnesses[j])
        lengths = [len(w) for w in m.witnesses]
        assert lengths == sorted(lengths)


class TestTransformationAutomaton:
    def test_examples(self, a_alt):
        m = transition_monoid(a_alt)
        T = transformation_automaton(a_alt, word_relation(a_alt, "ba"), m)
        assert accepts(T.nfa, "ba")
        T = transformation_automaton(a_alt, word_relation(a_alt, ""), m)
        assert accepts(T.nfa, "")
        T = transformation_automaton(a_alt, word_relation(a_alt, "ab"), m)
        assert accepts(T.nfa, "ab") and accepts(T.nfa, "abab") and not accepts(T.nfa, "a")

    def test_unreachable_target(self, a_alt):
        R = frozenset({(3, 3)})
        T = transformation_automaton(a_alt, R)
        assert T.nfa.labels[-1] == "R" and T.state(R) == T.nfa.size - 1
        assert not any(accepts(T.nfa, w) for w in ["", "a", "b", "ab", "ba", "aba"])

    def test_rejects_foreign_relation(self, a_alt):
        with pytest.raises(ValueError):
            transformation_automaton(a_alt, frozenset({(0, 7)}))

    @given(nfas(), st.text(alphabet="ab", max_size=5), st.text(alphabet="ab", max_size=5))
    def test_accepts_exactly_matching_words(self, A, u, w):
        T = transformation_automaton(A, word_relation(A, u))
        assert accepts(T.nfa, w) == (word_relation(A, w) == word_relation(A, u))
        reachable = range(len(transition_monoid(A).elements))
        assert all(len(T.nfa.successors(q, a)) == 1 for q in reachable for a in A.alphabet)


class TestLemmas:
    def test_alt(self, a_alt):
        expected = dict.fromkeys(["letter", "compose", "shift", "approximate below",
                                  "monoid witnesses"])
        t = SolvedTransformations(a_alt)
        assert transformation_lemmas(t, random.Random(0), samples=6 ** 3) == expected

    def test_antimirov(self):
        t = SolvedTransformations(antimirov_automaton(parse("a.(b.a)*")))
        assert all(v is None for v in transformation_lemmas(t, random.Random(0)).values())

    def test_shift_example(self, a_alt):
        # reading aba from d_ab to d_a transfers to reading it from d_b to d_ba
        t = SolvedTransformations(a_alt)
        m = t.monoid
        ix = {m.witnesses[i]: i for i in range(len(m))}
        moved = t.solution(ix["a"])[ix["ab"]]
        assert member("aba", moved)
        assert member("aba", t.solution(ix["ba"])[ix["b"]])

    @given(nfas(max_states=4), st.integers(0, 1000))
    def test_random_automata(self, A, seed):
        try:
            t = SolvedTransformations(A, budget=64)
        except BudgetExceeded:
            return
        assert all(v is None for v in transformation_lemmas(t, random.Random(seed)).values())
