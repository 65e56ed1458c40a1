import pytest
from hypothesis import given
from hypothesis import strategies as st

from kafmp.automata import antimirov_automaton, language_equiv, word_relation
from kafmp.errors import BudgetExceeded
from kafmp.fmp import CanonicalPipeline, word_image
from kafmp.models import (AXIOMS, FiniteKa, canonical_model, check_axioms,
                          countermodel_search, interpret, monoid_to_ka, relational_ka,
                          word_interpretation)
from kafmp.syntax import member, parse, word_expr
from kafmp.transform import transition_monoid

from conftest import exprs, nfas, sized_exprs, words

E = parse("a.(b.a)*")


def clean(report):
    return {k: v for k, v in report.items() if v}


class TestCanonicalModel:
    def test_worked_example(self):
        ka, h = canonical_model(E)
        m = ka.monoid
        assert len(m) == 6
        assert {m.name(i) for i in interpret(h, parse("a.b*.a"))} == {"d_a", "d_aa=empty"}
        assert {m.name(i) for i in interpret(h, E)} == {"d_a"}
        da = m.elements[m.letter("a")]
        assert ka.relations(interpret(h, parse("a.b*.a"))) == {da, frozenset()}

    def test_generators_are_singletons(self):
        ka, h = canonical_model(E)
        assert interpret(h, parse("a")) == {ka.monoid.letter("a")}
        assert interpret(h, parse("1")) == ka.one == {ka.monoid.unit}
        assert interpret(h, parse("0")) == ka.zero

    def test_missing_letter(self):
        _, h = canonical_model(parse("a"))
        with pytest.raises(KeyError):
            interpret(h, parse("b"))

    def test_axioms(self):
        ka, _ = canonical_model(E)
        assert ka.size == 64 and ka.enumerable
        assert clean(check_axioms(ka)) == {}

    @given(sized_exprs(max_size=7))
    def test_interpretation_is_image_of_words(self, e):
        try:
            p = CanonicalPipeline(e, "ab")
        except BudgetExceeded:
            return
        for f in (e, parse("(a+b)*"), parse("a.b*.a")):
            assert p.image(f) == word_image(f, p)

    @given(sized_exprs(max_size=7), words)
    def test_words_below_their_expression(self, e, w):
        p = CanonicalPipeline(e, "ab")
        if member(w, e):
            assert p.ka.leq(p.image(word_expr(w)), p.image(e))
            # a word is interpreted as the singleton of its own relation
            assert p.ka.relations(p.image(word_expr(w))) == {word_relation(p.automaton, w)}


class TestRelationalModels:
    def test_small_carriers(self):
        assert relational_ka(0).size == 2
        assert relational_ka(1).size == 16
        assert relational_ka(2).enumerable and relational_ka(2).size == 512
        assert not relational_ka(3).enumerable

    @pytest.mark.parametrize("n", [0, 1])
    def test_axioms_exhaustive(self, n):
        assert clean(check_axioms(relational_ka(n))) == {}

    @pytest.mark.parametrize("n", [2, 3])
    def test_axioms_sampled(self, n):
        assert clean(check_axioms(relational_ka(n), samples=300)) == {}

    def test_negative(self):
        with pytest.raises(ValueError):
            relational_ka(-1)

    def test_word_model_example(self):
        h = word_interpretation("ab")
        assert interpret(h, parse("a.b")) == {(0, 2)}
        assert interpret(h, parse("b.a")) == frozenset()
        assert interpret(h, parse("a*")) == {(0, 0), (1, 1), (2, 2), (0, 1)}

    @given(exprs(max_leaves=6), st.text(alphabet="ab", max_size=5))
    def test_word_model_decides_substrings(self, g, w):
        image = interpret(word_interpretation(w, "ab"), g)
        for i in range(len(w) + 1):
            for j in range(len(w) + 1):
                expected = i <= j and member(w[i:j], g)
                assert ((i, j) in image) == expected


class TestAxiomBattery:
    def test_detects_broken_star(self):
        # two-element boolean algebra with a star that is not a fixpoint
        broken = FiniteKa("B/bad", 0, 1, max, min, lambda x: 0, 2, lambda: iter([0, 1]))
        report = check_axioms(broken)
        assert report["1+x.x*=x*"] > 0
        assert report["x*.y least fixpoint of z -> y+x.z"] > 0

    def test_detects_non_least_star(self):
        # relations on {0, 1} where id* is the full relation: still 1 + x.x* = x*,
        # but no longer the least fixpoint
        good = relational_ka(1)
        full = frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})
        ident = good.one
        bad = FiniteKa("R/bad", good.zero, good.one, good.plus, good.times,
                       lambda r: full if r == ident else good.star(r), good.size,
                       good.carrier)
        report = check_axioms(bad)
        assert report["1+x.x*=x*"] == 0
        assert report["x+y.z<=z => y*.x<=z"] > 0
        assert report["x*.y least fixpoint of z -> y+x.z"] > 0

    def test_detects_non_idempotent_plus(self):
        mod3 = FiniteKa("Z3", 0, 1, lambda x, y: (x + y) % 3, lambda x, y: x * y % 3,
                        lambda x: 1, 3, lambda: iter(range(3)))
        assert check_axioms(mod3)["x+x=x"] > 0
        assert check_axioms(mod3, exhaustive_limit=0, samples=200)["x+x=x"] > 0

    def test_sampled_and_exhaustive_agree(self):
        ka = relational_ka(1)
        assert clean(check_axioms(ka, exhaustive_limit=0, samples=500)) == {}
        assert set(check_axioms(ka)) == set(AXIOMS)

    @given(nfas(max_states=3))
    def test_powerset_models(self, A):
        m = transition_monoid(A)
        ka = monoid_to_ka(m)
        assert clean(check_axioms(ka, samples=200)) == {}


class TestCountermodels:
    def test_examples(self):
        c = countermodel_search(parse("a.b"), parse("b.a"))
        assert c.to_json() == {"n": 2, "word": "ab", "point": [0, 2], "in": "left",
                               "assignment": {"a": [[0, 1]], "b": [[1, 2]]}}
        c = countermodel_search(parse("0"), parse("1"))
        assert c.word == "" and c.point == (0, 0) and c.side == "right"
        assert countermodel_search(parse("a*"), parse("1+a.a*")) is None

    @given(exprs(max_leaves=5), exprs(max_leaves=5))
    def test_witness_validates(self, e, f):
        c = countermodel_search(e, f)
        if c is None:
            assert language_equiv(antimirov_automaton(e, "ab"), antimirov_automaton(f, "ab"))
            return
        in_e = c.point in interpret(c.h, e)
        in_f = c.point in interpret(c.h, f)
        assert in_e != in_f
        assert c.side == ("left" if in_e else "right")
        assert member(c.word, e) == in_e and member(c.word, f) == in_f
