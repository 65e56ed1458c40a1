import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kafmp.automata import expr_equiv
from kafmp.errors import BudgetExceeded
from kafmp.fmp import (CanonicalPipeline, fmp_sandwich, interp_lower_check,
                       interp_upper_check)
from kafmp.generate import equivalent_variant, random_expr
from kafmp.suite import lemma_suite
from kafmp.syntax import parse

from conftest import sized_exprs

E = parse("a.(b.a)*")


class TestInterpretationLemmas:
    def test_upper_examples(self):
        upper = interp_upper_check(E)
        assert list(upper) == ["d_a"] and all(upper.values())
        one = interp_upper_check(parse("1"))
        assert list(one) == ["id"] and all(one.values())
        assert interp_upper_check(parse("0")) == {}

    def test_lower_examples(self):
        assert interp_lower_check(E, E)
        assert interp_lower_check(parse("a.b"), parse("0"))
        assert interp_lower_check(parse("a"), parse("b"))

    @given(sized_exprs(max_size=8), sized_exprs(max_size=8))
    def test_random(self, e, f):
        try:
            p = CanonicalPipeline(e, "ab")
        except BudgetExceeded:
            return
        assert all(interp_upper_check(e, p).values())
        assert interp_lower_check(e, f, p)


class TestSandwich:
    def test_certified(self):
        r = fmp_sandwich(parse("a*"), parse("1+a.a*"))
        assert r.certified and len(r.checks) == 4
        assert r.status.startswith("equivalent")

    def test_separated(self):
        r = fmp_sandwich(parse("a.b"), parse("b.a"))
        assert not r.certified
        assert r.preconditions == {"K_e": False, "K_f": False}
        assert r.image_e["K_e"] != r.image_f["K_e"]
        assert r.status == "separated by a canonical finite model"

    def test_reflexive(self):
        assert fmp_sandwich(E, E).certified

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            fmp_sandwich(parse("(a+b)*.a.(a+b).(a+b)"), parse("a"), max_states=3)

    def test_reproducible(self):
        e, f = parse("(a.b)*.a"), parse("a.(b.a)*")
        first = fmp_sandwich(e, f)
        stored = json.loads(json.dumps(first.to_json()))
        again = fmp_sandwich(parse(stored["e"]), parse(stored["f"]))
        assert again.certified and first.verdicts() == again.verdicts()
        assert again.middles == stored["middles"]
        assert again.image_e == stored["image_e"] and again.image_f == stored["image_f"]

    @given(st.integers(0, 2**32 - 1))
    def test_equivalent_pairs_certify(self, seed):
        rng = random.Random(seed)
        e = random_expr(rng, rng.randint(1, 7))
        f = equivalent_variant(rng, e, steps=3)
        assert expr_equiv(e, f)
        try:
            r = fmp_sandwich(e, f)
        except BudgetExceeded:
            return
        assert r.certified, r.to_json()

    @given(sized_exprs(max_size=7), sized_exprs(max_size=7))
    def test_inequivalent_pairs_separate(self, e, f):
        try:
            r = fmp_sandwich(e, f)
        except BudgetExceeded:
            return
        if not expr_equiv(e, f):
            assert not all(r.preconditions.values())
        else:
            assert r.certified


class TestSuite:
    def test_default_corpus(self):
        report = lemma_suite()
        assert report.ok and report.lines
        assert not any(line.status == "SKIP" for line in report.lines)

    def test_empty_corpus(self):
        assert lemma_suite([]).ok and lemma_suite([]).lines == []

    def test_budget_skip(self):
        report = lemma_suite(["(a+b)*.a.(a+b).(a+b).(a+b).(a+b).(a+b).(a+b).(a+b).(a+b)"])
        assert report.ok
        assert any(line.status == "SKIP" for line in report.lines)
