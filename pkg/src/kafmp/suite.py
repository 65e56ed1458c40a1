"""Lemma batteries run over a corpus of expressions.

Every check is decided on languages (by enumeration or by the inclusion
procedure), so each line of the report is an executable instance of one of
the statements the finite-model argument relies on.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from .automata import (accepts, antimirov_automaton, compose, language_equiv, language_subset,
                       word_relation)
from .errors import BudgetExceeded
from .fmp import CanonicalPipeline, interp_lower_check, interp_upper_check, word_image
from .models import check_axioms, interpret, word_interpretation
from .solver import automaton_to_system, soli, solve_automaton, solve_system
from .syntax import (Expr, Star, Times, derive, enumerate_words, initials, letters,
                     member, parse, reachset, word_expr)
from .transform import SolvedTransformations

DEFAULT_CORPUS = ("a.(b.a)*", "(a.b)*.a", "a*", "1", "0")
MAXLEN = 5


@dataclass
class SuiteLine:
    lemma: str
    instance: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""

    def __str__(self) -> str:
        tail = f"  ({self.detail})" if self.detail else ""
        return f"{self.status} {self.lemma} [{self.instance}]{tail}"


@dataclass
class SuiteReport:
    lines: list[SuiteLine] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(line.status == "FAIL" for line in self.lines)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def _words(sigma: Iterable[str], maxlen: int) -> list[str]:
    sigma = sorted(sigma)
    return ["".join(p) for k in range(maxlen + 1) for p in product(sigma, repeat=k)]


def _syntax(e: Expr, sigma, rng) -> dict[str, str | None]:
    rho = reachset(e)
    lang = enumerate_words(e, MAXLEN, alphabet=sigma)
    out: dict[str, str | None] = {}
    bad = [(x, a) for x in rho for a in sigma
           if not derive(x, a) <= rho or not reachset(x) <= rho]
    out["reachset closed under derivatives"] = f"{bad[0][0]} on {bad[0][1]}" if bad else None
    out["initials within reachset"] = None if initials(e) <= rho else "initials escape"
    out["nullable iff empty word denoted"] = (
        None if e.nullable == ("" in enumerate_words(e, 0, alphabet=sigma)) else "mismatch")
    bad_w = [w for w in _words(sigma, MAXLEN) if member(w, e) != (w in lang)]
    out["derivative membership agrees with enumeration"] = bad_w[0] if bad_w else None
    union = set().union(*(enumerate_words(x, MAXLEN, alphabet=sigma) for x in initials(e)))
    out["initials reconstruct the language"] = None if union == lang else "languages differ"
    bad = []
    for a in sigma:
        for x in derive(e, a):
            tails = enumerate_words(x, MAXLEN - 1, alphabet=sigma)
            bad += [a + w for w in tails if a + w not in lang]
    if e.nullable and "" not in lang:
        bad.append("")
    out["derivatives stay below the expression"] = repr(bad[0]) if bad else None
    return out


def _automata(e: Expr, sigma, rng) -> dict[str, str | None]:
    A = antimirov_automaton(e, sigma)
    out: dict[str, str | None] = {}
    bad = [w for w in _words(sigma, MAXLEN) if accepts(A, w) != member(w, e)]
    out["antimirov automaton accepts the language"] = repr(bad[0]) if bad else None
    letters_ = sorted(sigma)
    bad = []
    for _ in range(10):
        u = "".join(rng.choice(letters_) for _ in range(rng.randint(0, 3)))
        v = "".join(rng.choice(letters_) for _ in range(rng.randint(0, 3)))
        if word_relation(A, u + v) != compose(word_relation(A, u), word_relation(A, v)):
            bad.append(u + "|" + v)
    out["word relations compose"] = bad[0] if bad else None
    return out


def _solver(e: Expr, sigma, rng) -> dict[str, str | None]:
    A = antimirov_automaton(e, sigma)
    s = solve_automaton(A, simplify=True)
    out: dict[str, str | None] = {}
    bad = [q for q in range(A.size)
           if not language_equiv(antimirov_automaton(s[q], sigma), A.from_state(q))]
    out["least solution denotes state languages"] = A.labels[bad[0]] if bad else None
    v = language_equiv(antimirov_automaton(soli(A, simplify=True, solution=s), sigma),
                       antimirov_automaton(e, sigma))
    out["solution of antimirov automaton equals expression"] = None if v else repr(v.counterexample)
    backwards = solve_system(automaton_to_system(A), simplify=True,
                             order=list(reversed(range(A.size))))
    bad = [q for q in range(A.size)
           if not language_equiv(antimirov_automaton(s[q], sigma),
                                 antimirov_automaton(backwards[q], sigma))]
    out["pivot order does not change languages"] = A.labels[bad[0]] if bad else None
    return out


def _tuples(rng: random.Random, n: int, k: int, samples: int) -> list[tuple[int, ...]]:
    """All ``k``-tuples over ``range(n)`` when there are at most ``samples`` of
    them, otherwise ``samples`` random ones."""
    if n ** k <= samples:
        return list(product(range(n), repeat=k))
    return [tuple(rng.randrange(n) for _ in range(k)) for _ in range(samples)]


def transformation_lemmas(t: SolvedTransformations, rng: random.Random, samples: int = 12
                          ) -> dict[str, str | None]:
    """Letter, composition, shift and approximate-below lemmas, plus witness
    soundness, for the transformation automata of ``t.automaton``.

    Relations range over the transition monoid; pairs and triples are
    exhaustive when there are at most ``samples`` of them.  Returns the first
    failing instance per lemma, or ``None``.
    """
    A, m = t.automaton, t.monoid
    sigma = A.alphabet
    out: dict[str, str | None] = {}
    nfa = lambda x: antimirov_automaton(x, sigma)  # noqa: E731
    n = len(m)

    bad = [a for a in sigma if not language_subset(nfa(word_expr(a)), nfa(t.soli(m.letter(a))))]
    out["letter"] = bad[0] if bad else None

    bad = []
    for i, j in _tuples(rng, n, 2, samples):
        lhs = Times(t.soli(i), t.soli(j))
        if not language_subset(nfa(lhs), nfa(t.soli(m.multiply(i, j)))):
            bad.append(f"{m.name(i)};{m.name(j)}")
    out["compose"] = bad[0] if bad else None

    bad = []
    for r1, r2, r3 in _tuples(rng, n, 3, samples):
        lhs = t.solution(r2)[r1]
        rhs = t.solution(m.multiply(r3, r2))[m.multiply(r3, r1)]
        if not language_subset(nfa(lhs), nfa(rhs)):
            bad.append(f"{m.name(r1)},{m.name(r2)},{m.name(r3)}")
    out["shift"] = bad[0] if bad else None

    sol_a = solve_automaton(A, simplify=True)
    triples = [(i, q) for i in range(n) for (q, qf) in m.elements[i] if qf in A.finals]
    if len(triples) > samples:
        triples = rng.sample(triples, samples)
    bad = [f"{m.name(i)} at {A.labels[q]}" for i, q in triples
           if not language_subset(nfa(t.soli(i)), nfa(sol_a[q]))]
    out["approximate below"] = bad[0] if bad else None

    bad = [m.name(i) for i in range(n) if word_relation(A, m.witnesses[i]) != m.elements[i]]
    out["monoid witnesses"] = bad[0] if bad else None
    return out


def _models(e: Expr, p: CanonicalPipeline, sigma, rng) -> dict[str, str | None]:
    out: dict[str, str | None] = {}
    if p.ka.enumerable and p.ka.size <= 64:
        violations = {k: v for k, v in check_axioms(p.ka).items() if v}
        out["canonical model satisfies KA axioms"] = str(violations) if violations else None
    else:
        violations = {k: v for k, v in check_axioms(p.ka, samples=300, seed=rng.randrange(1 << 30)).items() if v}
        out["canonical model satisfies KA axioms (sampled)"] = str(violations) if violations else None
    subterms = [e, Star(e), Times(e, e)]
    bad = [str(f) for f in subterms if p.image(f) != word_image(f, p)]
    out["interpretation equals image of words"] = bad[0] if bad else None
    bad = [w for w in enumerate_words(e, MAXLEN, alphabet=sigma)
           if not p.ka.leq(p.image(word_expr(w)), p.image(e))]
    out["words sit below their expression"] = repr(bad[0]) if bad else None
    bad = []
    for w in _words(sigma, 3):
        h = word_interpretation(w, sigma)
        image = interpret(h, e)
        for i in range(len(w) + 1):
            for j in range(i, len(w) + 1):
                if ((i, j) in image) != member(w[i:j], e):
                    bad.append(f"{w}[{i}:{j}]")
    out["word model decides substrings"] = bad[0] if bad else None
    return out


def _battery(e: Expr, corpus: list[Expr], rng: random.Random) -> list[SuiteLine]:
    sigma = sorted(letters(e)) or ["a"]
    lines: list[SuiteLine] = []

    def record(group: str, results: dict[str, str | None]):
        for lemma, failure in results.items():
            lines.append(SuiteLine(f"{group}: {lemma}", str(e),
                                   "PASS" if failure is None else "FAIL", failure or ""))

    record("syntax", _syntax(e, sigma, rng))
    record("automata", _automata(e, sigma, rng))
    record("solver", _solver(e, sigma, rng))
    try:
        p = CanonicalPipeline(e, sigma)
    except BudgetExceeded as exc:
        lines.append(SuiteLine("transform/models/fmp", str(e), "SKIP", str(exc)))
        return lines
    record("transform", transformation_lemmas(p.solved, rng))
    record("models", _models(e, p, sigma, rng))
    upper = interp_upper_check(e, p)
    bad = [name for name, v in upper.items() if not v]
    record("fmp", {"interp upper": bad[0] if bad else None})
    for f in corpus:
        try:
            q = CanonicalPipeline(e, letters(e) | letters(f))
            v = interp_lower_check(e, f, q)
        except BudgetExceeded as exc:
            lines.append(SuiteLine("fmp: interp lower", f"{e} / {f}", "SKIP", str(exc)))
            continue
        lines.append(SuiteLine("fmp: interp lower", f"{e} / {f}",
                               "PASS" if v else "FAIL", "" if v else repr(v.counterexample)))
    return lines


def lemma_suite(corpus: Iterable[Expr | str] = DEFAULT_CORPUS, seed: int = 0,
                on_line: Callable[[SuiteLine], None] | None = None) -> SuiteReport:
    exprs = [parse(x) if isinstance(x, str) else x for x in corpus]
    report = SuiteReport()
    for k, e in enumerate(exprs):
        rng = random.Random(seed * 1_000_003 + k)
        try:
            lines = _battery(e, exprs, rng)
        except BudgetExceeded as exc:
            lines = [SuiteLine("all", str(e), "SKIP", str(exc))]
        for line in lines:
            report.lines.append(line)
            if on_line:
                on_line(line)
    return report

