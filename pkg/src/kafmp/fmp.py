"""The finite-model pipeline: canonical models, transformation automata and
the sandwich of inclusions that certifies an equivalence."""
from __future__ import annotations

import time
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .automata import (Nfa, Relation, Verdict, antimirov_automaton, language_subset,
                       relation_pairs)
from .errors import BudgetExceeded
from .models import PowersetKa, canonical_model, interpret
from .syntax import Expr, letters, reachset, sum_of
from .transform import DEFAULT_BUDGET, SolvedTransformations

MAX_STATES = 10


class CanonicalPipeline:
    """Everything derived from one expression ``e``: its Antimirov automaton,
    the powerset model over that automaton's transition monoid, and the
    solved transformation automata (computed on demand, cached)."""

    def __init__(self, e: Expr, alphabet: Iterable[str] = (), *,
                 max_states: int = MAX_STATES, budget: int = DEFAULT_BUDGET):
        if len(reachset(e)) > max_states:
            raise BudgetExceeded(f"{e} has {len(reachset(e))} derivative states (limit {max_states})")
        self.e = e
        self.ka: PowersetKa
        self.ka, self.h = canonical_model(e, alphabet, budget)
        self.monoid = self.ka.monoid
        self.automaton: Nfa = self.monoid.base
        self.solved = SolvedTransformations(self.automaton, self.monoid)

    def image(self, f: Expr) -> frozenset[int]:
        return interpret(self.h, f)

    def relations(self, image: frozenset[int]) -> list[Relation]:
        """The relations of an interpretation, in canonical (sorted pair) order."""
        return sorted((self.monoid.elements[i] for i in image), key=relation_pairs)

    def soli(self, i: int) -> Expr:
        return self.solved.soli(i)

    def middle(self, f: Expr) -> Expr:
        """Sum of the solved transformation automata over the image of ``f``."""
        image = self.image(f)
        order = sorted(image, key=lambda i: relation_pairs(self.monoid.elements[i]))
        return sum_of(self.soli(i) for i in order)


def word_image(f: Expr, pipeline: CanonicalPipeline) -> frozenset[int]:
    """``{delta_w : w in L(f)}`` as monoid indices, by exploring the product of
    the subset construction for ``f`` with the transition monoid."""
    A = antimirov_automaton(f, pipeline.automaton.alphabet)
    m = pipeline.monoid
    start = (A.initials, m.unit)
    seen, queue, found = {start}, deque([start]), set()
    while queue:
        states, i = queue.popleft()
        if not states.isdisjoint(A.finals):
            found.add(i)
        for a in A.alphabet:
            nxt = (A.post(states, a), m.multiply(i, m.letter(a)))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(found)


def _alphabet(*exprs: Expr) -> frozenset[str]:
    return frozenset().union(*(letters(x) for x in exprs))


def interp_upper_check(e: Expr, pipeline: CanonicalPipeline | None = None) -> dict[str, Verdict]:
    """For each relation ``R`` in the image of ``e`` under its canonical
    interpretation: every word of the solved ``A_e[R]`` is a word of ``e``."""
    p = pipeline or CanonicalPipeline(e)
    A_e = antimirov_automaton(e, p.automaton.alphabet)
    out = {}
    for i in sorted(p.image(e), key=lambda i: relation_pairs(p.monoid.elements[i])):
        out[p.monoid.name(i)] = language_subset(
            antimirov_automaton(p.soli(i), p.automaton.alphabet), A_e)
    return out


def interp_lower_check(e: Expr, f: Expr, pipeline: CanonicalPipeline | None = None) -> Verdict:
    """``f`` is contained in the sum of solved transformation automata over
    the image of ``f`` in the canonical model of ``e``."""
    p = pipeline or CanonicalPipeline(e, letters(f))
    sigma = p.automaton.alphabet
    return language_subset(antimirov_automaton(f, sigma), antimirov_automaton(p.middle(f), sigma))


@dataclass
class FmpReport:
    e: str
    f: str
    image_e: dict[str, list] = field(default_factory=dict)
    image_f: dict[str, list] = field(default_factory=dict)
    middles: dict[str, str] = field(default_factory=dict)
    preconditions: dict[str, bool] = field(default_factory=dict)
    checks: dict[str, dict] = field(default_factory=dict)
    certified: bool = False
    metrics: dict[str, float] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.certified:
            return "equivalent (certified: language completeness + FMP pipeline)"
        if not all(self.preconditions.values()):
            return "separated by a canonical finite model"
        return "FMP inclusion failed"

    def verdicts(self) -> dict:
        return {"preconditions": self.preconditions,
                "checks": {k: v["holds"] for k, v in self.checks.items()},
                "certified": self.certified}

    def to_json(self) -> dict:
        out = asdict(self)
        out["status"] = self.status
        return out


def fmp_sandwich(e: Expr, f: Expr, *, max_states: int = MAX_STATES,
                 budget: int = DEFAULT_BUDGET) -> FmpReport:
    """Run the finite-model argument in both directions.

    In the canonical model of ``e`` the images of ``e`` and ``f`` must agree;
    then ``f <= middle <= e`` where ``middle`` sums the solved transformation
    automata over that image.  Symmetrically with the roles swapped.  All
    inclusions are decided on languages.
    """
    start = time.perf_counter()
    sigma = _alphabet(e, f)
    report = FmpReport(str(e), str(f))
    for tag, lhs, rhs in (("e", e, f), ("f", f, e)):
        p = CanonicalPipeline(lhs, sigma, max_states=max_states, budget=budget)
        img_l, img_r = p.image(lhs), p.image(rhs)
        report.image_e[f"K_{tag}"] = [relation_pairs(r) for r in p.relations(img_l if tag == "e" else img_r)]
        report.image_f[f"K_{tag}"] = [relation_pairs(r) for r in p.relations(img_r if tag == "e" else img_l)]
        report.metrics[f"monoid_{tag}"] = len(p.monoid)
        same = img_l == img_r
        report.preconditions[f"K_{tag}"] = same
        if not same:
            continue
        mid = p.middle(rhs)
        report.middles[f"K_{tag}"] = str(mid)
        report.metrics[f"middle_size_{tag}"] = mid.size
        A_l, A_r, A_m = (antimirov_automaton(x, p.automaton.alphabet) for x in (lhs, rhs, mid))
        lower, upper = language_subset(A_r, A_m), language_subset(A_m, A_l)
        report.checks[f"{rhs} <= middle_{tag}"] = asdict(lower)
        report.checks[f"middle_{tag} <= {lhs}"] = asdict(upper)
    report.certified = (all(report.preconditions.values())
                        and len(report.checks) == 4
                        and all(v["holds"] for v in report.checks.values()))
    report.metrics["seconds"] = time.perf_counter() - start
    return report
