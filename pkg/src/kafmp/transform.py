"""Transition monoids and transformation automata.

A transformation automaton over ``A`` reads words while tracking the relation
``delta_w`` they induce on the states of ``A``.  Only the part reachable from
the identity (the transition monoid) is materialised; the target relation is
appended as an extra, isolated state when it is not reachable.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automata import Nfa, Relation, compose, identity, step_relation
from .errors import BudgetExceeded
from .solver import solve_automaton
from .syntax import Expr

DEFAULT_BUDGET = 4096


@dataclass(eq=False)
class TransitionMonoid:
    base: Nfa
    elements: list[Relation]
    witnesses: list[str]
    generators: dict[str, Relation]
    index: dict[Relation, int]
    _products: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def unit(self) -> int:
        return 0

    def multiply(self, i: int, j: int) -> int:
        """Index of ``elements[i] ∘ elements[j]``."""
        k = self._products.get((i, j))
        if k is None:
            k = self.index[compose(self.elements[i], self.elements[j])]
            self._products[i, j] = k
        return k

    def letter(self, a: str) -> int:
        return self.index[self.generators[a]]

    def name(self, i: int) -> str:
        w = self.witnesses[i]
        if not w:
            return "id"
        return f"d_{w}" if self.elements[i] else f"d_{w}=empty"


def transition_monoid(A: Nfa, budget: int = DEFAULT_BUDGET) -> TransitionMonoid:
    """Closure of the identity under right composition with letter relations,
    in breadth-first order so each witness is the shortlex-least word."""
    generators = {a: step_relation(A, a) for a in A.alphabet}
    unit = identity(A.size)
    elements, witnesses, index = [unit], [""], {unit: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for a in A.alphabet:
            r = compose(elements[i], generators[a])
            if r not in index:
                if len(elements) >= budget:
                    raise BudgetExceeded(f"transition monoid exceeds {budget} elements")
                index[r] = len(elements)
                elements.append(r)
                witnesses.append(witnesses[i] + a)
                queue.append(index[r])
    return TransitionMonoid(A, elements, witnesses, generators, index)


@dataclass(eq=False)
class TransformationAutomaton:
    """``A[R]`` together with the relation carried by each state."""

    nfa: Nfa
    relations: list[Relation]
    target: Relation

    def state(self, r: Relation) -> int:
        return self.relations.index(r)


def transformation_automaton(A: Nfa, R: Relation, monoid: TransitionMonoid | None = None,
                             budget: int = DEFAULT_BUDGET) -> TransformationAutomaton:
    m = transition_monoid(A, budget) if monoid is None else monoid
    n = A.size
    if any(not (0 <= p < n and 0 <= q < n) for p, q in R):
        raise ValueError("relation refers to states outside the automaton")
    relations = list(m.elements)
    labels = [m.name(i) for i in range(len(relations))]
    if R not in m.index:
        relations.append(R)
        labels.append("R")
    delta = {}
    for i, r in enumerate(m.elements):
        for a in A.alphabet:
            delta[i, a] = frozenset({m.index[compose(r, m.generators[a])]})
    final = relations.index(R)
    nfa = Nfa(tuple(labels), A.alphabet, delta, frozenset({0}), frozenset({final}))
    return TransformationAutomaton(nfa, relations, R)


class SolvedTransformations:
    """The transformation automata ``A[R]`` for every ``R`` in the transition
    monoid of ``A``, solved lazily and cached by index.

    Solving uses unit rewriting and greedy pivots: with ascending pivots a
    60-state monoid can already produce expression trees of millions of nodes.
    """

    def __init__(self, A: Nfa, monoid: TransitionMonoid | None = None,
                 budget: int = DEFAULT_BUDGET):
        self.automaton = A
        self.monoid = transition_monoid(A, budget) if monoid is None else monoid
        self._solutions: dict[int, list[Expr]] = {}

    def solution(self, i: int) -> list[Expr]:
        """``sol(A[R_i])``, indexed like the monoid elements."""
        if i not in self._solutions:
            T = transformation_automaton(self.automaton, self.monoid.elements[i], self.monoid)
            self._solutions[i] = solve_automaton(T.nfa, simplify=True, order="greedy")
        return self._solutions[i]

    def soli(self, i: int) -> Expr:
        return self.solution(i)[self.monoid.unit]
