"""Least solutions of linear systems over expressions, by pivot elimination."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .automata import Nfa
from .syntax import ONE, ZERO, Atom, Expr, Plus, Star, Times, parse, sum_of

QVector = list  # list[Expr], indexed by state
QMatrix = list  # list[list[Expr]]


def plus(x: Expr, y: Expr, simplify: bool = False) -> Expr:
    if simplify:
        if x is ZERO:
            return y
        if y is ZERO:
            return x
    return Plus(x, y)


def times(x: Expr, y: Expr, simplify: bool = False) -> Expr:
    if simplify:
        if x is ZERO or y is ZERO:
            return ZERO
        if x is ONE:
            return y
        if y is ONE:
            return x
    return Times(x, y)


def star(x: Expr, simplify: bool = False) -> Expr:
    if simplify and x is ZERO:
        return ONE
    return Star(x)


def total(terms: Sequence[Expr], simplify: bool = False) -> Expr:
    if simplify:
        terms = [t for t in terms if t is not ZERO]
    return sum_of(terms)


@dataclass
class LinearSystem:
    labels: list[str]
    matrix: QMatrix
    vector: QVector

    def __post_init__(self):
        n = len(self.labels)
        if len(self.vector) != n or len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("matrix and vector must be indexed by the same states")

    def to_json(self) -> dict:
        return {"states": list(self.labels),
                "matrix": [[str(x) for x in row] for row in self.matrix],
                "vector": [str(x) for x in self.vector]}

    @classmethod
    def from_json(cls, data: dict) -> LinearSystem:
        return cls(list(data["states"]),
                   [[parse(x) for x in row] for row in data["matrix"]],
                   [parse(x) for x in data["vector"]])


def _live(M: QMatrix, b: QVector) -> list[int]:
    """States with a nonzero path to a nonzero entry of ``b``."""
    n = len(b)
    live = {q for q in range(n) if b[q] is not ZERO}
    frontier = list(live)
    while frontier:
        p = frontier.pop()
        for q in range(n):
            if q not in live and M[q][p] is not ZERO:
                live.add(q)
                frontier.append(q)
    return sorted(live)


def _cheapest(M: QMatrix, rest: list[int]) -> int:
    """Pivot whose elimination adds the least expression size: every
    predecessor entry is copied once per successor and vice versa, and the
    self-loop once per new entry."""
    def cost(q):
        preds = [p for p in rest if p != q and M[p][q] is not ZERO]
        succs = [r for r in rest if r != q and M[q][r] is not ZERO]
        loop = 0 if M[q][q] is ZERO else M[q][q].size
        w_in = sum(M[p][q].size for p in preds)
        w_out = sum(M[q][r].size for r in succs)
        added = (w_in * (len(succs) - 1) + w_out * (len(preds) - 1)
                 + loop * (len(preds) * len(succs) - 1))
        return added, q
    return min(rest, key=cost)


def solve_system(system: LinearSystem, *, simplify: bool = False,
                 order: Sequence[int] | str | None = None) -> QVector:
    """Vector ``s`` such that ``s . e`` is the least e-solution of the system
    for every ``e``.

    States are eliminated one at a time in ``order`` (ascending index by
    default): the pivot's self-loop is starred and folded into every other
    row, then values are recovered by back-substitution.

    With ``simplify`` the units 0 and 1 are rewritten away and states that
    cannot reach a nonzero constant are solved to 0 without elimination.
    ``order="greedy"`` picks each pivot by the number of entries it would
    create; the expressions differ but denote the same languages.
    """
    n = len(system.labels)
    greedy = order == "greedy"
    if order is None or greedy:
        order = list(range(n))
    else:
        order = list(order)
        if sorted(order) != list(range(n)):
            raise ValueError("pivot order must be a permutation of the states")
    M = [list(row) for row in system.matrix]
    b = list(system.vector)
    if simplify:
        live = set(_live(M, b))
        order = [q for q in order if q in live]
    steps = []
    rest = list(order)
    while rest:
        q = _cheapest(M, rest) if greedy else rest[0]
        rest.remove(q)
        loop = star(M[q][q], simplify)
        preds, succs = rest, rest
        if simplify:
            # zero entries contribute nothing once rewriting is on
            preds = [p for p in rest if M[p][q] is not ZERO]
            succs = [r for r in rest if M[q][r] is not ZERO]
        for p in preds:
            through = times(M[p][q], loop, simplify)
            for r in succs:
                M[p][r] = plus(M[p][r], times(through, M[q][r], simplify), simplify)
            b[p] = plus(b[p], times(through, b[q], simplify), simplify)
        steps.append((q, loop, [(p, M[q][p]) for p in succs], b[q]))

    s: list[Expr] = [ZERO] * n
    for q, loop, row, bq in reversed(steps):
        tail = total([bq] + [times(m, s[p], simplify) for p, m in row], simplify)
        s[q] = times(loop, tail, simplify)
    return s


def automaton_to_system(A: Nfa) -> LinearSystem:
    n = A.size
    matrix = [[ZERO] * n for _ in range(n)]
    for q in range(n):
        for p in range(n):
            matrix[q][p] = sum_of(Atom(a) for a in A.alphabet if p in A.successors(q, a))
    vector = [ONE if q in A.finals else ZERO for q in range(n)]
    return LinearSystem(list(A.labels), matrix, vector)


def solve_automaton(A: Nfa, *, simplify: bool = False,
                    order: Sequence[int] | str | None = None) -> QVector:
    """The least solution: entry ``q`` denotes exactly the words accepted from ``q``."""
    return solve_system(automaton_to_system(A), simplify=simplify, order=order)


def soli(A: Nfa, *, simplify: bool = False, solution: QVector | None = None) -> Expr:
    """Sum of the least solution over the initial states, in index order."""
    s = solve_automaton(A, simplify=simplify) if solution is None else solution
    return total([s[q] for q in sorted(A.initials)], simplify)


def scale(s: QVector, e: Expr) -> QVector:
    """``s . e``: the least e-solution, given the least solution ``s``."""
    return [Times(x, e) for x in s]
