"""Finite automata, their word relations, and language inclusion/equivalence."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

from .syntax import Expr, derive, initials, letters, ordered, reachset

Relation = frozenset  # frozenset[tuple[int, int]]


def identity(n: int) -> Relation:
    return frozenset((q, q) for q in range(n))


def compose(r1: Relation, r2: Relation) -> Relation:
    """Relational composition: first ``r1``, then ``r2``."""
    succ: dict[int, list[int]] = {}
    for p, q in r2:
        succ.setdefault(p, []).append(q)
    return frozenset((p, r) for p, q in r1 for r in succ.get(q, ()))


def relation_pairs(r: Relation) -> list[list[int]]:
    return [list(p) for p in sorted(r)]


@dataclass(frozen=True, eq=False)
class Nfa:
    """A nondeterministic automaton over indexed states ``0..n-1``.

    ``delta`` maps ``(state, letter)`` to successor sets; absent keys mean no
    transition.  ``labels`` are only for display.
    """

    labels: tuple[str, ...]
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[int, str], frozenset[int]]
    initials: frozenset[int]
    finals: frozenset[int]
    _succ: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.labels)
        bad = [q for q in self.initials | self.finals if not 0 <= q < n]
        for (q, a), targets in self.delta.items():
            if a not in self.alphabet:
                raise ValueError(f"letter {a!r} not in alphabet")
            bad += [p for p in (q, *targets) if not 0 <= p < n]
        if bad:
            raise ValueError(f"state index out of range: {bad[0]}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def successors(self, q: int, a: str) -> frozenset[int]:
        return self.delta.get((q, a), frozenset())

    def post(self, states: frozenset[int], a: str) -> frozenset[int]:
        key = (states, a)
        out = self._succ.get(key)
        if out is None:
            out = frozenset().union(*(self.successors(q, a) for q in states))
            self._succ[key] = out
        return out

    def transitions(self) -> list[tuple[int, str, int]]:
        return sorted((q, a, p) for (q, a), ps in self.delta.items() for p in ps)

    def from_state(self, q: int) -> Nfa:
        """The same automaton with ``q`` as its only initial state."""
        return replace(self, initials=frozenset({q}), _succ={})

    def with_alphabet(self, extra: Iterable[str]) -> Nfa:
        alphabet = tuple(sorted(set(self.alphabet) | set(extra)))
        return replace(self, alphabet=alphabet, _succ={})

    def to_json(self) -> dict:
        return {
            "states": list(self.labels),
            "alphabet": list(self.alphabet),
            "delta": [{"from": q, "letter": a, "to": sorted(ps)}
                      for (q, a), ps in sorted(self.delta.items()) if ps],
            "initial": sorted(self.initials),
            "final": sorted(self.finals),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> Nfa:
        if isinstance(data, str):
            data = json.loads(data)
        delta: dict[tuple[int, str], frozenset[int]] = {}
        for edge in data["delta"]:
            key = (int(edge["from"]), edge["letter"])
            delta[key] = delta.get(key, frozenset()) | frozenset(map(int, edge["to"]))
        alphabet = set(data.get("alphabet", ())) | {a for _, a in delta}
        return cls(tuple(map(str, data["states"])), tuple(sorted(alphabet)), delta,
                   frozenset(data["initial"]), frozenset(data["final"]))

    def to_dot(self, name: str = "A") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;"]
        for q, label in enumerate(self.labels):
            shape = "doublecircle" if q in self.finals else "circle"
            lines.append(f'  q{q} [label={json.dumps(label)}, shape={shape}];')
        for q in sorted(self.initials):
            lines.append(f"  start{q} [shape=point, style=invis];")
            lines.append(f'  start{q} -> q{q} [label=""];')
        edges: dict[tuple[int, int], list[str]] = {}
        for q, a, p in self.transitions():
            edges.setdefault((q, p), []).append(a)
        for (q, p), labs in sorted(edges.items()):
            lines.append(f'  q{q} -> q{p} [label="{",".join(labs)}"];')
        lines.append("}")
        return "\n".join(lines)


def make_nfa(n: int, edges: Iterable[tuple[int, str, int]], initial: Iterable[int],
             final: Iterable[int], labels: Iterable[str] | None = None,
             alphabet: Iterable[str] = ()) -> Nfa:
    delta: dict[tuple[int, str], frozenset[int]] = {}
    sigma = set(alphabet)
    for q, a, p in edges:
        delta[q, a] = delta.get((q, a), frozenset()) | {p}
        sigma.add(a)
    names = tuple(labels) if labels is not None else tuple(f"q{i}" for i in range(n))
    return Nfa(names, tuple(sorted(sigma)), delta, frozenset(initial), frozenset(final))


def antimirov_automaton(e: Expr, alphabet: Iterable[str] = ()) -> Nfa:
    """States are ``reachset(e)`` in canonical order, including members not
    reachable from the initial states."""
    states = ordered(reachset(e))
    index = {x: i for i, x in enumerate(states)}
    sigma = tuple(sorted(letters(e) | set(alphabet)))
    delta = {}
    for x in states:
        for a in sigma:
            ds = derive(x, a)
            if ds:
                delta[index[x], a] = frozenset(index[d] for d in ds)
    return Nfa(tuple(map(str, states)), sigma, delta,
               frozenset(index[x] for x in initials(e)),
               frozenset(i for i, x in enumerate(states) if x.nullable))


def step_relation(A: Nfa, a: str) -> Relation:
    return frozenset((q, p) for (q, b), ps in A.delta.items() if b == a for p in ps)


def word_relation(A: Nfa, w: str) -> Relation:
    r = identity(A.size)
    for a in w:
        r = compose(r, step_relation(A, a))
    return r


def accepts(A: Nfa, w: str) -> bool:
    current = A.initials
    for a in w:
        current = A.post(current, a)
    return not current.isdisjoint(A.finals)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a language comparison.

    ``counterexample`` is the shortlex-least offending word when the check
    fails; ``side`` says whose language it belongs to ("left" or "right").
    """

    holds: bool
    counterexample: str | None = None
    side: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def _search(A1: Nfa, A2: Nfa, bad) -> tuple[str, bool] | None:
    sigma = sorted(set(A1.alphabet) | set(A2.alphabet))
    start = (A1.initials, A2.initials)
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        (s1, s2), w = queue.popleft()
        acc1 = not s1.isdisjoint(A1.finals)
        acc2 = not s2.isdisjoint(A2.finals)
        if bad(acc1, acc2):
            return w, acc1
        for a in sigma:
            nxt = (A1.post(s1, a), A2.post(s2, a))
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, w + a))
    return None


def language_subset(A1: Nfa, A2: Nfa) -> Verdict:
    """Decide ``L(A1) <= L(A2)`` by exploring the product of both subset
    constructions breadth-first, letters in alphabetical order."""
    hit = _search(A1, A2, lambda x, y: x and not y)
    return Verdict(True) if hit is None else Verdict(False, hit[0], "left")


def language_equiv(A1: Nfa, A2: Nfa) -> Verdict:
    hit = _search(A1, A2, lambda x, y: x != y)
    if hit is None:
        return Verdict(True)
    return Verdict(False, hit[0], "left" if hit[1] else "right")


def expr_subset(e: Expr, f: Expr) -> Verdict:
    return language_subset(antimirov_automaton(e), antimirov_automaton(f))


def expr_equiv(e: Expr, f: Expr) -> Verdict:
    return language_equiv(antimirov_automaton(e), antimirov_automaton(f))
