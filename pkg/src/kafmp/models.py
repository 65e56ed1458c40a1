"""Finite Kleene algebras, interpretations of expressions, and countermodels.

Carriers are realised lazily: operations act directly on element values
(frozensets), and the full carrier is only enumerated when it is small
enough to tabulate.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping

import numpy as np

from .automata import Relation, antimirov_automaton, compose, identity, language_equiv, relation_pairs
from .errors import BudgetExceeded
from .syntax import Atom, Expr, One, Plus, Star, Times, Zero, letters
from .transform import DEFAULT_BUDGET, TransitionMonoid, transition_monoid

Element = Hashable


class FiniteKa:
    """A finite Kleene algebra given by its operations.

    ``carrier`` enumerates all elements when the algebra is small enough to
    tabulate (``None`` otherwise); ``star`` results are memoised, which is
    safe under concurrent use since every fill writes the same value.
    """

    def __init__(self, name: str, zero: Element, one: Element,
                 plus: Callable, times: Callable, star: Callable,
                 size: int, carrier: Callable[[], Iterator[Element]] | None = None,
                 show: Callable[[Element], str] = str,
                 sample: Callable[[random.Random], Element] | None = None):
        self.name = name
        self.zero, self.one = zero, one
        self._plus, self._times, self._star = plus, times, star
        self.size = size
        self._carrier = carrier
        self._star_memo: dict = {}
        self.show = show
        self._sample = sample

    def __repr__(self) -> str:
        return f"<FiniteKa {self.name} |K|={self.size}>"

    def plus(self, x, y):
        return self._plus(x, y)

    def times(self, x, y):
        return self._times(x, y)

    def star(self, x):
        r = self._star_memo.get(x)
        if r is None:
            r = self._star_memo[x] = self._star(x)
        return r

    def sample(self, rng: random.Random) -> Element:
        if self._sample is not None:
            return self._sample(rng)
        return rng.choice(self.carrier())

    def leq(self, x, y) -> bool:
        return self.plus(x, y) == y

    @property
    def enumerable(self) -> bool:
        return self._carrier is not None

    def carrier(self) -> list:
        if self._carrier is None:
            raise BudgetExceeded(f"carrier of {self.name} ({self.size} elements) is not tabulated")
        return list(self._carrier())

    def tables(self):
        """Index the carrier and return ``(elements, plus, times, star, zero, one)``
        with numpy operation tables over indices."""
        elems = self.carrier()
        ix = {x: i for i, x in enumerate(elems)}
        n = len(elems)
        P = np.empty((n, n), dtype=np.int64)
        T = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(elems):
            for j, y in enumerate(elems):
                P[i, j] = ix[self.plus(x, y)]
                T[i, j] = ix[self.times(x, y)]
        S = np.array([ix[self.star(x)] for x in elems], dtype=np.int64)
        return elems, P, T, S, ix[self.zero], ix[self.one]


@dataclass
class Interpretation:
    """An assignment of algebra elements to letters."""

    ka: FiniteKa
    assignment: Mapping[str, Element]
    meta: dict = field(default_factory=dict)

    def __call__(self, e: Expr):
        return interpret(self, e)


def interpret(h: Interpretation, e: Expr):
    """The homomorphic extension of ``h`` applied to ``e``."""
    ka = h.ka
    memo: dict[Expr, Element] = {}

    def go(x: Expr):
        r = memo.get(x)
        if r is not None:
            return r
        match x:
            case Zero():
                r = ka.zero
            case One():
                r = ka.one
            case Atom(a):
                if a not in h.assignment:
                    raise KeyError(f"letter {a!r} has no interpretation")
                r = h.assignment[a]
            case Plus(l, rr):
                r = ka.plus(go(l), go(rr))
            case Times(l, rr):
                r = ka.times(go(l), go(rr))
            case Star(y):
                r = ka.star(go(y))
        memo[x] = r
        return r

    return go(e)


def _subsets(items: list) -> Iterator[frozenset]:
    return (frozenset(c) for c in chain.from_iterable(
        combinations(items, k) for k in range(len(items) + 1)))


class PowersetKa(FiniteKa):
    """Subsets of a transition monoid, as monoid-element indices."""

    monoid: TransitionMonoid

    def relations(self, x: frozenset[int]) -> set[Relation]:
        return {self.monoid.elements[i] for i in x}


def monoid_to_ka(m: TransitionMonoid, table_limit: int = 12) -> PowersetKa:
    """Powerset lifting: union, pointwise product, and iteration closure."""

    def times(u, v):
        return frozenset(m.multiply(i, j) for i in u for j in v)

    def star(u):
        result = {m.unit}
        frontier = set(result)
        while frontier:
            frontier = {m.multiply(i, j) for i in u for j in frontier} - result
            result |= frontier
        return frozenset(result)

    def show(u):
        return "{" + ", ".join(m.name(i) for i in sorted(u)) + "}"

    idx = list(range(len(m)))

    def sample(rng):
        return frozenset(i for i in idx if rng.random() < 0.5)

    ka = PowersetKa(f"P(M{len(m)})", frozenset(), frozenset({m.unit}),
                    frozenset.union, times, star, 2 ** len(m),
                    (lambda: _subsets(idx)) if len(m) <= table_limit else None, show, sample)
    ka.monoid = m
    return ka


def canonical_model(e: Expr, alphabet: Iterable[str] = (),
                    budget: int = DEFAULT_BUDGET) -> tuple[PowersetKa, Interpretation]:
    """The powerset KA over the transition monoid of the Antimirov automaton
    of ``e``, with each letter sent to the singleton of its step relation."""
    A = antimirov_automaton(e, alphabet)
    m = transition_monoid(A, budget)
    ka = monoid_to_ka(m)
    h = Interpretation(ka, {a: frozenset({m.letter(a)}) for a in A.alphabet},
                       {"expr": str(e)})
    return ka, h


def _rt_closure(r: Relation, points: int) -> Relation:
    result = identity(points)
    while True:
        nxt = result | compose(result, r)
        if nxt == result:
            return result
        result = nxt


def relational_ka(n: int, table_limit: int = 9) -> FiniteKa:
    """Relations on ``{0..n}`` under union, composition and reflexive-transitive closure."""
    if n < 0:
        raise ValueError("n must be non-negative")
    points = n + 1
    pairs = [(i, j) for i in range(points) for j in range(points)]
    return FiniteKa(f"R({{0..{n}}})", frozenset(), identity(points),
                    frozenset.union, compose, lambda r: _rt_closure(r, points),
                    2 ** len(pairs),
                    (lambda: _subsets(pairs)) if len(pairs) <= table_limit else None,
                    lambda r: str(relation_pairs(r)),
                    lambda rng: frozenset(p for p in pairs if rng.random() < 0.3))


def word_interpretation(w: str, alphabet: Iterable[str] = ()) -> Interpretation:
    """Send each letter to the positions where it occurs in ``w``, as
    successor pairs ``(i, i+1)``."""
    ka = relational_ka(len(w))
    sigma = set(w) | set(alphabet)
    assignment = {a: frozenset((i, i + 1) for i, b in enumerate(w) if b == a) for a in sorted(sigma)}
    return Interpretation(ka, assignment, {"word": w})


@dataclass
class Countermodel:
    word: str
    model: FiniteKa
    h: Interpretation
    point: tuple[int, int]
    side: str

    @property
    def n(self) -> int:
        return len(self.word)

    def to_json(self) -> dict:
        return {"n": self.n, "word": self.word, "point": list(self.point), "in": self.side,
                "assignment": {a: relation_pairs(r) for a, r in sorted(self.h.assignment.items())}}


def countermodel_search(e: Expr, f: Expr) -> Countermodel | None:
    """``None`` when ``e`` and ``f`` denote the same language; otherwise the
    word model built from a shortest separating word."""
    sigma = letters(e) | letters(f)
    verdict = language_equiv(antimirov_automaton(e, sigma), antimirov_automaton(f, sigma))
    if verdict:
        return None
    w = verdict.counterexample
    h = word_interpretation(w, sigma)
    point = (0, len(w))
    in_e, in_f = point in interpret(h, e), point in interpret(h, f)
    if in_e == in_f:
        raise AssertionError(f"word model for {w!r} fails to separate {e} and {f}")
    return Countermodel(w, h.ka, h, point, "left" if in_e else "right")


# -- axiom battery ----------------------------------------------------------

AXIOMS = (
    "x+0=x", "x+x=x", "x+y=y+x", "x+(y+z)=(x+y)+z", "x.(y.z)=(x.y).z",
    "x.(y+z)=x.y+x.z", "(x+y).z=x.z+y.z", "x.1=x", "1.x=x", "x.0=0", "0.x=0",
    "1+x.x*=x*", "x+y.z<=z => y*.x<=z", "x*.y least fixpoint of z -> y+x.z",
)


def check_axioms(ka: FiniteKa, exhaustive_limit: int = 64, samples: int = 1000,
                 seed: int = 0) -> dict[str, int]:
    """Count violations of each KA law.

    Carriers up to ``exhaustive_limit`` are checked on every triple with
    numpy tables; larger ones on ``samples`` random triples.
    """
    if ka.enumerable and ka.size <= exhaustive_limit:
        return _check_tables(*ka.tables())
    return _check_sampled(ka, samples, seed)


def _check_tables(elems, P, T, S, zero, one) -> dict[str, int]:
    n = len(elems)
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    X, Y = np.arange(n)[:, None], np.arange(n)[None, :]
    a = np.arange(n)
    leq = P == np.arange(n)[None, :]  # leq[u, v] iff u + v = v
    out = {
        "x+0=x": int(np.sum(P[a, zero] != a)),
        "x+x=x": int(np.sum(P[a, a] != a)),
        "x+y=y+x": int(np.sum(P != P.T)),
        "x+(y+z)=(x+y)+z": int(np.sum(P[x, P[y, z]] != P[P[x, y], z])),
        "x.(y.z)=(x.y).z": int(np.sum(T[x, T[y, z]] != T[T[x, y], z])),
        "x.(y+z)=x.y+x.z": int(np.sum(T[x, P[y, z]] != P[T[x, y], T[x, z]])),
        "(x+y).z=x.z+y.z": int(np.sum(T[P[x, y], z] != P[T[x, z], T[y, z]])),
        "x.1=x": int(np.sum(T[a, one] != a)),
        "1.x=x": int(np.sum(T[one, a] != a)),
        "x.0=0": int(np.sum(T[a, zero] != zero)),
        "0.x=0": int(np.sum(T[zero, a] != zero)),
        "1+x.x*=x*": int(np.sum(P[one, T[a, S[a]]] != S[a])),
        # premise x + y.z <= z, conclusion y*.x <= z
        "x+y.z<=z => y*.x<=z": int(np.sum(
            leq[P[x, T[y, z]], z] & ~leq[T[S[y], x], z])),
    }
    # for each (x, y): x*.y is a fixpoint of z -> y + x.z and below every other fixpoint
    lfp = T[S[X], Y]
    fixed = P[Y[..., None], T[X[..., None], z]] == z  # fixed[x, y, z]
    is_fix = P[Y, T[X, lfp]] == lfp
    below = leq[lfp[..., None], z]
    out["x*.y least fixpoint of z -> y+x.z"] = int(np.sum(~is_fix) + np.sum(fixed & ~below))
    return out


def _check_sampled(ka: FiniteKa, samples: int, seed: int) -> dict[str, int]:
    rng = random.Random(seed)
    elems = ka.carrier() if ka.enumerable else None

    def draw():
        return rng.choice(elems) if elems is not None else ka.sample(rng)

    out = dict.fromkeys(AXIOMS, 0)
    p, t, s, leq = ka.plus, ka.times, ka.star, ka.leq
    zero, one = ka.zero, ka.one
    for _ in range(samples):
        x, y, z = draw(), draw(), draw()
        checks = {
            "x+0=x": p(x, zero) == x,
            "x+x=x": p(x, x) == x,
            "x+y=y+x": p(x, y) == p(y, x),
            "x+(y+z)=(x+y)+z": p(x, p(y, z)) == p(p(x, y), z),
            "x.(y.z)=(x.y).z": t(x, t(y, z)) == t(t(x, y), z),
            "x.(y+z)=x.y+x.z": t(x, p(y, z)) == p(t(x, y), t(x, z)),
            "(x+y).z=x.z+y.z": t(p(x, y), z) == p(t(x, z), t(y, z)),
            "x.1=x": t(x, one) == x,
            "1.x=x": t(one, x) == x,
            "x.0=0": t(x, zero) == zero,
            "0.x=0": t(zero, x) == zero,
            "1+x.x*=x*": p(one, t(x, s(x))) == s(x),
            "x+y.z<=z => y*.x<=z": not leq(p(x, t(y, z)), z) or leq(t(s(y), x), z),
            "x*.y least fixpoint of z -> y+x.z":
                p(y, t(x, t(s(x), y))) == t(s(x), y)
                and (p(y, t(x, z)) != z or leq(t(s(x), y), z)),
        }
        for name, ok in checks.items():
            out[name] += not ok
    return out
