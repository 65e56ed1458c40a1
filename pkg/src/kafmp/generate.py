"""Random expressions, automata and language-preserving rewrites."""
from __future__ import annotations

import random
from typing import Callable

from .automata import Nfa, make_nfa
from .syntax import ONE, ZERO, Atom, Expr, Plus, Star, Times


def random_expr(rng: random.Random, size: int, alphabet: str = "ab") -> Expr:
    """An expression with exactly ``size`` AST nodes."""
    if size <= 1:
        r = rng.random()
        if r < 0.1:
            return ZERO
        if r < 0.2:
            return ONE
        return Atom(rng.choice(alphabet))
    if size == 2 or rng.random() < 0.2:
        return Star(random_expr(rng, size - 1, alphabet))
    k = rng.randint(1, size - 2)
    node = Plus if rng.random() < 0.5 else Times
    return node(random_expr(rng, k, alphabet), random_expr(rng, size - 1 - k, alphabet))


def random_nfa(rng: random.Random, max_states: int = 5, alphabet: str = "ab",
               density: float = 0.3) -> Nfa:
    n = rng.randint(1, max_states)
    edges = [(q, a, p) for q in range(n) for a in alphabet for p in range(n)
             if rng.random() < density]
    return make_nfa(n, edges,
                    [q for q in range(n) if rng.random() < 0.4],
                    [q for q in range(n) if rng.random() < 0.4],
                    alphabet=alphabet)


def _rewrites(e: Expr) -> list[Expr]:
    """One-step rewrites of ``e`` at the root that preserve its language."""
    out = [Plus(e, ZERO), Times(ONE, e), Times(e, ONE), Plus(e, e)]
    match e:
        case Plus(x, y):
            out.append(Plus(y, x))
            if isinstance(y, Plus):
                out.append(Plus(Plus(x, y.left), y.right))
            if y is ZERO:
                out.append(x)
        case Times(x, y):
            if isinstance(y, Times):
                out.append(Times(Times(x, y.left), y.right))
            if isinstance(x, Times):
                out.append(Times(x.left, Times(x.right, y)))
            if isinstance(y, Plus):
                out.append(Plus(Times(x, y.left), Times(x, y.right)))
            if isinstance(x, Plus):
                out.append(Plus(Times(x.left, y), Times(x.right, y)))
            if isinstance(x, Star) and isinstance(x.inner, Times) and y is x.inner.left:
                # (u.v)*.u = u.(v.u)*
                u, v = x.inner.left, x.inner.right
                out.append(Times(u, Star(Times(v, u))))
        case Star(x):
            out += [Plus(ONE, Times(x, e)), Plus(ONE, Times(e, x)), Times(e, e),
                    Star(e), Star(Plus(ONE, x))]
            if isinstance(x, Plus):
                out.append(Star(Times(Star(x.left), Star(x.right))))
    return out


def _positions(e: Expr) -> list[tuple[Expr, Callable[[Expr], Expr]]]:
    """Every subterm with a function that replaces it in ``e``."""
    found = [(e, lambda new: new)]
    match e:
        case Plus(l, r) | Times(l, r):
            cls = type(e)
            found += [(s, lambda new, f=f: cls(f(new), r)) for s, f in _positions(l)]
            found += [(s, lambda new, f=f: cls(l, f(new))) for s, f in _positions(r)]
        case Star(x):
            found += [(s, lambda new, f=f: Star(f(new))) for s, f in _positions(x)]
    return found


def equivalent_variant(rng: random.Random, e: Expr, steps: int = 3, max_size: int = 40) -> Expr:
    """Apply ``steps`` random language-preserving rewrites to ``e``."""
    for _ in range(steps):
        sub, plug = rng.choice(_positions(e))
        candidate = plug(rng.choice(_rewrites(sub)))
        if candidate.size <= max_size:
            e = candidate
    return e
