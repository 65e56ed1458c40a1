"""Regular expressions: AST, parser/printer and the partial-derivative calculus.

Expression nodes are hash-consed: building the same tree twice yields the same
object, so structural equality is identity and hashing is O(1) even for the
very large, heavily shared terms produced by state elimination.
"""
from __future__ import annotations

import string
import threading
import weakref
from functools import lru_cache
from itertools import product as _cartesian
from typing import Iterable

from .errors import BudgetExceeded, ParseError

ALPHABET = string.ascii_lowercase

#: A word is a string of single-letter actions; "" is the empty word.
Word = str
ExprSet = frozenset  # frozenset[Expr]

_intern_lock = threading.Lock()
_intern: weakref.WeakValueDictionary = weakref.WeakValueDictionary()


class Expr:
    __slots__ = ("__weakref__", "nullable", "size", "_text")

    def __new__(cls, *args):
        key = (cls, *args)
        node = _intern.get(key)
        if node is not None:
            return node
        with _intern_lock:
            node = _intern.get(key)
            if node is None:
                node = object.__new__(cls)
                node._text = None
                node._setup(*args)
                _intern[key] = node
        return node

    def __getnewargs__(self):
        return self._args()

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (type(self), self._args())

    def __add__(self, other: Expr) -> Expr:
        return Plus(self, other)

    def __mul__(self, other: Expr) -> Expr:
        return Times(self, other)

    def __str__(self) -> str:
        if self._text is None:
            _render(self)
        return self._text

    def __repr__(self) -> str:
        return f"parse({str(self)!r})"

    def __lt__(self, other: Expr) -> bool:
        return str(self) < str(other)


class Zero(Expr):
    __slots__ = ()
    __match_args__ = ()

    def _setup(self):
        self.nullable, self.size = False, 1

    def _args(self):
        return ()


class One(Expr):
    __slots__ = ()
    __match_args__ = ()

    def _setup(self):
        self.nullable, self.size = True, 1

    def _args(self):
        return ()


class Atom(Expr):
    __slots__ = ("letter",)
    __match_args__ = ("letter",)

    def _setup(self, letter: str):
        if len(letter) != 1 or letter not in ALPHABET:
            raise ValueError(f"not a letter: {letter!r}")
        self.letter = letter
        self.nullable, self.size = False, 1

    def _args(self):
        return (self.letter,)


class Plus(Expr):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")

    def _setup(self, left: Expr, right: Expr):
        self.left, self.right = left, right
        self.nullable = left.nullable or right.nullable
        self.size = 1 + left.size + right.size

    def _args(self):
        return (self.left, self.right)


class Times(Expr):
    __slots__ = ("left", "right")
    __match_args__ = ("left", "right")

    def _setup(self, left: Expr, right: Expr):
        self.left, self.right = left, right
        self.nullable = left.nullable and right.nullable
        self.size = 1 + left.size + right.size

    def _args(self):
        return (self.left, self.right)


class Star(Expr):
    __slots__ = ("inner",)
    __match_args__ = ("inner",)

    def _setup(self, inner: Expr):
        self.inner = inner
        self.nullable = True
        self.size = 1 + inner.size

    def _args(self):
        return (self.inner,)


ZERO = Zero()
ONE = One()


# -- printing ---------------------------------------------------------------

_LEVEL = {Plus: 0, Times: 1, Star: 2}


def _render(e: Expr) -> None:
    """Fill in the printed form of ``e`` and of every subterm lacking one,
    children first and without recursion, so deep trees are safe."""
    stack = [e]
    while stack:
        x = stack[-1]
        if x._text is not None:
            stack.pop()
            continue
        match x:
            case Zero():
                x._text = "0"
            case One():
                x._text = "1"
            case Atom(a):
                x._text = a
            case Plus(l, r) | Times(l, r):
                if l._text is None or r._text is None:
                    stack += [c for c in (r, l) if c._text is None]
                    continue
                if isinstance(x, Plus):
                    x._text = _wrap(l, 0) + "+" + _wrap(r, 1)
                else:
                    x._text = _wrap(l, 1) + "." + _wrap(r, 2)
            case Star(y):
                if y._text is None:
                    stack.append(y)
                    continue
                x._text = _wrap(y, 2) + "*"
        stack.pop()


def _wrap(e: Expr, level: int) -> str:
    return f"({e._text})" if _LEVEL.get(type(e), 3) < level else e._text


def show(e: Expr) -> str:
    """Render ``e`` in the concrete grammar; ``parse(show(e)) is e``."""
    return str(e)


# -- parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = [(i, c) for i, c in enumerate(text) if not c.isspace()]
        self.end = len(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k][1] if self.k < len(self.toks) else None

    def pos(self):
        return self.toks[self.k][0] if self.k < len(self.toks) else self.end

    def take(self):
        c = self.peek()
        self.k += 1
        return c

    def expr(self) -> Expr:
        e = self.prod()
        while self.peek() == "+":
            self.take()
            e = Plus(e, self.prod())
        return e

    def prod(self) -> Expr:
        e = self.star()
        while self.peek() == ".":
            self.take()
            e = Times(e, self.star())
        return e

    def star(self) -> Expr:
        e = self.atom()
        while self.peek() == "*":
            self.take()
            e = Star(e)
        return e

    def atom(self) -> Expr:
        pos, c = self.pos(), self.peek()
        if c is None:
            raise ParseError("unexpected end of input", pos)
        self.take()
        if c == "0":
            return ZERO
        if c == "1":
            return ONE
        if c in ALPHABET:
            return Atom(c)
        if c == "(":
            e = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.pos())
            self.take()
            return e
        raise ParseError(f"unexpected {c!r}", pos)


def parse(text: str) -> Expr:
    """Parse ``text``; precedence is ``*`` over ``.`` over ``+``, both binary
    operators associate to the left."""
    p = _Parser(text)
    e = p.expr()
    if p.peek() is not None:
        raise ParseError(f"unexpected {p.peek()!r}", p.pos())
    return e


# -- helpers ----------------------------------------------------------------

def word_expr(w: Word) -> Expr:
    """The word as a right-nested product; the empty word is ``1``."""
    if not w:
        return ONE
    e = Atom(w[-1])
    for x in reversed(w[:-1]):
        e = Times(Atom(x), e)
    return e


def sum_of(terms: Iterable[Expr]) -> Expr:
    """Right-nested sum in the given order; the empty sum is ``0``."""
    terms = list(terms)
    if not terms:
        return ZERO
    e = terms[-1]
    for t in reversed(terms[:-1]):
        e = Plus(t, e)
    return e


def ordered(s: Iterable[Expr]) -> list[Expr]:
    """Canonical iteration order of an expression set."""
    return sorted(s, key=str)


@lru_cache(maxsize=1 << 16)
def letters(e: Expr) -> frozenset[str]:
    match e:
        case Atom(x):
            return frozenset(x)
        case Plus(l, r) | Times(l, r):
            return letters(l) | letters(r)
        case Star(x):
            return letters(x)
    return frozenset()


def nullable(e: Expr) -> bool:
    return e.nullable


def _then(s: Iterable[Expr], tail: Expr) -> frozenset[Expr]:
    return frozenset(Times(x, tail) for x in s)


@lru_cache(maxsize=1 << 16)
def derive(e: Expr, a: str) -> ExprSet:
    """Antimirov partial derivative of ``e`` with respect to letter ``a``."""
    match e:
        case Atom(b):
            return frozenset({ONE}) if a == b else frozenset()
        case Plus(l, r):
            return derive(l, a) | derive(r, a)
        case Times(l, r):
            out = _then(derive(l, a), r)
            return out | derive(r, a) if l.nullable else out
        case Star(x):
            return _then(derive(x, a), e)
    return frozenset()


@lru_cache(maxsize=1 << 16)
def initials(e: Expr) -> ExprSet:
    match e:
        case One() | Atom():
            return frozenset({e})
        case Plus(l, r):
            return initials(l) | initials(r)
        case Times(l, r):
            return _then(initials(l), r)
        case Star(x):
            return _then(initials(x), e) | {ONE}
    return frozenset()


@lru_cache(maxsize=1 << 16)
def reachset(e: Expr) -> ExprSet:
    """Finite, derivative-closed set of expressions containing ``initials(e)``."""
    match e:
        case One():
            return frozenset({ONE})
        case Atom():
            return frozenset({e, ONE})
        case Plus(l, r):
            return reachset(l) | reachset(r)
        case Times(l, r):
            return _then(reachset(l), r) | reachset(r)
        case Star(x):
            return _then(reachset(x), e) | {ONE}
    return frozenset()


def member(w: Word, e: Expr) -> bool:
    current = frozenset({e})
    for a in w:
        current = frozenset().union(*(derive(x, a) for x in current))
        if not current:
            return False
    return any(x.nullable for x in current)


def enumerate_words(e: Expr, maxlen: int, *, alphabet: Iterable[str] | None = None,
                    max_len: int = 12, budget: int = 1 << 21) -> set[Word]:
    """All words of length at most ``maxlen`` denoted by ``e``.

    Computed by structural recursion over finite word sets, independently of
    the derivative machinery, so it can serve as a test oracle.
    """
    sigma = set(letters(e)) if alphabet is None else set(alphabet)
    universe = sum(len(sigma) ** k for k in range(maxlen + 1))
    if maxlen > max_len or universe > budget:
        raise BudgetExceeded(f"enumerating {universe} words up to length {maxlen}")
    return set(_words(e, maxlen))


def _words(e: Expr, n: int) -> frozenset[str]:
    match e:
        case Zero():
            return frozenset()
        case One():
            return frozenset({""})
        case Atom(x):
            return frozenset({x}) if n >= 1 else frozenset()
        case Plus(l, r):
            return _words(l, n) | _words(r, n)
        case Times(l, r):
            left, right = _words(l, n), _words(r, n)
            return frozenset(u + v for u, v in _cartesian(left, right) if len(u) + len(v) <= n)
        case Star(x):
            base = [u for u in _words(x, n) if u]
            result = {""}
            frontier = {""}
            while frontier:
                frontier = {u + v for u in base for v in frontier
                            if len(u) + len(v) <= n} - result
                result |= frontier
            return frozenset(result)
    raise TypeError(e)
