"""Terms of the algebra of regular operations (0, 1, symbols, +, ., *) over a
commutable set, with a light canonical form, bounded language enumeration,
word membership, and finiteness analysis.

Terms are deliberately NOT quotiented by provable equality of the algebra
(that relation is undecidable); the canonical form only flattens, dedupes and
sorts sums, right-associates products, and applies the 0/1 unit and
absorption laws.  Equality is therefore syntactic equality of canonical
forms, which is decidable and cheap.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .alphabet import LEFT, RIGHT, CommutableSet, SidedSymbol, double
from .traces import TraceWord, normal_tuple

_K_ZERO, _K_ONE, _K_SYM, _K_STAR, _K_TIMES, _K_PLUS = range(6)


class TermError(ValueError):
    """Bad term construction or query: alphabet mismatch, unknown symbol."""


class InfiniteLanguageError(TermError):
    """finite_words was called on a term with an infinite language."""


class Term:
    """Base class; use the smart constructors below, never the classes directly."""

    __slots__ = ("alphabet", "_key", "_hash", "_ewp")

    def __init__(self, alphabet: CommutableSet, key: tuple, ewp: bool) -> None:
        self.alphabet = alphabet
        self._key = key
        self._hash = hash((alphabet._hash, key))
        self._ewp = ewp

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self._key == other._key and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Term") -> bool:
        return self._key < other._key

    def __repr__(self) -> str:
        return f"Term({render(self)!r})"


class Zero(Term):
    __slots__ = ()


class One(Term):
    __slots__ = ()


class Sym(Term):
    __slots__ = ("symbol",)

    def __init__(self, alphabet: CommutableSet, symbol: str) -> None:
        super().__init__(alphabet, (_K_SYM, alphabet.index(symbol)), False)
        self.symbol = symbol


class Star(Term):
    __slots__ = ("body",)

    def __init__(self, body: Term) -> None:
        super().__init__(body.alphabet, (_K_STAR, body._key), True)
        self.body = body


class Times(Term):
    """Binary product, kept right-nested; head is never Times, Zero or One."""

    __slots__ = ("head", "tail")

    def __init__(self, head: Term, tail: Term) -> None:
        super().__init__(
            head.alphabet, (_K_TIMES, head._key, tail._key), head._ewp and tail._ewp
        )
        self.head = head
        self.tail = tail


class Plus(Term):
    """Flattened sum with at least two distinct parts, sorted, no Zero."""

    __slots__ = ("parts",)

    def __init__(self, parts: tuple[Term, ...]) -> None:
        super().__init__(
            parts[0].alphabet,
            (_K_PLUS,) + tuple(p._key for p in parts),
            any(p._ewp for p in parts),
        )
        self.parts = parts


# Smart constructors ----------------------------------------------------------


def zero(alphabet: CommutableSet) -> Term:
    return Zero(alphabet, (_K_ZERO,), False)


def one(alphabet: CommutableSet) -> Term:
    return One(alphabet, (_K_ONE,), True)


def sym(alphabet: CommutableSet, symbol: str) -> Term:
    return Sym(alphabet, symbol)


def _same_alphabet(terms: Sequence[Term]) -> CommutableSet:
    alphabet = terms[0].alphabet
    for t in terms[1:]:
        if t.alphabet != alphabet:
            raise TermError("alphabet mismatch between terms")
    return alphabet


def plus(*terms: Term) -> Term:
    if not terms:
        raise TermError("plus() needs at least one operand; use ssum for empty sums")
    alphabet = _same_alphabet(terms)
    parts: dict[tuple, Term] = {}
    stack = list(reversed(terms))
    while stack:
        t = stack.pop()
        if isinstance(t, Plus):
            stack.extend(reversed(t.parts))
        elif isinstance(t, Zero):
            continue
        else:
            parts.setdefault(t._key, t)
    if not parts:
        return zero(alphabet)
    ordered = sorted(parts.values(), key=lambda t: t._key)
    if len(ordered) == 1:
        return ordered[0]
    return Plus(tuple(ordered))


def times(*terms: Term) -> Term:
    if not terms:
        raise TermError("times() needs at least one operand; use product for empty products")
    alphabet = _same_alphabet(terms)
    factors: list[Term] = []
    stack = list(reversed(terms))
    while stack:
        t = stack.pop()
        if isinstance(t, Times):
            stack.append(t.tail)
            stack.append(t.head)
        elif isinstance(t, Zero):
            return zero(alphabet)
        elif isinstance(t, One):
            continue
        else:
            factors.append(t)
    if not factors:
        return one(alphabet)
    result = factors[-1]
    for f in reversed(factors[:-1]):
        result = Times(f, result)
    return result


def star(body: Term) -> Term:
    return Star(body)


def ssum(alphabet: CommutableSet, terms: Iterable[Term]) -> Term:
    terms = tuple(terms)
    if not terms:
        return zero(alphabet)
    return plus(*terms)


def product(alphabet: CommutableSet, terms: Iterable[Term]) -> Term:
    terms = tuple(terms)
    if not terms:
        return one(alphabet)
    return times(*terms)


def word_term(alphabet: CommutableSet, letters: Iterable[str]) -> Term:
    """The product of the given symbols; the empty word gives 1."""
    return product(alphabet, [sym(alphabet, x) for x in letters])


def sum_of_words(alphabet: CommutableSet, words: Iterable[TraceWord]) -> Term:
    """View a finite set of words as the canonical sum of word products."""
    return ssum(alphabet, [word_term(alphabet, w.letters) for w in words])


# Structural queries ----------------------------------------------------------


def empty_word(term: Term) -> int:
    """1 iff the empty word belongs to the term's language (a homomorphism
    into the two-element algebra sending every symbol to 0)."""
    return 1 if term._ewp else 0


def term_size(term: Term) -> int:
    """Number of nodes in the canonical syntax tree."""
    if isinstance(term, (Zero, One, Sym)):
        return 1
    if isinstance(term, Plus):
        return 1 + sum(term_size(p) for p in term.parts)
    if isinstance(term, Times):
        return 1 + term_size(term.head) + term_size(term.tail)
    assert isinstance(term, Star)
    return 1 + term_size(term.body)


@lru_cache(maxsize=None)
def has_positive_word(term: Term) -> bool:
    """True iff the language contains a word of length >= 1."""
    if isinstance(term, (Zero, One)):
        return False
    if isinstance(term, Sym):
        return True
    if isinstance(term, Plus):
        return any(has_positive_word(p) for p in term.parts)
    if isinstance(term, Times):
        # canonical Times factors always have nonempty languages
        return has_positive_word(term.head) or has_positive_word(term.tail)
    assert isinstance(term, Star)
    return has_positive_word(term.body)


def is_finite(term: Term) -> bool:
    """True iff the term's language is finite, decided structurally."""
    if isinstance(term, (Zero, One, Sym)):
        return True
    if isinstance(term, Plus):
        return all(is_finite(p) for p in term.parts)
    if isinstance(term, Times):
        return is_finite(term.head) and is_finite(term.tail)
    assert isinstance(term, Star)
    return not has_positive_word(term.body)


@lru_cache(maxsize=None)
def _max_len(term: Term) -> int:
    if isinstance(term, (Zero, One)):
        return 0
    if isinstance(term, Sym):
        return 1
    if isinstance(term, Plus):
        return max(_max_len(p) for p in term.parts)
    if isinstance(term, Times):
        return _max_len(term.head) + _max_len(term.tail)
    assert isinstance(term, Star)
    return 0 if not has_positive_word(term.body) else -1


@lru_cache(maxsize=None)
def _min_len(term: Term) -> int | None:
    """Length of a shortest word, or None for the empty language."""
    if isinstance(term, Zero):
        return None
    if isinstance(term, (One, Star)):
        return 0
    if isinstance(term, Sym):
        return 1
    if isinstance(term, Plus):
        lens = [_min_len(p) for p in term.parts]
        lens = [n for n in lens if n is not None]
        return min(lens) if lens else None
    assert isinstance(term, Times)
    h, t = _min_len(term.head), _min_len(term.tail)
    if h is None or t is None:
        return None
    return h + t


# Bounded language enumeration -------------------------------------------------


@lru_cache(maxsize=None)
def lang_tuples(term: Term, bound: int) -> frozenset[tuple[str, ...]]:
    """All words of the language with length <= bound, as normal-form tuples.

    Star is a least fixpoint of length-bounded concatenation; termination is
    guaranteed because the universe of bounded words is finite.
    """
    if bound < 0:
        return frozenset()
    alphabet = term.alphabet
    if isinstance(term, Zero):
        return frozenset()
    if isinstance(term, One):
        return frozenset({()})
    if isinstance(term, Sym):
        return frozenset({(term.symbol,)}) if bound >= 1 else frozenset()
    if isinstance(term, Plus):
        out: set[tuple[str, ...]] = set()
        for p in term.parts:
            out |= lang_tuples(p, bound)
        return frozenset(out)
    if isinstance(term, Times):
        out = set()
        for u in lang_tuples(term.head, bound):
            for v in lang_tuples(term.tail, bound - len(u)):
                out.add(normal_tuple(u + v, alphabet))
        return frozenset(out)
    assert isinstance(term, Star)
    body = [w for w in lang_tuples(term.body, bound) if w]
    acc: set[tuple[str, ...]] = {()}
    frontier: set[tuple[str, ...]] = {()}
    while frontier:
        new: set[tuple[str, ...]] = set()
        for u in frontier:
            room = bound - len(u)
            for v in body:
                if len(v) <= room:
                    w = normal_tuple(u + v, alphabet)
                    if w not in acc:
                        new.add(w)
        acc |= new
        frontier = new
    return frozenset(acc)


def language_upto(term: Term, bound: int) -> frozenset[TraceWord]:
    """Exactly the words of the language with length <= bound, in normal form."""
    if bound < 0:
        raise TermError("bound must be nonnegative")
    alphabet = term.alphabet
    return frozenset(TraceWord(alphabet, w) for w in lang_tuples(term, bound))


def finite_words(term: Term) -> frozenset[TraceWord]:
    """The whole language of a finite term."""
    if not is_finite(term):
        raise InfiniteLanguageError(f"term has an infinite language: {render(term)}")
    return language_upto(term, _max_len(term))


def find_word(term: Term) -> TraceWord | None:
    """A shortest word of the language (ties broken by normal-form order),
    or None exactly when the language is empty."""
    n = _min_len(term)
    if n is None:
        return None
    best = min(lang_tuples(term, n), key=lambda w: (len(w), tuple(term.alphabet.index(s) for s in w)))
    return TraceWord(term.alphabet, best)


def member(s: TraceWord, term: Term) -> bool:
    """Word membership, decided by commuting-aware word derivatives."""
    if s.alphabet != term.alphabet:
        raise TermError("alphabet mismatch between word and term")
    from . import derivatives

    return derivatives.trace_member(term, s.letters)


# Homomorphisms ----------------------------------------------------------------


def transport(term: Term, target: CommutableSet, mapping: Mapping[str, Term]) -> Term:
    """Apply the homomorphism sending each symbol to the given target term."""
    if isinstance(term, Zero):
        return zero(target)
    if isinstance(term, One):
        return one(target)
    if isinstance(term, Sym):
        return mapping[term.symbol]
    if isinstance(term, Plus):
        return plus(*[transport(p, target, mapping) for p in term.parts])
    if isinstance(term, Times):
        return times(
            transport(term.head, target, mapping), transport(term.tail, target, mapping)
        )
    assert isinstance(term, Star)
    return star(transport(term.body, target, mapping))


def doubled_term(term: Term) -> Term:
    """View a term over X inside the doubled alphabet by mapping x to x_l x_r."""
    target = double(term.alphabet)
    mapping = {
        x: times(
            sym(target, SidedSymbol(x, LEFT).render()),
            sym(target, SidedSymbol(x, RIGHT).render()),
        )
        for x in term.alphabet.symbols
    }
    return transport(term, target, mapping)


def sided_term(term: Term, side: str) -> Term:
    """View a term over X inside the doubled alphabet, on one side only."""
    target = double(term.alphabet)
    mapping = {x: sym(target, SidedSymbol(x, side).render()) for x in term.alphabet.symbols}
    return transport(term, target, mapping)


# Rendering and parsing --------------------------------------------------------

_PREC_PLUS, _PREC_TIMES, _PREC_STAR, _PREC_ATOM = range(4)


def _prec(term: Term) -> int:
    if isinstance(term, Plus):
        return _PREC_PLUS
    if isinstance(term, Times):
        return _PREC_TIMES
    if isinstance(term, Star):
        return _PREC_STAR
    return _PREC_ATOM


def render(term: Term) -> str:
    """Deterministic concrete syntax: + lowest, juxtaposition for products,
    postfix * tightest."""

    def rec(t: Term, parent: int) -> str:
        if isinstance(t, Zero):
            s = "0"
        elif isinstance(t, One):
            s = "1"
        elif isinstance(t, Sym):
            s = t.symbol
        elif isinstance(t, Plus):
            s = " + ".join(rec(p, _PREC_PLUS) for p in t.parts)
        elif isinstance(t, Times):
            s = f"{rec(t.head, _PREC_TIMES)} {rec(t.tail, _PREC_TIMES)}"
        else:
            assert isinstance(t, Star)
            s = f"{rec(t.body, _PREC_STAR)}*"
        if _prec(t) < parent:
            return f"({s})"
        return s

    return rec(term, _PREC_PLUS)


class TermParseError(TermError):
    pass


_TOKEN_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|[01+.*()])")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise TermParseError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_term(text: str, alphabet: CommutableSet) -> Term:
    """Parse the concrete grammar: `0`, `1`, identifiers, `+`, juxtaposition
    or `.` for product, postfix `*`, parentheses."""
    tokens = _tokenize(text)
    pos = 0

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def advance() -> str:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_sum() -> Term:
        t = parse_product()
        while peek() == "+":
            advance()
            t = plus(t, parse_product())
        return t

    def parse_product() -> Term:
        t = parse_starred()
        while True:
            nxt = peek()
            if nxt == ".":
                advance()
                t = times(t, parse_starred())
            elif nxt is not None and nxt not in ("+", ")", "."):
                t = times(t, parse_starred())
            else:
                return t

    def parse_starred() -> Term:
        t = parse_atom()
        while peek() == "*":
            advance()
            t = star(t)
        return t

    def parse_atom() -> Term:
        tok = peek()
        if tok is None:
            raise TermParseError("unexpected end of input")
        advance()
        if tok == "0":
            return zero(alphabet)
        if tok == "1":
            return one(alphabet)
        if tok == "(":
            t = parse_sum()
            if peek() != ")":
                raise TermParseError("missing closing parenthesis")
            advance()
            return t
        if tok in ("+", ")", "*", "."):
            raise TermParseError(f"unexpected token {tok!r}")
        if tok not in alphabet:
            raise TermParseError(f"unknown symbol {tok!r}")
        return sym(alphabet, tok)

    if not tokens:
        raise TermParseError("empty term")
    t = parse_sum()
    if pos != len(tokens):
        raise TermParseError(f"trailing tokens starting at {tokens[pos]!r}")
    return t
