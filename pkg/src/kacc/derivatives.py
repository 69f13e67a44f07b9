"""Derivative calculi over terms, term automata, the expansion of a term into
bounded words plus frontier states, and bounded-output fanout certificates.

Two calculi live here.  The expansion derivative follows the plain table
(symbols only match themselves) and requires starred subterms to reject the
empty word; it feeds the automaton construction.  The commuting-aware
derivative and residue are total and let a symbol surface past commuting
prefixes; they decide word membership over the trace monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .alphabet import CommutableSet, NotDirectSumError
from .traces import TraceWord, normal_tuple
from .terms import (
    One,
    Plus,
    Star,
    Sym,
    Term,
    TermError,
    Times,
    Zero,
    find_word,
    has_positive_word,
    lang_tuples,
    one,
    plus,
    render,
    ssum,
    star,
    times,
    zero,
)


class NonDerivableStarError(TermError):
    """A starred subterm accepts the empty word, so it cannot be unfolded."""


class StateExplosionError(TermError):
    """Automaton closure exceeded the configured base-state cap."""


class UnboundedOutputError(TermError):
    """A starred subterm has a word with right letters but no left letters."""

    def __init__(self, message: str, witness: TraceWord | None = None) -> None:
        super().__init__(message)
        self.witness = witness


# Commuting-aware derivative and residue ---------------------------------------
#
# Every term decomposes uniquely (at the language level) as a + b + x.c where
# a is its restriction to the symbols commuting with x, b collects the words
# that hit a non-commuting symbol before any x can surface, and c is the
# derivative.  The triple is computed by one structural recursion; the
# residue is a + b.


@lru_cache(maxsize=None)
def _commuting_split(alphabet: CommutableSet, x: str) -> tuple[frozenset[str], frozenset[str]]:
    alphabet.index(x)
    friendly = frozenset(y for y in alphabet.symbols if y != x and alphabet.commutes_p(x, y))
    hostile = frozenset(z for z in alphabet.symbols if z != x and not alphabet.commutes_p(x, z))
    return friendly, hostile


@lru_cache(maxsize=None)
def _decompose(term: Term, x: str) -> tuple[Term, Term, Term]:
    alphabet = term.alphabet
    friendly, _ = _commuting_split(alphabet, x)
    if isinstance(term, Zero):
        z = zero(alphabet)
        return z, z, z
    if isinstance(term, One):
        return one(alphabet), zero(alphabet), zero(alphabet)
    if isinstance(term, Sym):
        z = zero(alphabet)
        if term.symbol == x:
            return z, z, one(alphabet)
        if term.symbol in friendly:
            return term, z, z
        return z, term, z
    if isinstance(term, Plus):
        triples = [_decompose(p, x) for p in term.parts]
        return (
            plus(*[t[0] for t in triples]),
            plus(*[t[1] for t in triples]),
            plus(*[t[2] for t in triples]),
        )
    if isinstance(term, Times):
        ah, bh, ch = _decompose(term.head, x)
        at, bt, ct = _decompose(term.tail, x)
        a = times(ah, at)
        b = plus(times(ah, bt), times(bh, term.tail))
        c = plus(times(ah, ct), times(ch, term.tail))
        return a, b, c
    assert isinstance(term, Star)
    ab, bb, cb = _decompose(term.body, x)
    a = star(ab)
    b = times(a, bb, term)
    c = times(a, cb, term)
    return a, b, c


def comm_derivative(term: Term, x: str) -> Term:
    """The commuting-aware derivative: its language is { s : x.s in l(term) }."""
    return _decompose(term, x)[2]


def residue(term: Term, x: str) -> Term:
    """The residue: term = residue(term, x) + x . comm_derivative(term, x)
    holds at every language bound."""
    a, b, _ = _decompose(term, x)
    return plus(a, b)


@lru_cache(maxsize=None)
def restrict(term: Term, keep: frozenset[str]) -> Term:
    """Structural map sending symbols outside ``keep`` to 0, so the language
    becomes l(term) intersected with keep*."""
    alphabet = term.alphabet
    if isinstance(term, (Zero, One)):
        return term
    if isinstance(term, Sym):
        return term if term.symbol in keep else zero(alphabet)
    if isinstance(term, Plus):
        return plus(*[restrict(p, keep) for p in term.parts])
    if isinstance(term, Times):
        return times(restrict(term.head, keep), restrict(term.tail, keep))
    assert isinstance(term, Star)
    return star(restrict(term.body, keep))


def word_derivative(term: Term, word: TraceWord) -> Term:
    """Left fold of the commuting derivative over the word's normal form."""
    if word.alphabet != term.alphabet:
        raise TermError("alphabet mismatch between word and term")
    d = term
    for letter in word.letters:
        d = comm_derivative(d, letter)
    return d


@lru_cache(maxsize=None)
def _pd_comm(term: Term, x: str) -> frozenset[Term]:
    """Commuting partial derivatives: a sum-free splitting of the derivative.

    The elements sum to comm_derivative(term, x) by distributivity; keeping
    them separate makes the per-letter cache effective, since small product
    pieces recur across many words while aggregated sums do not.
    """
    alphabet = term.alphabet
    if isinstance(term, (Zero, One)):
        return frozenset()
    if isinstance(term, Sym):
        return frozenset({one(alphabet)}) if term.symbol == x else frozenset()
    if isinstance(term, Plus):
        out: set[Term] = set()
        for p in term.parts:
            out |= _pd_comm(p, x)
        return frozenset(out)
    friendly, _ = _commuting_split(alphabet, x)
    if isinstance(term, Times):
        out = {times(d, term.tail) for d in _pd_comm(term.head, x)}
        keep = restrict(term.head, friendly)
        if not isinstance(keep, Zero):
            out |= {times(keep, d) for d in _pd_comm(term.tail, x)}
        return frozenset(out)
    assert isinstance(term, Star)
    prefix = star(restrict(term.body, friendly))
    return frozenset({times(prefix, d, term) for d in _pd_comm(term.body, x)})


@lru_cache(maxsize=None)
def _step_component_set(states: frozenset[Term], x: str) -> frozenset[Term]:
    out: set[Term] = set()
    for t in states:
        out |= _pd_comm(t, x)
    return frozenset(out)


@lru_cache(maxsize=None)
def _is_universal(term: Term) -> bool:
    """Sufficient structural test that the language contains every word."""
    if isinstance(term, Star):
        body = term.body
        return all(
            any(d._ewp for d in _pd_comm(body, x)) for x in term.alphabet.symbols
        )
    if isinstance(term, Times):
        return (_is_universal(term.head) and term.tail._ewp) or (
            term.head._ewp and _is_universal(term.tail)
        )
    if isinstance(term, Plus):
        return any(_is_universal(p) for p in term.parts)
    return False


def _front_positions(remaining: list[str], alphabet: CommutableSet) -> list[int]:
    """Positions whose letter can be spelled first: every earlier letter of
    the sequence commutes with it.  One position per distinct symbol."""
    masks = alphabet._masks
    index = alphabet.index
    seen_mask = 0
    seen_syms: set[str] = set()
    out: list[int] = []
    for pos, s in enumerate(remaining):
        j = index(s)
        if (seen_mask & ~masks[j]) == 0 and s not in seen_syms:
            out.append(pos)
        seen_mask |= 1 << j
        seen_syms.add(s)
    return out


def trace_member(term: Term, letters: tuple[str, ...]) -> bool:
    """Membership via the word derivative, evaluated summand by summand.

    The fold may follow any representative spelling of the trace (each step
    is the derivative adjunction for one letter), so when several letters are
    available at the front it picks the one that keeps the state set
    smallest; a provably universal state decides membership immediately.
    """
    alphabet = term.alphabet
    if isinstance(term, Plus):
        states = frozenset(term.parts)
    elif isinstance(term, Zero):
        states = frozenset()
    else:
        states = frozenset({term})
    remaining = list(letters)
    while True:
        if not states:
            return False
        if any(_is_universal(t) for t in states):
            return True
        if not remaining:
            return any(t._ewp for t in states)
        positions = _front_positions(remaining, alphabet)
        if len(positions) == 1:
            pos = positions[0]
            states = _step_component_set(states, remaining[pos])
        else:
            # any spelling decides membership, so pick the cheapest branch;
            # an empty successor answers False for the whole word at once
            pos = positions[0]
            best: frozenset[Term] | None = None
            for candidate in positions:
                nxt = _step_component_set(states, remaining[candidate])
                if best is None or len(nxt) < len(best):
                    pos, best = candidate, nxt
                    if not nxt:
                        break
            assert best is not None
            states = best
        remaining.pop(pos)


def word_residue(term: Term, word: TraceWord) -> Term:
    """Residue along a word: term = word_residue + word . word_derivative."""
    if word.alphabet != term.alphabet:
        raise TermError("alphabet mismatch between word and term")
    from .terms import word_term

    alphabet = term.alphabet
    acc = zero(alphabet)
    prefix: list[str] = []
    d = term
    for letter in word.letters:
        acc = plus(acc, times(word_term(alphabet, prefix), residue(d, letter)))
        d = comm_derivative(d, letter)
        prefix.append(letter)
    return acc


# Expansion derivative and term automata ----------------------------------------


@lru_cache(maxsize=None)
def _assert_derivable(term: Term) -> bool:
    """Every starred subterm must reject the empty word."""
    if isinstance(term, (Zero, One, Sym)):
        return True
    if isinstance(term, Plus):
        for p in term.parts:
            _assert_derivable(p)
        return True
    if isinstance(term, Times):
        _assert_derivable(term.head)
        _assert_derivable(term.tail)
        return True
    assert isinstance(term, Star)
    if term.body._ewp:
        raise NonDerivableStarError(
            f"starred subterm accepts the empty word: {render(term.body)}"
        )
    return _assert_derivable(term.body)


@lru_cache(maxsize=None)
def _partials(term: Term, x: str) -> frozenset[Term]:
    """Expansion-derivative summands (the nondeterministic presentation)."""
    alphabet = term.alphabet
    if isinstance(term, (Zero, One)):
        return frozenset()
    if isinstance(term, Sym):
        return frozenset({one(alphabet)}) if term.symbol == x else frozenset()
    if isinstance(term, Plus):
        out: set[Term] = set()
        for p in term.parts:
            out |= _partials(p, x)
        return frozenset(out)
    if isinstance(term, Times):
        out = {times(d, term.tail) for d in _partials(term.head, x)}
        if term.head._ewp:
            out |= _partials(term.tail, x)
        return frozenset(out)
    assert isinstance(term, Star)
    if term.body._ewp:
        raise NonDerivableStarError(
            f"starred subterm accepts the empty word: {render(term.body)}"
        )
    return frozenset(times(d, term) for d in _partials(term.body, x))


def exp_derivative(term: Term, x: str) -> Term:
    """The expansion derivative, as the canonical sum of its summands."""
    _assert_derivable(term)
    return ssum(term.alphabet, _partials(term, x))


def _components(term: Term) -> tuple[Term, ...]:
    if isinstance(term, Plus):
        return term.parts
    if isinstance(term, Zero):
        return ()
    return (term,)


@dataclass(frozen=True)
class Automaton:
    """Base states closed under expansion-derivative components.

    Arbitrary states of the generated automaton are finite sums of base
    states, represented as frozensets; the empty set is the zero state.
    """

    alphabet: CommutableSet
    start: Term
    start_states: frozenset[Term]
    base_states: tuple[Term, ...]
    delta: Mapping[tuple[Term, str], frozenset[Term]]

    def transition(self, state: Term, x: str) -> frozenset[Term]:
        return self.delta.get((state, x), frozenset())

    def step_states(self, states: Iterable[Term], x: str) -> frozenset[Term]:
        out: set[Term] = set()
        for st in states:
            out |= self.transition(st, x)
        return frozenset(out)

    def state_sum(self, states: Iterable[Term]) -> Term:
        return ssum(self.alphabet, states)

    @property
    def residue_sum(self) -> Term:
        """The greatest element of the generated automaton: the sum of all
        base states."""
        return ssum(self.alphabet, self.base_states)


DEFAULT_STATE_CAP = 10_000


def build_automaton(term: Term, cap: int = DEFAULT_STATE_CAP) -> Automaton:
    """Close {term, 1} under expansion-derivative components."""
    _assert_derivable(term)
    alphabet = term.alphabet
    start_states = frozenset(_components(term)) if not isinstance(term, Zero) else frozenset({term})
    states: set[Term] = set(start_states) | {one(alphabet)}
    delta: dict[tuple[Term, str], frozenset[Term]] = {}
    worklist = sorted(states, key=lambda t: t._key)
    while worklist:
        current = worklist.pop()
        for x in alphabet.symbols:
            targets: set[Term] = set()
            for d in _partials(current, x):
                targets.update(_components(d))
            if not targets:
                continue
            delta[(current, x)] = frozenset(targets)
            for t in targets:
                if t not in states:
                    states.add(t)
                    worklist.append(t)
                    if len(states) > cap:
                        raise StateExplosionError(
                            f"automaton exceeded {cap} base states for {render(term)}"
                        )
    return Automaton(
        alphabet=alphabet,
        start=term,
        start_states=start_states,
        base_states=tuple(sorted(states, key=lambda t: t._key)),
        delta=delta,
    )


def expand(
    term: Term, depth: int, cap: int = DEFAULT_STATE_CAP
) -> tuple[frozenset[TraceWord], tuple[tuple[TraceWord, frozenset[Term]], ...]]:
    """Unfold a finite-state term ``depth`` letters deep.

    Returns (short, frontier): the words of the language shorter than the
    depth, and for each length-``depth`` word s the set of base states whose
    sum e_s satisfies term = sum(short) + sum(s . e_s) at every language
    bound.  Frontier entries whose state set is empty are dropped.
    """
    auto = build_automaton(term, cap=cap)
    alphabet = term.alphabet
    level: dict[tuple[str, ...], frozenset[Term]] = {(): auto.start_states}
    short: set[TraceWord] = set()
    for _ in range(depth):
        nxt: dict[tuple[str, ...], set[Term]] = {}
        for word, states in level.items():
            if any(st._ewp for st in states):
                short.add(TraceWord(alphabet, word))
            for x in alphabet.symbols:
                targets = auto.step_states(states, x)
                if targets:
                    key = normal_tuple(word + (x,), alphabet)
                    nxt.setdefault(key, set()).update(targets)
        level = {w: frozenset(sts) for w, sts in nxt.items()}
    frontier = tuple(
        (TraceWord(alphabet, w), level[w])
        for w in sorted(level, key=lambda w: (len(w), tuple(alphabet.index(s) for s in w)))
    )
    return frozenset(short), frontier


# Bounded output ---------------------------------------------------------------


def _right_restriction_witness(body: Term) -> TraceWord | None:
    """A shortest nonempty right-only word of a star body, if one exists."""
    rights = frozenset(body.alphabet.right_symbols)
    pruned = restrict(body, rights)
    if not has_positive_word(pruned):
        return None
    n = 1
    while True:
        positive = [w for w in lang_tuples(pruned, n) if w]
        if positive:
            best = min(positive, key=lambda w: (len(w), tuple(body.alphabet.index(s) for s in w)))
            return TraceWord(body.alphabet, best)
        n += 1


@lru_cache(maxsize=None)
def _structural_fanout(term: Term) -> int:
    """A sound (not tight) fanout bound, from the closure rules for bounded
    output: right symbols count 1, sums take the max, products add with one
    unit of slack, and a star with left-positive body doubles its bound."""
    alphabet = term.alphabet
    if not alphabet.is_direct_sum:
        raise NotDirectSumError("fanout analysis requires a direct-sum alphabet")
    if isinstance(term, (Zero, One)):
        return 0
    if isinstance(term, Sym):
        return 1 if alphabet.side_of(term.symbol) == "r" else 0
    if isinstance(term, Plus):
        return max(_structural_fanout(p) for p in term.parts)
    if isinstance(term, Times):
        return _structural_fanout(term.head) + _structural_fanout(term.tail) + 1
    assert isinstance(term, Star)
    witness = _right_restriction_witness(term.body)
    if witness is not None:
        raise UnboundedOutputError(
            f"star body {render(term.body)} has the left-free word {witness.render()}",
            witness=witness,
        )
    return 2 * _structural_fanout(term.body)


@dataclass(frozen=True)
class FanoutCertificate:
    """Certifies |pi_r(s)| <= (|pi_l(s)| + 1) * k for every word s of the term."""

    term: Term
    k: int
    structural_bound: int
    state_left_max: int
    witness_words: tuple[tuple[Term, TraceWord], ...]

    def witness_of(self, state: Term) -> TraceWord | None:
        for st, w in self.witness_words:
            if st == state:
                return w
        return None


def _left_len(word: TraceWord) -> int:
    alphabet = word.alphabet
    return sum(1 for x in word.letters if alphabet.side_of(x) == "l")


def _right_len(word: TraceWord) -> int:
    return len(word) - _left_len(word)


def fanout_certificate(
    term: Term, sample_len: int = 8, cap: int = DEFAULT_STATE_CAP
) -> FanoutCertificate:
    """Compute a fanout bound k = (m + 1) * k0.

    k0 is the structural bound above and m the largest left length among
    chosen witness words of the nonzero automaton states.  The certificate is
    re-validated by sampling all words up to ``sample_len``.
    """
    k0 = _structural_fanout(term)
    auto = build_automaton(term, cap=cap)
    witnesses: list[tuple[Term, TraceWord]] = []
    m = 0
    for state in auto.base_states:
        if isinstance(state, Zero):
            continue
        w = find_word(state)
        assert w is not None  # nonzero canonical states have nonempty languages
        witnesses.append((state, w))
        m = max(m, _left_len(w))
    k = (m + 1) * k0
    for letters in sorted(lang_tuples(term, sample_len)):
        w = TraceWord(term.alphabet, letters)
        if _right_len(w) > (_left_len(w) + 1) * k:
            raise UnboundedOutputError(
                f"sampled word violates the certified fanout: {w.render()}", witness=w
            )
    return FanoutCertificate(
        term=term,
        k=k,
        structural_bound=k0,
        state_left_max=m,
        witness_words=tuple(witnesses),
    )


# Dump -------------------------------------------------------------------------


def automaton_dump(auto: Automaton) -> str:
    """Deterministic text dump: one base state per line, then transitions."""
    lines = [render(st) for st in auto.base_states]
    for state in auto.base_states:
        for x in auto.alphabet.symbols:
            targets = auto.transition(state, x)
            if targets:
                body = ", ".join(render(t) for t in sorted(targets, key=lambda t: t._key))
                lines.append(f"{render(state)} --{x}--> {{{body}}}")
    return "\n".join(lines) + "\n"
