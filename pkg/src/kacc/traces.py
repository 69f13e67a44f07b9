"""Trace-monoid words: strings modulo swapping adjacent commuting letters.

Each word is kept in a canonical normal form, the lexicographically least
representative of its equivalence class with respect to the alphabet's symbol
order.  Equality of trace words is therefore plain sequence equality.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .alphabet import LEFT, RIGHT, CommutableSet, NotDirectSumError, SidedSymbol, direct_sum


class WordError(ValueError):
    """Bad word operation: unknown symbol, alphabet mismatch, non-discrete prefix."""


class TraceWord:
    """A word of the trace monoid over a commutable set, in normal form."""

    __slots__ = ("alphabet", "letters", "_hash")

    def __init__(self, alphabet: CommutableSet, letters: tuple[str, ...]) -> None:
        # letters must already be in normal form; use normalize() to build safely
        self.alphabet = alphabet
        self.letters = letters
        self._hash = hash((alphabet, letters))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TraceWord):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __repr__(self) -> str:
        return f"TraceWord({self.render()!r})"

    def __lt__(self, other: "TraceWord") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        idx = self.alphabet.index
        return (len(self.letters), tuple(idx(s) for s in self.letters))

    def render(self) -> str:
        """Space-separated symbols; the empty word renders as ``1``."""
        return " ".join(self.letters) if self.letters else "1"

    @property
    def is_empty(self) -> bool:
        return not self.letters


def normal_tuple(letters: Sequence[str], alphabet: CommutableSet) -> tuple[str, ...]:
    """The lexicographically least representative, as a tuple of symbols.

    Greedy selection: at each position, pick the least symbol whose every
    earlier remaining letter commutes with it (a stable topological sort of
    the dependence order).  O(n^2) with bitmask commuting tests.
    """
    index = alphabet.index
    masks = alphabet._masks
    rem = [index(s) for s in letters]
    out: list[int] = []
    while rem:
        seen = 0
        best_pos = -1
        best_sym = -1
        for pos, j in enumerate(rem):
            if (seen & ~masks[j]) == 0 and (best_pos < 0 or j < best_sym):
                best_pos, best_sym = pos, j
                if j == 0:
                    break
            seen |= 1 << j
        out.append(best_sym)
        rem.pop(best_pos)
    syms = alphabet.symbols
    return tuple(syms[j] for j in out)


def normalize(letters: Iterable[str], alphabet: CommutableSet) -> TraceWord:
    """Canonical representative of a raw symbol sequence."""
    letters = tuple(letters)
    for s in letters:
        alphabet.index(s)
    return TraceWord(alphabet, normal_tuple(letters, alphabet))


def epsilon(alphabet: CommutableSet) -> TraceWord:
    return TraceWord(alphabet, ())


def concat(s: TraceWord, t: TraceWord) -> TraceWord:
    if s.alphabet != t.alphabet:
        raise WordError("alphabet mismatch in concat")
    return TraceWord(s.alphabet, normal_tuple(s.letters + t.letters, s.alphabet))


def project(s: TraceWord, side: str) -> TraceWord:
    """Delete the other side's letters, strip side tags, renormalize."""
    if side not in (LEFT, RIGHT):
        raise WordError(f"side must be 'l' or 'r', got {side!r}")
    alphabet = s.alphabet
    if not alphabet.is_direct_sum:
        raise NotDirectSumError("projection requires a direct-sum alphabet")
    part = alphabet.left_part if side == LEFT else alphabet.right_part
    kept = [SidedSymbol.parse(x).base for x in s.letters if alphabet.side_of(x) == side]
    return normalize(kept, part)


def pair_split(s: TraceWord) -> tuple[TraceWord, TraceWord]:
    return project(s, LEFT), project(s, RIGHT)


def pair_join(u: TraceWord, v: TraceWord) -> TraceWord:
    """Inverse of pair_split: interleave u as left letters with v as right letters."""
    joined = direct_sum(u.alphabet, v.alphabet)
    letters = [SidedSymbol(x, LEFT).render() for x in u.letters]
    letters += [SidedSymbol(y, RIGHT).render() for y in v.letters]
    return normalize(letters, joined)


def tag_word(s: TraceWord, side: str) -> TraceWord:
    """View a word over X inside the doubled alphabet, on one side only."""
    doubled = direct_sum(s.alphabet, s.alphabet)
    return normalize([SidedSymbol(x, side).render() for x in s.letters], doubled)


def embed_doubled(s: TraceWord) -> TraceWord:
    """Map each letter x to x_l x_r, producing a word over the doubled alphabet."""
    doubled = direct_sum(s.alphabet, s.alphabet)
    letters: list[str] = []
    for x in s.letters:
        letters.append(SidedSymbol(x, LEFT).render())
        letters.append(SidedSymbol(x, RIGHT).render())
    return normalize(letters, doubled)


def is_prefix(s: TraceWord, t: TraceWord) -> bool:
    """Prefix test over a discrete alphabet only."""
    _require_discrete_pair(s, t)
    return t.letters[: len(s.letters)] == s.letters


def mismatch_decompose(s: TraceWord, t: TraceWord) -> tuple[TraceWord, str, str] | None:
    """Longest common prefix and first differing letters, or None if one word
    is a prefix of the other."""
    _require_discrete_pair(s, t)
    limit = min(len(s.letters), len(t.letters))
    for i in range(limit):
        if s.letters[i] != t.letters[i]:
            prefix = TraceWord(s.alphabet, s.letters[:i])
            return prefix, s.letters[i], t.letters[i]
    return None


def _require_discrete_pair(s: TraceWord, t: TraceWord) -> None:
    if s.alphabet != t.alphabet:
        raise WordError("alphabet mismatch")
    if not s.alphabet.is_discrete:
        raise WordError("prefix and mismatch are only defined over discrete alphabets")
