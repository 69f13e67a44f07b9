"""Commutable sets: finite alphabets carrying a reflexive, symmetric commuting relation.

Every structure in this package (trace words, terms, automata, machine
encodings) is parameterized by one of these alphabets.  Symbols are interned
strings with a fixed total order given by declaration order; that order is the
tie-breaker for trace normal forms and sum canonicalization everywhere else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DISCRETE = "discrete"
COMMUTATIVE = "commutative"
PAIRS = "pairs"

LEFT = "l"
RIGHT = "r"

_SIDE_SUFFIXES = ("_l", "_r")


class AlphabetError(ValueError):
    """Malformed alphabet: duplicate symbols, unknown pair members, bad mode."""


class NotDirectSumError(AlphabetError):
    """A side-aware operation was applied to an alphabet that is not a direct sum."""


@dataclass(frozen=True)
class SidedSymbol:
    """A base symbol tagged with the side it occupies in a direct sum."""

    base: str
    side: str

    def __post_init__(self) -> None:
        if self.side not in (LEFT, RIGHT):
            raise AlphabetError(f"side must be 'l' or 'r', got {self.side!r}")

    def render(self) -> str:
        return f"{self.base}_{self.side}"

    @staticmethod
    def parse(name: str) -> "SidedSymbol":
        for suffix in _SIDE_SUFFIXES:
            if name.endswith(suffix) and len(name) > 2:
                return SidedSymbol(name[:-2], suffix[-1])
        raise AlphabetError(f"not a sided symbol: {name!r}")


class CommutableSet:
    """A finite, ordered symbol set plus a reflexive symmetric commuting relation.

    Immutable after construction; safe to share across threads.  Equality is
    by value (symbols and relation), so independently constructed but
    identical alphabets are interchangeable.
    """

    __slots__ = ("symbols", "commutes", "_index", "_masks", "_sum_parts", "_hash")

    def __init__(
        self,
        symbols: Sequence[str],
        commutes: Iterable[tuple[str, str]],
        _sum_parts: tuple["CommutableSet", "CommutableSet"] | None = None,
    ) -> None:
        symbols = tuple(symbols)
        if len(set(symbols)) != len(symbols):
            raise AlphabetError("duplicate symbol in alphabet")
        for s in symbols:
            if not s or any(ch.isspace() for ch in s):
                raise AlphabetError(f"bad symbol name: {s!r}")
        relation = frozenset(commutes)
        known = set(symbols)
        for x, y in relation:
            if x not in known or y not in known:
                raise AlphabetError(f"commuting pair ({x}, {y}) mentions unknown symbol")
        for s in symbols:
            if (s, s) not in relation:
                raise AlphabetError(f"relation is not reflexive at {s}")
        for x, y in relation:
            if (y, x) not in relation:
                raise AlphabetError(f"relation is not symmetric at ({x}, {y})")
        self.symbols = symbols
        self.commutes = relation
        self._index = {s: i for i, s in enumerate(symbols)}
        masks = []
        for s in symbols:
            m = 0
            for t in symbols:
                if (s, t) in relation:
                    m |= 1 << self._index[t]
            masks.append(m)
        self._masks = tuple(masks)
        self._sum_parts = _sum_parts
        self._hash = hash((symbols, relation))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, CommutableSet):
            return NotImplemented
        return self.symbols == other.symbols and self.commutes == other.commutes

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def __repr__(self) -> str:
        return f"CommutableSet({list(self.symbols)!r}, pairs={len(self.commutes)})"

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetError(f"symbol {symbol!r} not in alphabet") from None

    def commutes_p(self, x: str, y: str) -> bool:
        if x not in self._index or y not in self._index:
            raise AlphabetError(f"symbol {x!r} or {y!r} not in alphabet")
        return (x, y) in self.commutes

    @property
    def is_discrete(self) -> bool:
        return all(x == y for x, y in self.commutes)

    @property
    def is_commutative(self) -> bool:
        return len(self.commutes) == len(self.symbols) ** 2

    # Direct-sum structure ------------------------------------------------

    @property
    def is_direct_sum(self) -> bool:
        return self._sum_parts is not None

    @property
    def left_part(self) -> "CommutableSet":
        if self._sum_parts is None:
            raise NotDirectSumError("alphabet is not a direct sum")
        return self._sum_parts[0]

    @property
    def right_part(self) -> "CommutableSet":
        if self._sum_parts is None:
            raise NotDirectSumError("alphabet is not a direct sum")
        return self._sum_parts[1]

    @property
    def left_symbols(self) -> tuple[str, ...]:
        return tuple(s for s in self.symbols if self.side_of(s) == LEFT)

    @property
    def right_symbols(self) -> tuple[str, ...]:
        return tuple(s for s in self.symbols if self.side_of(s) == RIGHT)

    def side_of(self, symbol: str) -> str:
        if self._sum_parts is None:
            raise NotDirectSumError("alphabet is not a direct sum")
        self.index(symbol)
        return SidedSymbol.parse(symbol).side

    def base_of(self, symbol: str) -> str:
        if self._sum_parts is None:
            raise NotDirectSumError("alphabet is not a direct sum")
        self.index(symbol)
        return SidedSymbol.parse(symbol).base


def make_set(
    symbols: Sequence[str],
    mode: str = DISCRETE,
    pairs: Iterable[tuple[str, str]] = (),
) -> CommutableSet:
    """Build a commutable set.

    ``discrete`` uses the identity relation, ``commutative`` the total one,
    and ``pairs`` the reflexive-symmetric closure of the given unordered
    pairs.
    """
    symbols = tuple(symbols)
    relation: set[tuple[str, str]] = {(s, s) for s in symbols}
    if mode == DISCRETE:
        if tuple(pairs):
            raise AlphabetError("pairs given but mode is discrete")
    elif mode == COMMUTATIVE:
        relation = {(x, y) for x in symbols for y in symbols}
    elif mode == PAIRS:
        known = set(symbols)
        for x, y in pairs:
            if x not in known or y not in known:
                raise AlphabetError(f"commuting pair ({x}, {y}) mentions unknown symbol")
            relation.add((x, y))
            relation.add((y, x))
    else:
        raise AlphabetError(f"unknown mode {mode!r}")
    return CommutableSet(symbols, relation)


def direct_sum(left: CommutableSet, right: CommutableSet) -> CommutableSet:
    """The sum alphabet: every left symbol commutes with every right symbol.

    Same-side pairs commute exactly when they do in the operand.  Operand
    symbols may not end in ``_l``/``_r``, so rendered sided names parse back
    unambiguously.
    """
    for operand in (left, right):
        for s in operand.symbols:
            if s.endswith(_SIDE_SUFFIXES):
                raise AlphabetError(f"operand symbol {s!r} ends in a side suffix")
    lsyms = tuple(SidedSymbol(s, LEFT).render() for s in left.symbols)
    rsyms = tuple(SidedSymbol(s, RIGHT).render() for s in right.symbols)
    relation: set[tuple[str, str]] = set()
    for x in lsyms:
        for y in rsyms:
            relation.add((x, y))
            relation.add((y, x))
    for x, xp in left.commutes:
        relation.add((f"{x}_l", f"{xp}_l"))
    for y, yp in right.commutes:
        relation.add((f"{y}_r", f"{yp}_r"))
    return CommutableSet(lsyms + rsyms, relation, _sum_parts=(left, right))


def double(alphabet: CommutableSet) -> CommutableSet:
    """The doubled alphabet, i.e. the direct sum of an alphabet with itself."""
    return direct_sum(alphabet, alphabet)


# File format ----------------------------------------------------------------
#
#   alphabet a b c
#   commute a b
#
# A single ``commute *`` line declares the commutative set.


def load_alphabet(text: str) -> CommutableSet:
    symbols: tuple[str, ...] | None = None
    pairs: list[tuple[str, str]] = []
    total = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "alphabet":
            if symbols is not None:
                raise AlphabetError(f"line {lineno}: repeated alphabet line")
            symbols = tuple(fields[1:])
        elif fields[0] == "commute":
            if fields[1:] == ["*"]:
                total = True
            elif len(fields) == 3:
                pairs.append((fields[1], fields[2]))
            else:
                raise AlphabetError(f"line {lineno}: expected 'commute x y' or 'commute *'")
        else:
            raise AlphabetError(f"line {lineno}: unknown directive {fields[0]!r}")
    if symbols is None:
        raise AlphabetError("missing alphabet line")
    if total:
        if pairs:
            raise AlphabetError("'commute *' cannot be mixed with commute pairs")
        return make_set(symbols, COMMUTATIVE)
    if pairs:
        return make_set(symbols, PAIRS, pairs)
    return make_set(symbols, DISCRETE)


def dump_alphabet(alphabet: CommutableSet) -> str:
    lines = ["alphabet " + " ".join(alphabet.symbols)]
    if alphabet.is_commutative and len(alphabet) > 1:
        lines.append("commute *")
    else:
        seen = set()
        for x in alphabet.symbols:
            for y in alphabet.symbols:
                if x != y and (x, y) in alphabet.commutes and (y, x) not in seen:
                    seen.add((x, y))
                    lines.append(f"commute {x} {y}")
    return "\n".join(lines) + "\n"
