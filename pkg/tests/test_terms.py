import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kacc.alphabet import make_set
from kacc.terms import (
    InfiniteLanguageError,
    Plus,
    TermParseError,
    Times,
    Zero,
    empty_word,
    find_word,
    finite_words,
    is_finite,
    language_upto,
    member,
    one,
    parse_term,
    plus,
    render,
    star,
    sum_of_words,
    sym,
    term_size,
    times,
    word_term,
    zero,
)
from kacc.traces import TraceWord, normalize


def words_of(term, bound):
    return {w.render() for w in language_upto(term, bound)}


def test_empty_word_cases(discrete_ab):
    X = discrete_ab
    assert empty_word(parse_term("a*", X)) == 1
    assert empty_word(parse_term("a b + 1", X)) == 1
    e = parse_term("a* b", X)
    # oracle: the empty word is not among the words of length <= 0
    assert normalize([], X) not in language_upto(e, 0)
    assert empty_word(e) == 0


def test_language_upto_star_product(discrete_ab):
    X = discrete_ab
    got = words_of(parse_term("a* b*", X), 2)
    # oracle: all a^i b^j with i + j <= 2
    oracle = {
        normalize(["a"] * i + ["b"] * j, X).render() for i in range(3) for j in range(3) if i + j <= 2
    }
    assert got == oracle == {"1", "a", "b", "a a", "a b", "b b"}


def test_language_upto_zero(discrete_ab):
    assert language_upto(zero(discrete_ab), 5) == frozenset()


def test_language_upto_commuting_star(commuting_ab):
    X = commuting_ab
    assert words_of(parse_term("(a b)*", X), 2) == {"1", "a b"}


def test_language_upto_counts_traces_once(commuting_ab):
    X = commuting_ab
    # over a commuting pair, (a b + b a) has a single word
    assert words_of(parse_term("a b + b a", X), 2) == {"a b"}


def test_member_examples(discrete_ab, commuting_ab):
    e = parse_term("a* b*", discrete_ab)
    assert member(normalize(["a", "b"], discrete_ab), e)
    ba = normalize(["b", "a"], discrete_ab)
    assert (ba in language_upto(e, 2)) is False  # oracle
    assert not member(ba, e)
    e2 = parse_term("a* b*", commuting_ab)
    ba2 = normalize(["b", "a"], commuting_ab)
    assert ba2 in language_upto(e2, 2)  # oracle
    assert member(ba2, e2)


def test_member_alphabet_mismatch(discrete_ab, commuting_ab):
    with pytest.raises(Exception):
        member(normalize(["a"], commuting_ab), parse_term("a", discrete_ab))


_ALPHABETS = [
    make_set(["a", "b", "c"]),
    make_set(["a", "b", "c"], "commutative"),
    make_set(["a", "b", "c"], "pairs", [("a", "b")]),
]


@st.composite
def raw_terms(draw, alphabet):
    depth = draw(st.integers(min_value=0, max_value=3))

    def go(d):
        if d == 0:
            return draw(
                st.sampled_from(
                    [zero(alphabet), one(alphabet)]
                    + [sym(alphabet, s) for s in alphabet.symbols]
                )
            )
        kind = draw(st.integers(min_value=0, max_value=3))
        if kind == 0:
            return plus(go(d - 1), go(d - 1))
        if kind == 1:
            return times(go(d - 1), go(d - 1))
        if kind == 2:
            return star(go(d - 1))
        return go(d - 1)

    return go(depth)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2), st.data())
def test_member_agrees_with_enumeration(alphabet_index, data):
    X = _ALPHABETS[alphabet_index]
    e = data.draw(raw_terms(X))
    letters = data.draw(st.lists(st.sampled_from(X.symbols), max_size=4))
    w = normalize(letters, X)
    assert member(w, e) == (w in language_upto(e, len(w)))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=2), st.data())
def test_empty_word_agrees_with_language(alphabet_index, data):
    X = _ALPHABETS[alphabet_index]
    e = data.draw(raw_terms(X))
    assert empty_word(e) == (1 if normalize([], X) in language_upto(e, 0) else 0)


def test_finiteness(discrete_ab):
    X = discrete_ab
    assert not is_finite(parse_term("a*", X))
    assert is_finite(parse_term("1*", X))
    assert words_of(parse_term("1*", X), 3) == {"1"}
    annihilated = parse_term("a* 0", X)
    assert isinstance(annihilated, Zero)
    assert is_finite(annihilated) and finite_words(annihilated) == frozenset()
    got = finite_words(parse_term("a (b + 1)", X))
    assert {w.render() for w in got} == {"a b", "a"}
    with pytest.raises(InfiniteLanguageError):
        finite_words(parse_term("a*", X))


def test_find_word(discrete_ab):
    X = discrete_ab
    # oracle: iterative deepening over bounded languages
    e = parse_term("a* b", X)
    n = 0
    while not language_upto(e, n):
        n += 1
    shortest = min(language_upto(e, n))
    assert shortest.render() == "b"
    assert find_word(e) == shortest
    assert find_word(parse_term("0", X)) is None
    assert find_word(parse_term("1 + a", X)).render() == "1"


def test_sum_of_words(discrete_ab):
    X = discrete_ab
    ws = [normalize(["a"], X), normalize(["a", "b"], X)]
    assert render(sum_of_words(X, ws)) == "a + a b"
    assert render(sum_of_words(X, [])) == "0"
    assert render(sum_of_words(X, [normalize([], X)])) == "1"
    assert {w.render() for w in finite_words(sum_of_words(X, ws))} == {"a", "a b"}


def test_canonicalization_laws(discrete_ab):
    X = discrete_ab
    a, b = sym(X, "a"), sym(X, "b")
    assert plus(zero(X), a) == a
    assert times(zero(X), a) == zero(X)
    assert times(a, zero(X)) == zero(X)
    assert times(one(X), a) == a
    assert times(a, one(X)) == a
    assert plus(a, a) == a
    assert plus(a, b) == plus(b, a)
    assert plus(a, plus(b, a)) == plus(a, b)
    assert times(times(a, b), a) == times(a, times(b, a))
    assert render(plus(b, a)) == "a + b"


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2), st.data())
def test_canonicalization_preserves_language(alphabet_index, data):
    X = _ALPHABETS[alphabet_index]
    e1 = data.draw(raw_terms(X))
    e2 = data.draw(raw_terms(X))
    # the two syntactic routes to the same sum and product agree
    assert plus(e1, e2) == plus(e2, e1)
    assert language_upto(plus(e1, e2), 3) == language_upto(e1, 3) | language_upto(e2, 3)
    lhs = times(plus(e1, e2), e1)
    assert language_upto(lhs, 3) == language_upto(plus(times(e1, e1), times(e2, e1)), 3)


def test_finite_term_below_universal_star(discrete_ab):
    X = discrete_ab
    universal = star(plus(sym(X, "a"), sym(X, "b")))
    for text in ["a + a b", "1 + b b", "a b a"]:
        e = parse_term(text, X)
        assert is_finite(e)
        for n in range(7):
            assert language_upto(times(e, universal), n) <= language_upto(universal, n)


def test_parse_render_round_trip(discrete_abc):
    X = discrete_abc
    for text in ["0", "1", "a", "a + b", "a b", "a.b", "(a + b) c*", "a**", "a (b + 1)*"]:
        t = parse_term(text, X)
        assert parse_term(render(t), X) == t


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=2), st.data())
def test_render_parse_identity_random(alphabet_index, data):
    X = _ALPHABETS[alphabet_index]
    e = data.draw(raw_terms(X))
    assert parse_term(render(e), X) == e


def test_parse_errors(discrete_ab):
    X = discrete_ab
    for bad in ["", "a +", "(a", "a)", "z", "a ; b", "2"]:
        with pytest.raises(TermParseError):
            parse_term(bad, X)


def test_term_size(discrete_ab):
    X = discrete_ab
    assert term_size(parse_term("a (b + 1)", X)) == 5


def test_structural_sum_order(discrete_ab):
    X = discrete_ab
    e = parse_term("a b + a + 0 + b*", X)
    assert isinstance(e, Plus)
    assert render(e) == "a + b* + a b"


def test_word_term(discrete_ab):
    X = discrete_ab
    assert render(word_term(X, ["a", "b", "a"])) == "a b a"
    assert render(word_term(X, [])) == "1"
