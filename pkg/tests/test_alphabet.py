import pytest
from hypothesis import given, strategies as st

from kacc.alphabet import (
    AlphabetError,
    SidedSymbol,
    direct_sum,
    double,
    dump_alphabet,
    load_alphabet,
    make_set,
)


def test_make_set_discrete():
    X = make_set(["a", "b"])
    assert X.commutes == frozenset({("a", "a"), ("b", "b")})
    assert X.is_discrete and not X.is_commutative


def test_make_set_commutative():
    X = make_set(["a", "b"], "commutative")
    assert len(X.commutes) == 4
    assert X.is_commutative


def test_make_set_pairs_closure():
    X = make_set(["a", "b", "c"], "pairs", [("a", "b")])
    assert ("a", "b") in X.commutes and ("b", "a") in X.commutes
    assert len(X.commutes) == 5  # symmetric pair plus three reflexive pairs


def test_make_set_errors():
    with pytest.raises(AlphabetError):
        make_set(["a", "a"])
    with pytest.raises(AlphabetError):
        make_set(["a"], "pairs", [("a", "b")])
    with pytest.raises(AlphabetError):
        make_set(["a"], "nonsense")


def test_symbol_order_is_declaration_order():
    X = make_set(["b", "a"])
    assert X.index("b") == 0 and X.index("a") == 1


def test_direct_sum_cross_side_commutes():
    S = direct_sum(make_set(["a"]), make_set(["b"]))
    assert S.commutes_p("a_l", "b_r")


def test_direct_sum_left_side_inherits():
    S = direct_sum(make_set(["a", "b"]), make_set(["c"]))
    assert not S.commutes_p("a_l", "b_l")
    assert S.commutes_p("a_l", "a_l")


def test_direct_sum_rejects_suffixed_operands():
    with pytest.raises(AlphabetError):
        direct_sum(make_set(["a_l"]), make_set(["b"]))


def test_double_shape():
    X = make_set(["a", "b"])
    D = double(X)
    assert len(D) == 2 * len(X)
    assert set(D.symbols) == {"a_l", "a_r", "b_l", "b_r"}
    assert D.commutes_p("a_l", "a_r")
    assert not D.commutes_p("a_l", "b_l")
    for x in X.symbols:
        for y in X.symbols:
            assert D.commutes_p(f"{x}_l", f"{y}_r")
            assert D.commutes_p(f"{x}_l", f"{y}_l") == X.commutes_p(x, y)
            assert D.commutes_p(f"{x}_r", f"{y}_r") == X.commutes_p(x, y)


def test_double_empty():
    assert len(double(make_set([]))) == 0


def test_sides():
    D = double(make_set(["a", "b"]))
    assert D.side_of("a_l") == "l" and D.side_of("b_r") == "r"
    assert D.base_of("a_l") == "a"
    assert D.left_symbols == ("a_l", "b_l")
    assert D.left_part == make_set(["a", "b"])


def test_sided_symbol_round_trip():
    s = SidedSymbol("q0", "r")
    assert SidedSymbol.parse(s.render()) == s
    with pytest.raises(AlphabetError):
        SidedSymbol.parse("plain")


@st.composite
def pair_lists(draw):
    symbols = ("a", "b", "c", "d")
    n = draw(st.integers(min_value=1, max_value=4))
    syms = symbols[:n]
    pairs = draw(
        st.lists(st.tuples(st.sampled_from(syms), st.sampled_from(syms)), max_size=6)
    )
    return syms, pairs


@given(pair_lists())
def test_relation_always_reflexive_symmetric(data):
    syms, pairs = data
    X = make_set(syms, "pairs", pairs)
    for x in syms:
        assert X.commutes_p(x, x)
        for y in syms:
            assert X.commutes_p(x, y) == X.commutes_p(y, x)


def test_file_round_trip():
    X = make_set(["a", "b", "c"], "pairs", [("a", "b")])
    assert load_alphabet(dump_alphabet(X)) == X
    Y = make_set(["a", "b"], "commutative")
    assert "commute *" in dump_alphabet(Y)
    assert load_alphabet(dump_alphabet(Y)) == Y
    assert load_alphabet("alphabet a b\n# comment\ncommute a b\n") == make_set(
        ["a", "b"], "pairs", [("a", "b")]
    )


def test_file_errors():
    with pytest.raises(AlphabetError):
        load_alphabet("commute a b\n")
    with pytest.raises(AlphabetError):
        load_alphabet("alphabet a b\nfrobnicate a\n")
    with pytest.raises(AlphabetError):
        load_alphabet("alphabet a\ncommute a b\n")


def test_value_equality_across_constructions():
    X = make_set(["a", "b"])
    loaded = load_alphabet(dump_alphabet(double(X)))
    assert loaded == double(X)  # plain reload compares equal to the built sum
    assert not loaded.is_direct_sum  # but carries no side metadata
