import pytest

from kacc.alphabet import double, make_set
from kacc.derivatives import fanout_certificate
from kacc.machines import (
    Running,
    all_configs_term,
    config_word,
    encode_machine,
    parity_machine,
    render_machine,
)
from kacc.reduction import (
    build_instance,
    check_representable,
    eta,
    mismatch_sum,
    render_instance,
    residue_state_sum,
    residue_term,
    step_inequality_check,
    universal_star,
    write_instance,
)
from kacc.terms import (
    Plus,
    empty_word,
    language_upto,
    member,
    one,
    parse_term,
    plus,
    render,
    star,
    sym,
    times,
    word_term,
    zero,
)
from kacc.traces import normalize, tag_word


def test_instance_shape():
    m = parity_machine()
    inst = build_instance(m, 2)
    start = config_word(m, Running(2, 0, m.start))
    expected_lhs = times(
        word_term(inst.doubled_alphabet, tag_word(start, "r").letters),
        star(inst.relation),
    )
    assert inst.e_L == expected_lhs
    # the mismatch head has one summand per ordered unequal pair
    assert isinstance(inst.sigma_neq, Plus)
    k = len(inst.doubled_alphabet) // 2
    assert len(inst.sigma_neq.parts) == k * (k - 1)


def test_rho_is_below_the_universal_star():
    m = parity_machine()
    inst = build_instance(m, 0)
    top = universal_star(inst.doubled_alphabet)
    for n in range(4):
        assert language_upto(inst.rho, n) <= language_upto(top, n)
        assert language_upto(inst.e_R, n) <= language_upto(inst.e_R_sound, n)


def test_instance_rendering_deterministic():
    m = parity_machine()
    first = render_instance(build_instance(m, 2))
    build_instance.cache_clear()
    second = render_instance(build_instance(m, 2))
    assert first == second
    for label in ("E_L ", "E_R ", "RHO ", "E_R_SOUND ", "SIGMA_NEQ "):
        assert any(line.startswith(label) for line in first.splitlines())


def test_write_instance(tmp_path):
    m = parity_machine()
    paths = write_instance(build_instance(m, 1), tmp_path)
    assert [p.name for p in paths] == ["instance.terms", "alphabet.txt"]
    text = (tmp_path / "instance.terms").read_text()
    assert text == render_instance(build_instance(m, 1))
    from kacc.alphabet import load_alphabet

    assert load_alphabet((tmp_path / "alphabet.txt").read_text()) == build_instance(
        m, 1
    ).doubled_alphabet


# Residues ---------------------------------------------------------------------


def test_residue_state_sum_product():
    X = double(make_set(["a"]))
    e = times(sym(X, "a_l"), sym(X, "a_r"))
    states = residue_state_sum(e)
    for expected in (one(X), sym(X, "a_r"), e):
        for n in range(3):
            assert language_upto(expected, n) <= language_upto(states, n)


def test_residue_state_sum_zero():
    X = double(make_set(["a"]))
    assert residue_state_sum(zero(X)) == one(X)


def test_residue_contains_the_unit():
    X = double(make_set(["a", "b"]))
    for text in ["a_l a_r", "(a_l a_r)* b_r", "0"]:
        e = parse_term(text, X)
        assert empty_word(residue_state_sum(e)) == 1
        assert empty_word(residue_term(e)) == 1
        assert empty_word(residue_term(e, starred=True)) == 1


# Representability ----------------------------------------------------------------


def test_representable_parity():
    m = parity_machine()
    reports = check_representable(encode_machine(m), all_configs_term(m), 6)
    assert {r.name for r in reports} == {
        "projection-left",
        "projection-right",
        "finite-state",
        "bounded-output",
        "prefix-free",
    }
    assert all(r.passed for r in reports)


def test_representable_unbounded_output_fails():
    X = double(make_set(["a", "b"]))
    carrier = parse_term("a*", make_set(["a", "b"]))
    reports = check_representable(star(sym(X, "a_r")), carrier, 4)
    failed = {r.name: r for r in reports if not r.passed}
    assert "bounded-output" in failed
    assert failed["bounded-output"].counterexample == "a_r"


def test_representable_projection_failure():
    X = double(make_set(["a", "b"]))
    carrier = parse_term("a", make_set(["a", "b"]))
    reports = check_representable(times(sym(X, "a_l"), sym(X, "b_r")), carrier, 4)
    failed = {r.name: r for r in reports if not r.passed}
    assert "projection-right" in failed
    assert "b" in failed["projection-right"].counterexample


def test_prefix_freeness_failure_reported():
    X = double(make_set(["a", "b"]))
    carrier = parse_term("a + a a", make_set(["a", "b"]))
    reports = check_representable(times(sym(X, "a_l"), sym(X, "a_r")), carrier, 4)
    failed = {r.name for r in reports if not r.passed}
    assert "prefix-free" in failed


# Inequalities ----------------------------------------------------------------------


def test_step_inequality_parity():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    lam = {config_word(m, Running(2, 0, "q0"))}
    reports = step_inequality_check(relation, lam, cert, bound=10, iterations=2)
    assert all(r.passed for r in reports)
    names = [r.name for r in reports]
    assert "step-inequality" in names and "terminated-inequality" in names
    assert names.count("iterated-inequality") == 3


def test_step_inequality_vacuous_on_empty_set():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    reports = step_inequality_check(relation, set(), cert, bound=6, iterations=1)
    assert all(r.passed for r in reports)


def test_step_inequality_fails_with_wrong_residue():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    lam = {config_word(m, Running(2, 0, "q0"))}
    reports = step_inequality_check(
        relation, lam, cert, bound=8, iterations=0, rho=zero(relation.alphabet)
    )
    by_name = {r.name: r for r in reports}
    assert not by_name["step-inequality"].passed
    witness = by_name["step-inequality"].counterexample
    # the witness really is a left-side word that misses the right side
    assert witness is not None


# The reduction map ----------------------------------------------------------------


def test_eta_on_machine_input():
    payload = (render_machine(parity_machine()) + "input 2\n").encode()
    first, second = eta(payload)
    inst = build_instance(parity_machine(), 2)
    assert first == render(plus(inst.e_L, inst.e_R))
    assert second == render(inst.e_R)


def test_eta_malformed_inputs():
    for payload in [b"", b"garbage", b"\xff\xfe", b"start q0\nq0: halt 1\n", b"input -1"]:
        assert eta(payload) == ("0", "1")
    no_input = render_machine(parity_machine()).encode()
    assert eta(no_input) == ("0", "1")


def test_eta_deterministic_across_runs():
    payload = (render_machine(parity_machine()) + "input 1\n").encode()
    results = set()
    for _ in range(10):
        build_instance.cache_clear()
        results.add(eta(payload))
    assert len(results) == 1
