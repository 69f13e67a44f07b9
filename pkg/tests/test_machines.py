import pytest

from kacc.derivatives import fanout_certificate
from kacc.machines import (
    Halt,
    Halted,
    If,
    Inc,
    Machine,
    MachineError,
    Running,
    all_configs_term,
    config_word,
    doubled_sigma,
    doubling_machine,
    encode_instruction,
    encode_machine,
    instruction_zoo_machine,
    looping_machine,
    next_set,
    parity_machine,
    parse_machine,
    render_machine,
    run,
    running_configs_term,
    sigma,
    step,
)
from kacc.terms import language_upto, member, parse_term, plus, render, star, sym, times
from kacc.traces import normalize


def halt_only_machine(output=0):
    return Machine("halt", ("q",), "q", (("q", Halt(output)),))


# Operational semantics ----------------------------------------------------------


def test_step_inc1():
    m = Machine("m", ("q", "p"), "q", (("q", Inc(1, "p")), ("p", Halt(0))))
    assert step(m, Running(2, 1, "q")) == Running(3, 1, "p")


def test_step_inc2():
    m = Machine("m", ("q", "p"), "q", (("q", Inc(2, "p")), ("p", Halt(0))))
    assert step(m, Running(2, 1, "q")) == Running(2, 2, "p")


def test_step_if_branches():
    m = Machine(
        "m",
        ("q", "q1", "q2"),
        "q",
        (("q", If(1, "q1", "q2")), ("q1", Halt(0)), ("q2", Halt(1))),
    )
    assert step(m, Running(0, 4, "q")) == Running(0, 4, "q1")
    assert step(m, Running(3, 4, "q")) == Running(2, 4, "q2")
    m2 = Machine(
        "m2",
        ("q", "q1", "q2"),
        "q",
        (("q", If(2, "q1", "q2")), ("q1", Halt(0)), ("q2", Halt(1))),
    )
    assert step(m2, Running(4, 0, "q")) == Running(4, 0, "q1")
    assert step(m2, Running(4, 2, "q")) == Running(4, 1, "q2")


def test_step_halt_and_halted():
    m = halt_only_machine(1)
    assert step(m, Running(5, 3, "q")) == Halted(1)
    assert step(m, Halted(1)) is None


def simulate(machine, n):
    """Independent oracle: iterate the instruction table by hand."""
    table = dict(machine.instructions)
    c1, c2, q = n, 0, machine.start
    trace = [(c1, c2, q)]
    for _ in range(1000):
        instr = table[q]
        if isinstance(instr, Halt):
            return instr.output, trace
        if isinstance(instr, Inc):
            if instr.register == 1:
                c1 += 1
            else:
                c2 += 1
            q = instr.target
        else:
            value = c1 if instr.register == 1 else c2
            if value == 0:
                q = instr.when_zero
            else:
                if instr.register == 1:
                    c1 -= 1
                else:
                    c2 -= 1
                q = instr.when_positive
        trace.append((c1, c2, q))
    raise AssertionError("oracle ran out of fuel")


def test_parity_runs():
    m = parity_machine()
    out = run(m, 2)
    assert out.output == 1 and out.steps == 4
    expected_output, oracle_trace = simulate(m, 2)
    assert expected_output == 1
    got_running = [
        (c.counter1, c.counter2, c.state) for c in out.trace if isinstance(c, Running)
    ]
    assert got_running == oracle_trace
    assert run(m, 3).output == 0
    assert [config_word(m, c).render() for c in out.trace] == [
        "a a q0",
        "a q1",
        "q0",
        "qA",
        "c1",
    ]


def test_looping_machine_exhausts_fuel():
    out = run(looping_machine(), 0, fuel=10)
    assert out.output is None and out.steps == 10


def test_config_word():
    m = parity_machine()
    assert config_word(m, Running(2, 1, "q0")).render() == "a a b q0"
    assert config_word(m, Halted(0)).render() == "c0"
    assert config_word(m, Running(0, 0, "q1")).render() == "q1"


def test_config_word_injective():
    m = parity_machine()
    seen = {}
    for n in range(4):
        for k in range(4):
            for q in m.states:
                w = config_word(m, Running(n, k, q))
                assert w not in seen
                seen[w] = (n, k, q)


# Encoding ------------------------------------------------------------------------


def test_encode_halt_erases_counters():
    m = halt_only_machine(1)
    X = doubled_sigma(m)
    expected = times(
        star(sym(X, "a_l")), star(sym(X, "b_l")), sym(X, "c1_r")
    )
    assert encode_instruction(m, Halt(1)) == expected


def test_encode_if2():
    m = parity_machine()
    X = doubled_sigma(m)
    dbl_a = star(times(sym(X, "a_l"), sym(X, "a_r")))
    dbl_b = star(times(sym(X, "b_l"), sym(X, "b_r")))
    expected = plus(
        times(dbl_a, sym(X, "qA_r")),
        times(dbl_a, sym(X, "b_l"), dbl_b, sym(X, "q1_r")),
    )
    assert encode_instruction(m, If(2, "qA", "q1")) == expected


def test_encode_one_state_machine():
    m = halt_only_machine(0)
    X = doubled_sigma(m)
    expected = times(
        star(sym(X, "a_l")), star(sym(X, "b_l")), sym(X, "c0_r"), sym(X, "q_l")
    )
    assert encode_machine(m) == expected


def test_configuration_terms():
    m = parity_machine()
    X = sigma(m)
    assert render(running_configs_term(m)) == "a* b* (q0 + q1 + qA + qR)"
    assert member(normalize(["a", "a", "b", "q1"], X), running_configs_term(m))
    assert member(normalize(["c0"], X), all_configs_term(m))
    assert not member(normalize(["c0"], X), running_configs_term(m))


# The one-step image ---------------------------------------------------------------


def test_next_set_inc():
    m = Machine("m", ("q", "p"), "q", (("q", Inc(1, "p")), ("p", Halt(0))))
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    got = next_set(relation, {config_word(m, Running(1, 1, "q"))}, cert)
    assert got == frozenset({config_word(m, Running(2, 1, "p"))})


def test_next_set_halted_is_empty():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    assert next_set(relation, {config_word(m, Halted(1))}, cert) == frozenset()
    assert next_set(relation, frozenset(), cert) == frozenset()


def test_next_set_if_zero_branch():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    got = next_set(relation, {config_word(m, Running(0, 0, "q0"))}, cert)
    assert got == frozenset({config_word(m, Running(0, 0, "qA"))})


def test_encoding_agreement_all_kinds():
    m = instruction_zoo_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    for q in m.states:
        for n in range(3):
            for k in range(3):
                config = Running(n, k, q)
                want = step(m, config)
                got = next_set(relation, {config_word(m, config)}, cert)
                assert len(got) <= 1
                assert got == frozenset({config_word(m, want)})


def test_next_set_only_configurations_step():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    X = sigma(m)
    junk = [
        normalize(["q0", "a"], X),
        normalize(["b", "a", "q0"], X),
        normalize(["c0", "q0"], X),
        normalize(["a", "a"], X),
    ]
    configs = running_configs_term(m)
    for w in junk:
        image = next_set(relation, {w}, cert)
        if image:
            assert member(w, configs)
        assert not image  # none of these are well-formed configurations


def test_run_agrees_with_iterated_next_set():
    m = parity_machine()
    relation = encode_machine(m)
    cert = fanout_certificate(relation)
    for n in (0, 1, 2, 3):
        out = run(m, n, fuel=30)
        current = frozenset({config_word(m, out.trace[0])})
        for config in out.trace[1:]:
            current = next_set(relation, current, cert)
            assert current == frozenset({config_word(m, config)})
        assert next_set(relation, current, cert) == frozenset()


# Machine files ---------------------------------------------------------------------


PARITY_TEXT = """\
machine parity
start q0
q0: if 1 qA q1
q1: if 1 qR q0
qA: halt 1
qR: halt 0
"""


def test_parse_machine_round_trip():
    m = parse_machine(PARITY_TEXT)
    assert m == parity_machine()
    assert parse_machine(render_machine(m)) == m
    assert parse_machine(render_machine(doubling_machine())) == doubling_machine()


def test_parse_machine_errors():
    with pytest.raises(MachineError):
        parse_machine("q0: halt 1\n")  # no start
    with pytest.raises(MachineError):
        parse_machine("start q0\nq0: if 1 qA q1\n")  # unknown targets
    with pytest.raises(MachineError):
        parse_machine("start q0\nq0: inc 3 q0\n")  # bad register
    with pytest.raises(MachineError):
        parse_machine("start q0\nq0: halt 2\n")  # bad output
    with pytest.raises(MachineError):
        parse_machine("start a\na: halt 1\n")  # collides with counter symbol
    with pytest.raises(MachineError):
        parse_machine("start q_l\nq_l: halt 1\n")  # side suffix
    with pytest.raises(MachineError):
        parse_machine("start q\nq: halt 1\nq: halt 0\n")  # duplicate state
