"""Two-counter machines: definitions, operational semantics, and the term
encoding of the transition relation over the doubled configuration alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

from .alphabet import CommutableSet, SidedSymbol, double, make_set
from .derivatives import FanoutCertificate, comm_derivative, restrict
from .terms import Term, Zero, lang_tuples, plus, ssum, star, sym, times
from .traces import TraceWord, normalize

COUNTER_SYMBOLS = ("a", "b", "c0", "c1")


class MachineError(ValueError):
    """Malformed machine description."""


@dataclass(frozen=True)
class Inc:
    register: int
    target: str


@dataclass(frozen=True)
class If:
    """Branch on a counter: go to ``when_zero`` if it is 0, else decrement
    and go to ``when_positive``."""

    register: int
    when_zero: str
    when_positive: str


@dataclass(frozen=True)
class Halt:
    output: int


Instruction = Union[Inc, If, Halt]


@dataclass(frozen=True)
class Machine:
    name: str
    states: tuple[str, ...]
    start: str
    instructions: tuple[tuple[str, Instruction], ...]

    def __post_init__(self) -> None:
        table = dict(self.instructions)
        if set(table) != set(self.states) or len(table) != len(self.states):
            raise MachineError("every state needs exactly one instruction")
        if self.start not in table:
            raise MachineError(f"start state {self.start!r} is not defined")
        for state, instr in self.instructions:
            if isinstance(instr, (Inc, If)) and instr.register not in (1, 2):
                raise MachineError(f"register of {state} must be 1 or 2")
            if isinstance(instr, Halt) and instr.output not in (0, 1):
                raise MachineError(f"halt output of {state} must be 0 or 1")
            targets = []
            if isinstance(instr, Inc):
                targets = [instr.target]
            elif isinstance(instr, If):
                targets = [instr.when_zero, instr.when_positive]
            for t in targets:
                if t not in table:
                    raise MachineError(f"instruction of {state} references unknown state {t!r}")
        for state in self.states:
            if state in COUNTER_SYMBOLS:
                raise MachineError(f"state name {state!r} collides with a counter symbol")
            if state.endswith(("_l", "_r")):
                raise MachineError(f"state name {state!r} may not end in a side suffix")

    def instruction(self, state: str) -> Instruction:
        return dict(self.instructions)[state]


@dataclass(frozen=True)
class Running:
    counter1: int
    counter2: int
    state: str


@dataclass(frozen=True)
class Halted:
    output: int


Config = Union[Running, Halted]


def step(machine: Machine, config: Config) -> Config | None:
    """One transition; halted configurations do not step."""
    if isinstance(config, Halted):
        return None
    n, m, q = config.counter1, config.counter2, config.state
    instr = machine.instruction(q)
    if isinstance(instr, Inc):
        if instr.register == 1:
            return Running(n + 1, m, instr.target)
        return Running(n, m + 1, instr.target)
    if isinstance(instr, If):
        value = n if instr.register == 1 else m
        if value == 0:
            return Running(n, m, instr.when_zero)
        if instr.register == 1:
            return Running(n - 1, m, instr.when_positive)
        return Running(n, m - 1, instr.when_positive)
    assert isinstance(instr, Halt)
    return Halted(instr.output)


@dataclass(frozen=True)
class RunOutcome:
    trace: tuple[Config, ...]
    steps: int
    output: int | None  # None exactly when fuel ran out

    @property
    def halted(self) -> bool:
        return self.output is not None

    @property
    def last(self) -> Config:
        return self.trace[-1]


def run(machine: Machine, n: int, fuel: int = 100_000) -> RunOutcome:
    """Iterate from counters (n, 0) in the start state, recording the trace."""
    if n < 0:
        raise MachineError("input must be a natural number")
    config: Config = Running(n, 0, machine.start)
    trace = [config]
    for used in range(fuel):
        nxt = step(machine, config)
        if nxt is None:
            assert isinstance(config, Halted)
            return RunOutcome(tuple(trace), used, config.output)
        config = nxt
        trace.append(config)
        if isinstance(config, Halted):
            return RunOutcome(tuple(trace), used + 1, config.output)
    return RunOutcome(tuple(trace), fuel, None)


# Configuration alphabet and words ----------------------------------------------


@lru_cache(maxsize=None)
def sigma(machine: Machine) -> CommutableSet:
    """The discrete configuration alphabet: the states, then a b c0 c1."""
    return make_set(machine.states + COUNTER_SYMBOLS)


@lru_cache(maxsize=None)
def doubled_sigma(machine: Machine) -> CommutableSet:
    return double(sigma(machine))


def config_word(machine: Machine, config: Config) -> TraceWord:
    """Running(n, m, q) renders as a^n b^m q; Halted(x) as c_x."""
    alphabet = sigma(machine)
    if isinstance(config, Halted):
        return normalize([f"c{config.output}"], alphabet)
    letters = ["a"] * config.counter1 + ["b"] * config.counter2 + [config.state]
    return normalize(letters, alphabet)


def running_configs_term(machine: Machine) -> Term:
    """a* b* Q, the running configurations, as a term over the base alphabet."""
    alphabet = sigma(machine)
    states = ssum(alphabet, [sym(alphabet, q) for q in machine.states])
    return times(star(sym(alphabet, "a")), star(sym(alphabet, "b")), states)


def all_configs_term(machine: Machine) -> Term:
    """Running configurations plus the two halt symbols."""
    alphabet = sigma(machine)
    return plus(running_configs_term(machine), sym(alphabet, "c0"), sym(alphabet, "c1"))


# Encoding -----------------------------------------------------------------------


def _dbl(machine: Machine, base: str) -> Term:
    """A base symbol viewed in the doubled alphabet as x_l x_r."""
    alphabet = doubled_sigma(machine)
    return times(
        sym(alphabet, SidedSymbol(base, "l").render()),
        sym(alphabet, SidedSymbol(base, "r").render()),
    )


def _side(machine: Machine, base: str, side: str) -> Term:
    return sym(doubled_sigma(machine), SidedSymbol(base, side).render())


def encode_instruction(machine: Machine, instr: Instruction) -> Term:
    """The relation denoted by one instruction, as a doubled-alphabet term.

    Counter stars are doubled (a becomes a_l a_r) so the source and target
    counters are matched in lockstep.  Halting erases the remaining counters
    with left-only stars, so a halt instruction steps from any counter
    contents, matching the operational semantics.
    """
    dbl_a = star(_dbl(machine, "a"))
    dbl_b = star(_dbl(machine, "b"))
    if isinstance(instr, Inc):
        if instr.register == 1:
            return times(_side(machine, "a", "r"), dbl_a, dbl_b, _side(machine, instr.target, "r"))
        return times(dbl_a, _side(machine, "b", "r"), dbl_b, _side(machine, instr.target, "r"))
    if isinstance(instr, If):
        if instr.register == 1:
            stay = times(dbl_b, _side(machine, instr.when_zero, "r"))
            dec = times(
                _side(machine, "a", "l"), dbl_a, dbl_b, _side(machine, instr.when_positive, "r")
            )
            return plus(stay, dec)
        stay = times(dbl_a, _side(machine, instr.when_zero, "r"))
        dec = times(
            dbl_a, _side(machine, "b", "l"), dbl_b, _side(machine, instr.when_positive, "r")
        )
        return plus(stay, dec)
    assert isinstance(instr, Halt)
    erase = times(star(_side(machine, "a", "l")), star(_side(machine, "b", "l")))
    return times(erase, _side(machine, f"c{instr.output}", "r"))


@lru_cache(maxsize=None)
def encode_machine(machine: Machine) -> Term:
    """The transition relation: the sum over states q of <instr(q)> . q_l."""
    summands = [
        times(encode_instruction(machine, instr), _side(machine, q, "l"))
        for q, instr in machine.instructions
    ]
    return ssum(doubled_sigma(machine), summands)


# The one-step image of a word set ------------------------------------------------


def next_set(
    relation: Term, configs: Iterable[TraceWord], cert: FanoutCertificate
) -> frozenset[TraceWord]:
    """All words s' with s -> s' for some s in the given set.

    Candidates are bounded by (max word length + 1) * k, which is exhaustive
    for a term certified with fanout k, so the result is the exact image.
    """
    configs = sorted(configs)
    if not configs:
        return frozenset()
    doubled = relation.alphabet
    base = doubled.left_part
    rights = frozenset(doubled.right_symbols)
    bound = (max(len(s) for s in configs) + 1) * cert.k
    out: set[TraceWord] = set()
    for source in configs:
        if source.alphabet != base:
            raise MachineError("configuration word is not over the relation's base alphabet")
        d = relation
        for letter in source.letters:
            d = comm_derivative(d, SidedSymbol(letter, "l").render())
            if isinstance(d, Zero):
                break
        else:
            pruned = restrict(d, rights)
            for w in lang_tuples(pruned, bound):
                out.add(normalize([SidedSymbol.parse(x).base for x in w], base))
    return frozenset(out)


# Machine file format --------------------------------------------------------------
#
#   machine parity
#   start q0
#   q0: if 1 qA q1
#   qA: halt 1


def parse_machine(text: str) -> Machine:
    name = "machine"
    start: str | None = None
    order: list[str] = []
    table: dict[str, Instruction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "machine":
            if len(fields) != 2:
                raise MachineError(f"line {lineno}: expected 'machine NAME'")
            name = fields[1]
            continue
        if fields[0] == "start":
            if len(fields) != 2 or start is not None:
                raise MachineError(f"line {lineno}: expected a single 'start STATE'")
            start = fields[1]
            continue
        if not fields[0].endswith(":"):
            raise MachineError(f"line {lineno}: expected 'STATE: instruction'")
        state = fields[0][:-1]
        if state in table:
            raise MachineError(f"line {lineno}: state {state!r} defined twice")
        body = fields[1:]
        try:
            if body[0] == "inc" and len(body) == 3:
                instr: Instruction = Inc(int(body[1]), body[2])
            elif body[0] == "if" and len(body) == 4:
                instr = If(int(body[1]), body[2], body[3])
            elif body[0] == "halt" and len(body) == 2:
                instr = Halt(int(body[1]))
            else:
                raise MachineError(f"line {lineno}: unknown instruction {' '.join(body)!r}")
        except (ValueError, IndexError) as exc:
            raise MachineError(f"line {lineno}: bad instruction: {exc}") from exc
        order.append(state)
        table[state] = instr
    if start is None:
        raise MachineError("missing start line")
    return Machine(
        name=name,
        states=tuple(order),
        start=start,
        instructions=tuple((q, table[q]) for q in order),
    )


def render_machine(machine: Machine) -> str:
    lines = [f"machine {machine.name}", f"start {machine.start}"]
    for state, instr in machine.instructions:
        if isinstance(instr, Inc):
            lines.append(f"{state}: inc {instr.register} {instr.target}")
        elif isinstance(instr, If):
            lines.append(f"{state}: if {instr.register} {instr.when_zero} {instr.when_positive}")
        else:
            lines.append(f"{state}: halt {instr.output}")
    return "\n".join(lines) + "\n"


# Stock machines used throughout the test harness.


def parity_machine() -> Machine:
    """Accepts even inputs by decrementing counter 1 in a two-state loop."""
    return Machine(
        name="parity",
        states=("q0", "q1", "qA", "qR"),
        start="q0",
        instructions=(
            ("q0", If(1, "qA", "q1")),
            ("q1", If(1, "qR", "q0")),
            ("qA", Halt(1)),
            ("qR", Halt(0)),
        ),
    )


def doubling_machine() -> Machine:
    """Moves counter 1 to counter 2 twice over, then drains and accepts."""
    return Machine(
        name="doubling",
        states=("q0", "q1", "q2", "q3", "q4", "q5"),
        start="q0",
        instructions=(
            ("q0", If(1, "q4", "q1")),
            ("q1", Inc(2, "q2")),
            ("q2", Inc(2, "q0")),
            ("q3", Halt(0)),
            ("q4", If(2, "q5", "q4")),
            ("q5", Halt(1)),
        ),
    )


def instruction_zoo_machine() -> Machine:
    """One state per instruction kind; used for encoding agreement checks."""
    return Machine(
        name="zoo",
        states=("p1", "p2", "p3", "p4", "p5", "p6"),
        start="p1",
        instructions=(
            ("p1", Inc(1, "p2")),
            ("p2", Inc(2, "p3")),
            ("p3", If(1, "p4", "p3")),
            ("p4", If(2, "p5", "p4")),
            ("p5", Halt(1)),
            ("p6", Halt(0)),
        ),
    )


def looping_machine() -> Machine:
    return Machine(
        name="loop",
        states=("q0",),
        start="q0",
        instructions=(("q0", Inc(1, "q0")),),
    )
