"""Bounded verification harness: the order-theoretic counterexample model for
the star axioms, the soundness/completeness checks for machine encodings, the
shared language oracles, and the seeded property suite behind ``selftest``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Iterable, Mapping, Sequence

from .alphabet import CommutableSet, SidedSymbol, double, make_set
from .derivatives import comm_derivative, expand, fanout_certificate, residue, word_derivative, word_residue
from .machines import (
    Machine,
    Running,
    config_word,
    doubled_sigma,
    encode_machine,
    instruction_zoo_machine,
    next_set,
    parity_machine,
    run,
    sigma,
    step,
)
from .reduction import build_instance, doubled_all_star, eta, mismatch_sum, universal_star
from .reports import CheckReport, make_report, sort_reports, stopwatch
from .terms import (
    One,
    Plus,
    Star,
    Sym,
    Term,
    Times,
    Zero,
    lang_tuples,
    language_upto,
    member,
    one,
    plus,
    render,
    sided_term,
    ssum,
    star,
    sym,
    times,
    word_term,
    zero,
)
from .traces import TraceWord, normalize, pair_join, pair_split, tag_word


class PreconditionError(ValueError):
    """A theorem check was invoked on a run that does not satisfy its premise."""


# The counterexample model -------------------------------------------------------
#
# Carrier: naturals plus a bottom and a top element.  Addition is the order
# maximum; multiplication adds naturals, bottom annihilates and top absorbs
# everything else; star collapses to the multiplicative unit on bottom and to
# top otherwise.  The left-unfolding axiom survives, star-star idempotence
# does not.


@total_ordering
@dataclass(frozen=True)
class BotTopNat:
    rank: int  # 0 bottom, 1 natural, 2 top
    n: int = 0

    def __post_init__(self) -> None:
        if self.rank not in (0, 1, 2):
            raise ValueError("rank must be 0, 1 or 2")
        if self.rank != 1 and self.n != 0:
            raise ValueError("only naturals carry a value")

    def __lt__(self, other: "BotTopNat") -> bool:
        return (self.rank, self.n) < (other.rank, other.n)

    def __repr__(self) -> str:
        if self.rank == 0:
            return "bot"
        if self.rank == 2:
            return "top"
        return f"nat({self.n})"


BOT = BotTopNat(0)
TOP = BotTopNat(2)


def nat(n: int) -> BotTopNat:
    return BotTopNat(1, n)


def model_add(x: BotTopNat, y: BotTopNat) -> BotTopNat:
    return max(x, y)


def model_mul(x: BotTopNat, y: BotTopNat) -> BotTopNat:
    if x == BOT or y == BOT:
        return BOT
    if x == TOP or y == TOP:
        return TOP
    return nat(x.n + y.n)


def model_star(x: BotTopNat) -> BotTopNat:
    return nat(0) if x == BOT else TOP


MODEL_ZERO = BOT
MODEL_ONE = nat(0)


def model_eval(term: Term, assignment: Mapping[str, BotTopNat]) -> BotTopNat:
    if isinstance(term, Zero):
        return MODEL_ZERO
    if isinstance(term, One):
        return MODEL_ONE
    if isinstance(term, Sym):
        return assignment[term.symbol]
    if isinstance(term, Plus):
        value = MODEL_ZERO
        for p in term.parts:
            value = model_add(value, model_eval(p, assignment))
        return value
    if isinstance(term, Times):
        return model_mul(model_eval(term.head, assignment), model_eval(term.tail, assignment))
    assert isinstance(term, Star)
    return model_star(model_eval(term.body, assignment))


def default_model_sample() -> tuple[BotTopNat, ...]:
    return (BOT,) + tuple(nat(i) for i in range(6)) + (TOP,)


# The nine axiom schemata, as pairs of direct evaluators so the checks cannot
# be short-circuited by term canonicalization.
_AXIOMS: tuple[tuple[str, int, Callable, Callable], ...] = (
    ("unit-mul", 1, lambda x: (model_mul(MODEL_ONE, x), model_mul(x, MODEL_ONE)), lambda x: (x, x)),
    ("zero-mul", 1, lambda x: (model_mul(MODEL_ZERO, x), model_mul(x, MODEL_ZERO)), lambda x: (MODEL_ZERO, MODEL_ZERO)),
    ("mul-assoc", 3, lambda x, y, z: model_mul(x, model_mul(y, z)), lambda x, y, z: model_mul(model_mul(x, y), z)),
    ("zero-add", 1, lambda x: model_add(MODEL_ZERO, x), lambda x: x),
    ("add-comm", 2, lambda x, y: model_add(x, y), lambda x, y: model_add(y, x)),
    ("add-assoc", 3, lambda x, y, z: model_add(x, model_add(y, z)), lambda x, y, z: model_add(model_add(x, y), z)),
    ("dist-left", 3, lambda x, y, z: model_mul(x, model_add(y, z)), lambda x, y, z: model_add(model_mul(x, y), model_mul(x, z))),
    ("dist-right", 3, lambda x, y, z: model_mul(model_add(x, y), z), lambda x, y, z: model_add(model_mul(x, z), model_mul(y, z))),
    ("star-unfold-left", 1, lambda x: model_star(x), lambda x: model_add(MODEL_ONE, model_mul(x, model_star(x)))),
)


def check_preka_axioms(sample: Sequence[BotTopNat] | None = None) -> list[CheckReport]:
    """Exhaustively verify the nine axiom equations over the sample, then
    confirm the induction-failure witness (bot*)* != bot*."""
    values = tuple(sample) if sample is not None else default_model_sample()
    reports: list[CheckReport] = []
    for name, arity, lhs, rhs in _AXIOMS:
        with stopwatch() as elapsed:
            cex = None
            assignments: Iterable[tuple[BotTopNat, ...]] = [(v,) for v in values]
            if arity == 2:
                assignments = [(v, w) for v in values for w in values]
            elif arity == 3:
                assignments = [(v, w, u) for v in values for w in values for u in values]
            for args in assignments:
                if lhs(*args) != rhs(*args):
                    cex = f"{name} fails at {args}"
                    break
        reports.append(make_report(f"axiom-{name}", {"sample": len(values)}, elapsed(), cex))
    with stopwatch() as elapsed:
        double_star = model_star(model_star(BOT))
        single_star = model_star(BOT)
        cex = None
        if not (double_star == TOP and single_star == nat(0) and double_star != single_star):
            cex = f"(bot*)* = {double_star}, bot* = {single_star}"
    reports.append(make_report("axiom-star-star-separation", {}, elapsed(), cex))
    return reports


# Generic bounded containment ------------------------------------------------------


def check_language_leq(lhs: Term, rhs: Term, bound: int) -> CheckReport:
    """Pass iff every word of the left language up to the bound is a member
    of the right term; the counterexample is the first failing word in
    normal-form order."""
    with stopwatch() as elapsed:
        cex = None
        for w in sorted(language_upto(lhs, bound)):
            if not member(w, rhs):
                cex = w.render()
                break
    return make_report("language-leq", {"bound": bound}, elapsed(), cex)


# Soundness and completeness -------------------------------------------------------


def _trace_words(machine: Machine, outcome) -> list[TraceWord]:
    return [config_word(machine, c) for c in outcome.trace]


def default_completeness_bound(machine: Machine, outcome) -> int:
    return sum(len(w) for w in _trace_words(machine, outcome)) + 4


def _components_of(term: Term) -> frozenset[Term]:
    if isinstance(term, Plus):
        return frozenset(term.parts)
    if isinstance(term, Zero):
        return frozenset()
    return frozenset({term})


def _star_inclusion_check(
    prefix_letters: tuple[str, ...], relation: Term, rhs: Term, bound: int
) -> tuple[str | None, int, int]:
    """Check every word of prefix . relation* up to the bound for membership
    in the right side, by derivative state sets.

    Words are spelled as the prefix followed by relation segments, so state
    sets are shared across the common prefixes of the exponentially many
    words.  A universal state accepts every extension, so that subtree needs
    no further checking; an empty state set rejects the word at once.  Both
    cuts are sound for the per-word membership being computed, so the walk is
    exhaustive over the bounded left language.
    """
    from .derivatives import _is_universal, _step_component_set

    alphabet = relation.alphabet
    segments = sorted(
        lang_tuples(relation, bound - len(prefix_letters)),
        key=lambda w: (len(w), tuple(alphabet.index(s) for s in w)),
    )
    checked = 0
    pruned = 0

    states = _components_of(rhs)
    for letter in prefix_letters:
        states = _step_component_set(states, letter)

    stack: list[tuple[frozenset, tuple[str, ...], int]] = [
        (states, prefix_letters, bound - len(prefix_letters))
    ]
    while stack:
        states, spelled, budget = stack.pop()
        checked += 1
        if not any(t._ewp for t in states):
            return normalize(spelled, alphabet).render(), checked, pruned
        if any(_is_universal(t) for t in states):
            pruned += 1
            continue
        for segment in segments:
            if len(segment) > budget:
                break
            st = states
            for letter in segment:
                st = _step_component_set(st, letter)
            stack.append((st, spelled + segment, budget - len(segment)))
    return None, checked, pruned


def verify_completeness_bounded(
    machine: Machine, n: int, fuel: int = 100_000, bound: int | None = None
) -> list[CheckReport]:
    """For an accepted input: bounded inclusion of the left side in the right
    side, plus the replay of the deterministic image chain (singletons for
    the run, empty afterwards)."""
    outcome = run(machine, n, fuel)
    if outcome.output != 1:
        raise PreconditionError(f"machine does not accept input {n} (output {outcome.output})")
    words = _trace_words(machine, outcome)
    if bound is None:
        bound = default_completeness_bound(machine, outcome)
    instance = build_instance(machine, n)
    reports: list[CheckReport] = []

    with stopwatch() as elapsed:
        start_r = tag_word(words[0], "r")
        cex, checked, pruned = _star_inclusion_check(
            start_r.letters, instance.relation, instance.e_R, bound
        )
    reports.append(
        make_report(
            "completeness-inclusion",
            {"input": n, "bound": bound, "words": checked, "pruned": pruned},
            elapsed(),
            cex,
        )
    )

    with stopwatch() as elapsed:
        cex = None
        cert = fanout_certificate(instance.relation)
        current = frozenset({words[0]})
        for i, expected in enumerate(words):
            if current != frozenset({expected}):
                cex = f"image {i} is {{{', '.join(w.render() for w in sorted(current))}}}"
                break
            current = next_set(instance.relation, current, cert)
        if cex is None and current:
            cex = f"image {len(words)} should be empty"
    reports.append(
        make_report("completeness-next-replay", {"input": n, "steps": len(words) - 1}, elapsed(), cex)
    )
    return reports


def soundness_witness_word(machine: Machine, outcome) -> TraceWord:
    """The interleaved run word: the start configuration tagged right, then
    each transition contributing its source tagged left and target tagged
    right."""
    words = _trace_words(machine, outcome)
    doubled_alphabet = doubled_sigma(machine)
    letters: list[str] = [SidedSymbol(x, "r").render() for x in words[0].letters]
    for i in range(len(words) - 1):
        letters += [SidedSymbol(x, "l").render() for x in words[i].letters]
        letters += [SidedSymbol(x, "r").render() for x in words[i + 1].letters]
    return normalize(letters, doubled_alphabet)


def verify_soundness_witness(
    machine: Machine, n: int, fuel: int = 100_000, bound: int | None = None
) -> list[CheckReport]:
    """For a rejected input: the run word is a member of the left side but
    avoids every right-side component, separating the two sides."""
    outcome = run(machine, n, fuel)
    if outcome.output != 0:
        raise PreconditionError(f"machine does not reject input {n} (output {outcome.output})")
    instance = build_instance(machine, n)
    base = sigma(machine)
    doubled_alphabet = instance.doubled_alphabet
    p = soundness_witness_word(machine, outcome)
    params = {"input": n, "witness_len": len(p)}
    reports: list[CheckReport] = []

    with stopwatch() as elapsed:
        cex = None if member(p, instance.e_L) else p.render()
    reports.append(make_report("soundness-lhs-membership", params, elapsed(), cex))

    sigma_star = doubled_all_star(base)
    right_plus = times(
        ssum(doubled_alphabet, [sym(doubled_alphabet, x) for x in doubled_alphabet.right_symbols]),
        universal_star_right(doubled_alphabet),
    )
    with stopwatch() as elapsed:
        cex = None if member(p, times(sigma_star, right_plus)) else p.render()
    reports.append(make_report("soundness-shuffled-form", params, elapsed(), cex))

    mismatch_component = times(sigma_star, mismatch_sum(base), universal_star(doubled_alphabet))
    with stopwatch() as elapsed:
        cex = p.render() if member(p, mismatch_component) else None
    reports.append(make_report("soundness-mismatch-disjoint", params, elapsed(), cex))

    from .machines import running_configs_term

    accept_component = times(
        sigma_star, sided_term(plus(running_configs_term(machine), sym(base, "c1")), "r")
    )
    with stopwatch() as elapsed:
        cex = None
        right_projection = pair_split(p)[1]
        if not right_projection.letters or right_projection.letters[-1] != "c0":
            cex = f"right projection {right_projection.render()} does not end in c0"
        elif member(p, accept_component):
            cex = p.render()
    reports.append(make_report("soundness-not-accepting", params, elapsed(), cex))
    return reports


def universal_star_right(doubled_alphabet: CommutableSet) -> Term:
    """(sum of right symbols)*."""
    return star(ssum(doubled_alphabet, [sym(doubled_alphabet, x) for x in doubled_alphabet.right_symbols]))


# Random corpora -------------------------------------------------------------------


def standard_alphabets() -> tuple[CommutableSet, ...]:
    return (
        make_set(["a", "b", "c"]),
        make_set(["a", "b", "c"], "commutative"),
        make_set(["a", "b", "c"], "pairs", [("a", "b")]),
        double(make_set(["a", "b"])),
    )


def random_term(
    rng: random.Random,
    alphabet: CommutableSet,
    max_nodes: int = 12,
    star_safe: bool = False,
) -> Term:
    """A random term with at most ``max_nodes`` nodes before canonicalization.

    With ``star_safe`` every starred body is forced to start with a symbol,
    so the result is finite state.
    """

    def go(budget: int, in_star: bool) -> Term:
        if budget <= 1:
            roll = rng.random()
            if not in_star and roll < 0.08:
                return zero(alphabet)
            if not in_star and roll < 0.2:
                return one(alphabet)
            return sym(alphabet, rng.choice(alphabet.symbols))
        roll = rng.random()
        if roll < 0.3:
            split = rng.randrange(1, budget - 1) if budget > 2 else 1
            return plus(go(split, in_star), go(budget - 1 - split, in_star))
        if roll < 0.62:
            split = rng.randrange(1, budget - 1) if budget > 2 else 1
            return times(go(split, in_star), go(budget - 1 - split, in_star))
        if roll < 0.78:
            if star_safe:
                head = sym(alphabet, rng.choice(alphabet.symbols))
                return star(times(head, go(max(budget - 3, 1), True)))
            return star(go(budget - 1, in_star))
        return sym(alphabet, rng.choice(alphabet.symbols))

    return go(max_nodes, star_safe)


def derivative_corpus(
    seed: int, per_alphabet: int = 50, max_nodes: int = 12
) -> list[tuple[CommutableSet, Term]]:
    rng = random.Random(seed)
    corpus = []
    for alphabet in standard_alphabets():
        for _ in range(per_alphabet):
            corpus.append((alphabet, random_term(rng, alphabet, max_nodes)))
    return corpus


def front_removals(word: tuple[str, ...], x: str, alphabet: CommutableSet) -> tuple[str, ...] | None:
    """Remove a front-reachable occurrence of x from the word, or None.

    An occurrence is front reachable when every earlier letter commutes with
    it; this is the language-level derivative oracle.
    """
    for i, letter in enumerate(word):
        if letter == x and all(alphabet.commutes_p(prev, x) for prev in word[:i]):
            from .traces import normal_tuple

            return normal_tuple(word[:i] + word[i + 1 :], alphabet)
        if letter == x:
            return None  # later occurrences are blocked by this one
    return None


def derivative_language_oracle(term: Term, x: str, bound: int) -> frozenset[tuple[str, ...]]:
    """{ s : x.s in l(term) } up to the bound, computed purely on languages."""
    alphabet = term.alphabet
    out: set[tuple[str, ...]] = set()
    for w in lang_tuples(term, bound + 1):
        removed = front_removals(w, x, alphabet)
        if removed is not None and len(removed) <= bound:
            out.add(removed)
    return frozenset(out)


# Property suite -------------------------------------------------------------------


def check_derivative_commutation(corpus, bound: int = 4) -> CheckReport:
    with stopwatch() as elapsed:
        cex = None
        for alphabet, term in corpus:
            for x in alphabet.symbols:
                got = lang_tuples(comm_derivative(term, x), bound)
                want = derivative_language_oracle(term, x, bound)
                if got != want:
                    cex = f"d_{x}({render(term)})"
                    break
            if cex:
                break
    return make_report("derivative-commutation", {"terms": len(corpus), "bound": bound}, elapsed(), cex)


def check_fundamental_expansion(corpus, bound: int = 4) -> CheckReport:
    with stopwatch() as elapsed:
        cex = None
        for alphabet, term in corpus:
            parts = [one(alphabet)] if term._ewp else []
            parts += [times(sym(alphabet, x), comm_derivative(term, x)) for x in alphabet.symbols]
            expanded = ssum(alphabet, parts)
            if lang_tuples(term, bound) != lang_tuples(expanded, bound):
                cex = render(term)
                break
    return make_report("fundamental-expansion", {"terms": len(corpus), "bound": bound}, elapsed(), cex)


def check_residue_identity(corpus, bound: int = 4) -> CheckReport:
    with stopwatch() as elapsed:
        cex = None
        for alphabet, term in corpus:
            for x in alphabet.symbols:
                recombined = plus(residue(term, x), times(sym(alphabet, x), comm_derivative(term, x)))
                if lang_tuples(term, bound) != lang_tuples(recombined, bound):
                    cex = f"rho_{x}({render(term)})"
                    break
            if cex:
                break
    return make_report("residue-identity", {"terms": len(corpus), "bound": bound}, elapsed(), cex)


def check_adjunction(corpus, seed: int, bound: int = 4) -> CheckReport:
    rng = random.Random(seed)
    with stopwatch() as elapsed:
        cex = None
        for alphabet, term in corpus:
            for _ in range(4):
                x = rng.choice(alphabet.symbols)
                letters = [rng.choice(alphabet.symbols) for _ in range(rng.randrange(bound))]
                s = normalize(letters, alphabet)
                xs = normalize([x] + letters, alphabet)
                if member(xs, term) != member(s, comm_derivative(term, x)):
                    cex = f"x={x}, s={s.render()}, e={render(term)}"
                    break
            if cex:
                break
    return make_report("derivative-adjunction", {"terms": len(corpus), "bound": bound}, elapsed(), cex)


def check_word_decomposition(corpus, bound: int = 4) -> CheckReport:
    """For w in l(e): l(e) = {w} + l(rho_w(e)) + sum_x w.x.l(d_{wx}(e))."""
    with stopwatch() as elapsed:
        cex = None
        for alphabet, term in corpus:
            words = sorted(lang_tuples(term, 2))
            for letters in words[:3]:
                w = TraceWord(alphabet, letters)
                d = word_derivative(term, w)
                parts = [word_term(alphabet, letters), word_residue(term, w)]
                parts += [
                    times(word_term(alphabet, letters), sym(alphabet, x), comm_derivative(d, x))
                    for x in alphabet.symbols
                ]
                if lang_tuples(term, bound) != lang_tuples(ssum(alphabet, parts), bound):
                    cex = f"w={w.render()}, e={render(term)}"
                    break
            if cex:
                break
    return make_report("word-decomposition", {"terms": len(corpus), "bound": bound}, elapsed(), cex)


def check_expansion_lemma(seed: int, terms: int = 50, depths=(1, 2, 3)) -> CheckReport:
    rng = random.Random(seed)
    alphabets = standard_alphabets()
    with stopwatch() as elapsed:
        cex = None
        for i in range(terms):
            alphabet = alphabets[i % len(alphabets)]
            term = random_term(rng, alphabet, 10, star_safe=True)
            for k in depths:
                short, frontier = expand(term, k)
                bound = k + 3
                parts = [word_term(alphabet, w.letters) for w in short]
                from .derivatives import build_automaton

                base = set(build_automaton(term).base_states)
                for w, states in frontier:
                    if not states <= base:
                        cex = f"frontier state escapes the automaton at {w.render()}"
                        break
                    parts.append(times(word_term(alphabet, w.letters), ssum(alphabet, states)))
                if cex:
                    break
                if lang_tuples(term, bound) != lang_tuples(ssum(alphabet, parts), bound):
                    cex = f"expand({render(term)}, {k})"
                    break
            if cex:
                break
    return make_report("expansion-lemma", {"terms": terms, "depths": len(depths)}, elapsed(), cex)


def check_encoding_agreement(machine: Machine, max_counter: int = 5) -> CheckReport:
    """Image of every configuration equals the step function's output, and the
    relation is functional on configuration words."""
    relation = encode_machine(machine)
    cert = fanout_certificate(relation)
    with stopwatch() as elapsed:
        cex = None
        for q in machine.states:
            for n in range(max_counter + 1):
                for m in range(max_counter + 1):
                    config = Running(n, m, q)
                    want = step(machine, config)
                    image = next_set(relation, {config_word(machine, config)}, cert)
                    expected = frozenset({config_word(machine, want)}) if want is not None else frozenset()
                    if len(image) > 1:
                        cex = f"nondeterministic image at {config_word(machine, config).render()}"
                        break
                    if image != expected:
                        cex = f"image mismatch at {config_word(machine, config).render()}"
                        break
                if cex:
                    break
            if cex:
                break
    return make_report(
        "encoding-agreement",
        {"machine": machine.name, "max_counter": max_counter},
        elapsed(),
        cex,
    )


def check_trace_normal_forms(seed: int, samples: int = 300) -> CheckReport:
    """Normalization is idempotent and agrees with swap reachability."""
    rng = random.Random(seed)
    alphabets = standard_alphabets()
    with stopwatch() as elapsed:
        cex = None
        for _ in range(samples):
            alphabet = rng.choice(alphabets)
            letters = tuple(rng.choice(alphabet.symbols) for _ in range(rng.randrange(7)))
            w = normalize(letters, alphabet)
            again = normalize(w.letters, alphabet)
            if w != again:
                cex = f"normalize not idempotent on {letters}"
                break
            reachable = swap_reachability_class(letters, alphabet)
            if w.letters != min(reachable, key=lambda t: tuple(alphabet.index(s) for s in t)):
                cex = f"normal form of {letters} is not the least representative"
                break
            if frozenset({normalize(r, alphabet).letters for r in reachable}) != frozenset({w.letters}):
                cex = f"class of {letters} does not collapse"
                break
    return make_report("trace-normal-form", {"samples": samples}, elapsed(), cex)


def swap_reachability_class(letters: tuple[str, ...], alphabet: CommutableSet) -> set[tuple[str, ...]]:
    """All sequences reachable by swapping adjacent commuting letters."""
    seen = {letters}
    frontier = [letters]
    while frontier:
        current = frontier.pop()
        for i in range(len(current) - 1):
            x, y = current[i], current[i + 1]
            if alphabet.commutes_p(x, y):
                swapped = current[:i] + (y, x) + current[i + 2 :]
                if swapped not in seen:
                    seen.add(swapped)
                    frontier.append(swapped)
    return seen


def check_pair_isomorphism(seed: int, samples: int = 200) -> CheckReport:
    rng = random.Random(seed)
    left = make_set(["a", "b"])
    right = make_set(["c", "d"], "pairs", [("c", "d")])
    with stopwatch() as elapsed:
        cex = None
        for _ in range(samples):
            u = normalize([rng.choice(left.symbols) for _ in range(rng.randrange(5))], left)
            v = normalize([rng.choice(right.symbols) for _ in range(rng.randrange(5))], right)
            joined = pair_join(u, v)
            if pair_split(joined) != (u, v):
                cex = f"({u.render()}, {v.render()})"
                break
            if len(joined) != len(u) + len(v):
                cex = f"length mismatch at ({u.render()}, {v.render()})"
                break
    return make_report("pair-isomorphism", {"samples": samples}, elapsed(), cex)


def check_eta_determinism(runs: int = 10) -> CheckReport:
    machine = parity_machine()
    from .machines import render_machine

    payload = (render_machine(machine) + "input 2\n").encode()
    with stopwatch() as elapsed:
        cex = None
        first = eta(payload)
        for _ in range(runs - 1):
            if eta(payload) != first:
                cex = "eta output changed between runs"
                break
        if cex is None and eta(b"not a machine") != ("0", "1"):
            cex = "malformed input did not map to (0, 1)"
    return make_report("eta-determinism", {"runs": runs}, elapsed(), cex)


def selftest(seed: int = 2024, per_alphabet: int = 50, expansion_terms: int = 50) -> list[CheckReport]:
    """The full property suite with a fixed seed; deterministic report order."""
    corpus = derivative_corpus(seed, per_alphabet)
    reports: list[CheckReport] = []
    reports.extend(check_preka_axioms())
    reports.append(check_trace_normal_forms(seed + 1))
    reports.append(check_pair_isomorphism(seed + 2))
    reports.append(check_derivative_commutation(corpus))
    reports.append(check_fundamental_expansion(corpus))
    reports.append(check_residue_identity(corpus))
    reports.append(check_adjunction(corpus, seed + 3))
    reports.append(check_word_decomposition(corpus[: max(len(corpus) // 5, 1)]))
    reports.append(check_expansion_lemma(seed + 4, expansion_terms))
    reports.append(check_encoding_agreement(instruction_zoo_machine(), max_counter=3))
    reports.append(check_eta_determinism())
    return sort_reports(reports)
