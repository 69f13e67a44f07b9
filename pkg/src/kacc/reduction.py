"""Representable-relation checks and the soundness/completeness inequality
instances for machine encodings, including the total reduction map from raw
byte inputs to rendered term pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable

from .alphabet import CommutableSet, SidedSymbol
from .derivatives import (
    FanoutCertificate,
    NonDerivableStarError,
    StateExplosionError,
    UnboundedOutputError,
    build_automaton,
    fanout_certificate,
)
from .machines import (
    Machine,
    Running,
    config_word,
    encode_machine,
    next_set,
    parse_machine,
    running_configs_term,
    sigma,
)
from .reports import CheckReport, make_report, stopwatch
from .terms import (
    Term,
    doubled_term,
    language_upto,
    member,
    plus,
    render,
    sided_term,
    ssum,
    star,
    sym,
    times,
    word_term,
)
from .traces import TraceWord, is_prefix, pair_split, tag_word


def universal_star(alphabet: CommutableSet) -> Term:
    """The star of the sum of all symbols: every word matches."""
    return star(ssum(alphabet, [sym(alphabet, x) for x in alphabet.symbols]))


def mismatch_sum(base: CommutableSet) -> Term:
    """The error absorber head: the sum of x_l y_r over all pairs x != y."""
    doubled_alphabet = _doubled(base)
    parts = []
    for x in base.symbols:
        for y in base.symbols:
            if x != y:
                parts.append(
                    times(
                        sym(doubled_alphabet, SidedSymbol(x, "l").render()),
                        sym(doubled_alphabet, SidedSymbol(y, "r").render()),
                    )
                )
    return ssum(doubled_alphabet, parts)


def _doubled(base: CommutableSet) -> CommutableSet:
    from .alphabet import double

    return double(base)


def doubled_all_star(base: CommutableSet) -> Term:
    """The doubled rendering of (sum of base symbols)*: each x becomes x_l x_r."""
    return doubled_term(universal_star(base))


# Residues ----------------------------------------------------------------------


def residue_state_sum(term: Term) -> Term:
    """The greatest element of the term's automaton: the sum of its base states."""
    return build_automaton(term).residue_sum


def residue_term(term: Term, starred: bool = False) -> Term:
    """The mismatch-absorbing residue: (all words)* times the automaton state
    sum; with ``starred`` the relation's own star is appended, which is the
    form the iterated inequalities consume."""
    rho = times(universal_star(term.alphabet), residue_state_sum(term))
    if starred:
        rho = times(rho, star(term))
    return rho


# Reduction instances -------------------------------------------------------------


@dataclass(frozen=True)
class ReductionInstance:
    machine: Machine
    input: int
    relation: Term
    e_L: Term
    e_R: Term
    rho: Term
    e_R_sound: Term
    sigma_neq: Term

    @property
    def doubled_alphabet(self) -> CommutableSet:
        return self.relation.alphabet


@lru_cache(maxsize=None)
def build_instance(machine: Machine, n: int) -> ReductionInstance:
    """Assemble the two inequality sides for a machine-input pair.

    The left side tags the initial configuration on the right and applies the
    starred relation; the right side accepts anything that reaches an
    accepting or still-running configuration, plus anything absorbed by the
    mismatch residue.
    """
    base = sigma(machine)
    relation = encode_machine(machine)
    start = config_word(machine, Running(n, 0, machine.start))
    e_l = times(word_term(relation.alphabet, tag_word(start, "r").letters), star(relation))
    sigma_star = doubled_all_star(base)
    accept = sided_term(
        plus(running_configs_term(machine), sym(base, "c1")), "r"
    )
    neq = mismatch_sum(base)
    rho = residue_term(relation, starred=True)
    e_r = plus(times(sigma_star, accept), times(sigma_star, neq, rho))
    e_r_sound = plus(
        times(sigma_star, accept),
        times(sigma_star, neq, universal_star(relation.alphabet)),
    )
    return ReductionInstance(
        machine=machine,
        input=n,
        relation=relation,
        e_L=e_l,
        e_R=e_r,
        rho=rho,
        e_R_sound=e_r_sound,
        sigma_neq=neq,
    )


# Representability -----------------------------------------------------------------


def check_representable(relation: Term, carrier: Term, bound: int) -> list[CheckReport]:
    """Bounded checks for the representable-relation conditions.

    Projections of the relation's words must land in the carrier, the
    relation must be finite state with a fanout certificate, and the carrier
    must be prefix free up to the bound.  Failures carry a witness word.
    """
    doubled_alphabet = relation.alphabet
    if not doubled_alphabet.is_direct_sum:
        raise ValueError("relation must live over a direct-sum alphabet")
    reports: list[CheckReport] = []
    words = sorted(language_upto(relation, bound))

    for side, name in (("l", "projection-left"), ("r", "projection-right")):
        with stopwatch() as elapsed:
            cex = None
            for w in words:
                left, right = pair_split(w)
                projected = left if side == "l" else right
                if not member(projected, carrier):
                    cex = f"{w.render()} projects to {projected.render()}"
                    break
        reports.append(make_report(name, {"bound": bound}, elapsed(), cex))

    with stopwatch() as elapsed:
        cex = None
        states = 0
        try:
            states = len(build_automaton(relation).base_states)
        except (NonDerivableStarError, StateExplosionError) as exc:
            cex = str(exc)
    reports.append(make_report("finite-state", {"states": states}, elapsed(), cex))

    cert: FanoutCertificate | None = None
    with stopwatch() as elapsed:
        cex = None
        fanout = 0
        try:
            cert = fanout_certificate(relation)
            fanout = cert.k
        except (UnboundedOutputError, NonDerivableStarError, StateExplosionError) as exc:
            witness = getattr(exc, "witness", None)
            cex = witness.render() if witness is not None else str(exc)
    reports.append(make_report("bounded-output", {"fanout": fanout}, elapsed(), cex))

    with stopwatch() as elapsed:
        cex = None
        carrier_words = sorted(language_upto(carrier, bound))
        for i, s1 in enumerate(carrier_words):
            for s2 in carrier_words[i + 1 :]:
                if s1 != s2 and (is_prefix(s1, s2) or is_prefix(s2, s1)):
                    cex = f"{s1.render()} vs {s2.render()}"
                    break
            if cex:
                break
    reports.append(make_report("prefix-free", {"bound": bound}, elapsed(), cex))
    return reports


# Inequality checks -----------------------------------------------------------------


def _first_noncontained(lhs: Term, rhs: Term, bound: int) -> str | None:
    for w in sorted(language_upto(lhs, bound)):
        if not member(w, rhs):
            return w.render()
    return None


def _tagged_sum(alphabet: CommutableSet, words: Iterable[TraceWord], side: str) -> Term:
    return ssum(alphabet, [word_term(alphabet, tag_word(w, side).letters) for w in words])


def _doubled_word_sum(alphabet: CommutableSet, words: Iterable[TraceWord]) -> Term:
    from .traces import embed_doubled

    return ssum(alphabet, [word_term(alphabet, embed_doubled(w).letters) for w in words])


def step_inequality_check(
    relation: Term,
    configs: frozenset[TraceWord] | set[TraceWord],
    cert: FanoutCertificate,
    bound: int,
    iterations: int = 3,
    rho: Term | None = None,
    empty_cap: int = 32,
) -> list[CheckReport]:
    """Bounded containment checks for the single-step inequality and its
    iterated forms.

    Every word of the left side up to the bound is membership-checked against
    the right side, so starred right sides need no truncation.  ``rho``
    overrides the computed single-step residue (useful to demonstrate that a
    wrong residue breaks the inequality).
    """
    doubled_alphabet = relation.alphabet
    base = doubled_alphabet.left_part
    configs = frozenset(configs)
    reports: list[CheckReport] = []
    sigma_star = doubled_all_star(base)
    neq = mismatch_sum(base)
    step_rho = rho if rho is not None else residue_term(relation, starred=False)
    star_rho = times(step_rho, star(relation)) if rho is None else rho

    with stopwatch() as elapsed:
        lam_r = _tagged_sum(doubled_alphabet, configs, "r")
        lhs = times(lam_r, relation)
        image = next_set(relation, configs, cert)
        rhs = plus(
            times(_doubled_word_sum(doubled_alphabet, configs), _tagged_sum(doubled_alphabet, image, "r")),
            times(sigma_star, neq, step_rho),
        )
        cex = None if not configs else _first_noncontained(lhs, rhs, bound)
    reports.append(make_report("step-inequality", {"bound": bound, "configs": len(configs)}, elapsed(), cex))

    images: list[frozenset[TraceWord]] = [configs]
    emptied_at: int | None = None
    for i in range(empty_cap):
        nxt = next_set(relation, images[-1], cert)
        images.append(nxt)
        if not nxt:
            emptied_at = i + 1
            break

    lam_r = _tagged_sum(doubled_alphabet, configs, "r")
    lhs_star = times(lam_r, star(relation))
    for n in range(iterations + 1):
        with stopwatch() as elapsed:
            while len(images) <= n:
                images.append(next_set(relation, images[-1], cert))
            below = set().union(*images[:n]) if n else set()
            at = images[n]
            rhs = plus(
                times(sigma_star, _tagged_sum(doubled_alphabet, below, "r")),
                times(sigma_star, _tagged_sum(doubled_alphabet, at, "r"), star(relation)),
                times(sigma_star, neq, star_rho),
            )
            cex = None if not configs else _first_noncontained(lhs_star, rhs, bound)
        reports.append(
            make_report("iterated-inequality", {"bound": bound, "n": n}, elapsed(), cex)
        )

    if emptied_at is not None:
        with stopwatch() as elapsed:
            below = set().union(*images[:emptied_at])
            rhs = plus(
                times(sigma_star, _tagged_sum(doubled_alphabet, below, "r")),
                times(sigma_star, neq, star_rho),
            )
            cex = None if not configs else _first_noncontained(lhs_star, rhs, bound)
        reports.append(
            make_report(
                "terminated-inequality", {"bound": bound, "n": emptied_at}, elapsed(), cex
            )
        )
    return reports


# The reduction map -----------------------------------------------------------------


def render_instance(instance: ReductionInstance) -> str:
    """Deterministic text: one labeled term per line."""
    lines = [
        f"E_L {render(instance.e_L)}",
        f"E_R {render(instance.e_R)}",
        f"RHO {render(instance.rho)}",
        f"E_R_SOUND {render(instance.e_R_sound)}",
        f"SIGMA_NEQ {render(instance.sigma_neq)}",
    ]
    return "\n".join(lines) + "\n"


def write_instance(instance: ReductionInstance, outdir: Path) -> list[Path]:
    from .alphabet import dump_alphabet

    outdir.mkdir(parents=True, exist_ok=True)
    terms_path = outdir / "instance.terms"
    terms_path.write_text(render_instance(instance))
    alphabet_path = outdir / "alphabet.txt"
    alphabet_path.write_text(dump_alphabet(instance.doubled_alphabet))
    return [terms_path, alphabet_path]


def eta(data: bytes) -> tuple[str, str]:
    """The total reduction map: machine descriptions with an ``input N`` line
    map to the rendered pair (e_L + e_R, e_R); anything else maps to (0, 1).
    """
    try:
        text = data.decode("utf-8")
        machine_lines: list[str] = []
        value: int | None = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if fields[0] == "input":
                if value is not None or len(fields) != 2:
                    raise ValueError("expected a single 'input N' line")
                value = int(fields[1])
                if value < 0:
                    raise ValueError("input must be a natural number")
            else:
                machine_lines.append(line)
        if value is None:
            raise ValueError("missing input line")
        machine = parse_machine("\n".join(machine_lines))
        instance = build_instance(machine, value)
    except Exception:
        return ("0", "1")
    return (render(plus(instance.e_L, instance.e_R)), render(instance.e_R))
