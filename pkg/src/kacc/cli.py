"""Command-line interface: machine simulation, term derivatives, automaton
dumps, reduction instances, and the bounded verification reports.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .alphabet import load_alphabet
from .derivatives import automaton_dump, build_automaton, exp_derivative, expand, word_derivative, word_residue
from .harness import (
    PreconditionError,
    selftest,
    verify_completeness_bounded,
    verify_soundness_witness,
)
from .machines import (
    config_word,
    encode_machine,
    all_configs_term,
    parse_machine,
    run,
)
from .reduction import build_instance, check_representable, eta, write_instance
from .reports import format_lines, reports_to_json, sort_reports, write_report_files
from .terms import parse_term, render, ssum
from .traces import normalize


def _read(path: str) -> str:
    return Path(path).read_text()


def _machine(path: str):
    return parse_machine(_read(path))


def _emit_reports(reports, args) -> int:
    reports = sort_reports(reports)
    if getattr(args, "json", False):
        sys.stdout.write(reports_to_json(reports))
    else:
        sys.stdout.write(format_lines(reports))
    if getattr(args, "out", None):
        paths = write_report_files(reports, Path(args.out))
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


def cmd_run(args) -> int:
    machine = _machine(args.machine)
    outcome = run(machine, args.n, fuel=args.fuel)
    if args.trace:
        for config in outcome.trace:
            print(config_word(machine, config).render())
    if outcome.output is None:
        print(f"fuel exhausted after {outcome.steps} steps")
        return 1
    print(f"output {outcome.output} in {outcome.steps} steps")
    return 0


def cmd_encode(args) -> int:
    machine = _machine(args.machine)
    print(render(encode_machine(machine)))
    return 0


def _parse_word(text: str, alphabet):
    letters = text.split()
    if letters == ["1"]:
        letters = []
    return normalize(letters, alphabet)


def cmd_derive(args) -> int:
    alphabet = load_alphabet(_read(args.alphabet))
    term = parse_term(args.term, alphabet)
    word = _parse_word(args.word, alphabet)
    if args.calculus == "exp":
        result = term
        for letter in word.letters:
            result = exp_derivative(result, letter)
    elif args.residue:
        result = word_residue(term, word)
    else:
        result = word_derivative(term, word)
    print(render(result))
    return 0


def cmd_expand(args) -> int:
    alphabet = load_alphabet(_read(args.alphabet))
    term = parse_term(args.term, alphabet)
    short, frontier = expand(term, args.depth)
    for w in sorted(short):
        print(f"short {w.render()}")
    for w, states in frontier:
        print(f"frontier {w.render()} | {render(ssum(alphabet, states))}")
    return 0


def cmd_automaton(args) -> int:
    alphabet = load_alphabet(_read(args.alphabet))
    term = parse_term(args.term, alphabet)
    auto = build_automaton(term)
    if args.dump:
        sys.stdout.write(automaton_dump(auto))
    else:
        print(f"base states: {len(auto.base_states)}")
    return 0


def cmd_reduce(args) -> int:
    machine = _machine(args.machine)
    instance = build_instance(machine, args.n)
    paths = write_instance(instance, Path(args.out))
    for p in paths:
        print(f"wrote {p}")
    return 0


def cmd_verify(args) -> int:
    machine = _machine(args.machine)
    outcome = run(machine, args.n, fuel=args.fuel)
    if outcome.output is None:
        print(f"fuel exhausted after {outcome.steps} steps; nothing to verify", file=sys.stderr)
        return 1
    if outcome.output == 1:
        reports = verify_completeness_bounded(machine, args.n, fuel=args.fuel, bound=args.bound)
    else:
        reports = verify_soundness_witness(machine, args.n, fuel=args.fuel, bound=args.bound)
    return _emit_reports(reports, args)


def cmd_represent(args) -> int:
    machine = _machine(args.machine)
    reports = check_representable(encode_machine(machine), all_configs_term(machine), args.bound)
    return _emit_reports(reports, args)


def cmd_selftest(args) -> int:
    reports = selftest(seed=args.seed, per_alphabet=args.terms, expansion_terms=args.terms)
    return _emit_reports(reports, args)


def cmd_eta(args) -> int:
    first, second = eta(Path(args.input).read_bytes())
    print(first)
    print(second)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kacc",
        description="Kleene algebra terms over commutable alphabets: "
        "trace words, derivatives, term automata, counter machines, "
        "and bounded verification of the encoding inequalities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate a two-counter machine")
    p.add_argument("machine")
    p.add_argument("n", type=int)
    p.add_argument("--fuel", type=int, default=100_000)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("encode", help="print the transition relation term")
    p.add_argument("machine")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("derive", help="derivative or residue of a term by a word")
    p.add_argument("alphabet")
    p.add_argument("term")
    p.add_argument("word", help="space-separated letters, or 1 for the empty word")
    p.add_argument("--calculus", choices=["comm", "exp"], default="comm")
    p.add_argument("--residue", action="store_true")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("expand", help="unfold a finite-state term to a depth")
    p.add_argument("alphabet")
    p.add_argument("term")
    p.add_argument("depth", type=int)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("automaton", help="build the term automaton")
    p.add_argument("alphabet")
    p.add_argument("term")
    p.add_argument("--dump", action="store_true")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("reduce", help="write the inequality instance files")
    p.add_argument("machine")
    p.add_argument("n", type=int)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="bounded soundness/completeness checks")
    p.add_argument("machine")
    p.add_argument("n", type=int)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--fuel", type=int, default=100_000)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None, help="write report.tsv, report.json and timings.png")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("represent", help="representability checks for a machine's relation")
    p.add_argument("machine")
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("selftest", help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--terms", type=int, default=50, help="random terms per alphabet")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("eta", help="map a machine+input file to the rendered term pair")
    p.add_argument("input")
    p.set_defaults(func=cmd_eta)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
