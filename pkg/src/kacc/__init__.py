"""Kleene algebra terms over alphabets with commutativity conditions.

Trace words, two derivative calculi, term automata, two-counter machine
encodings, and bounded verification of the soundness/completeness
inequalities, all checkable against brute-force language oracles.
"""

__version__ = "0.1.0"

from .alphabet import (
    AlphabetError,
    CommutableSet,
    NotDirectSumError,
    SidedSymbol,
    direct_sum,
    double,
    dump_alphabet,
    load_alphabet,
    make_set,
)
from .traces import (
    TraceWord,
    WordError,
    concat,
    embed_doubled,
    epsilon,
    is_prefix,
    mismatch_decompose,
    normalize,
    pair_join,
    pair_split,
    project,
    tag_word,
)
from .terms import (
    InfiniteLanguageError,
    Term,
    TermError,
    TermParseError,
    doubled_term,
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
    sided_term,
    star,
    sum_of_words,
    sym,
    times,
    word_term,
    zero,
)
from .derivatives import (
    Automaton,
    FanoutCertificate,
    NonDerivableStarError,
    StateExplosionError,
    UnboundedOutputError,
    build_automaton,
    comm_derivative,
    exp_derivative,
    expand,
    fanout_certificate,
    residue,
    restrict,
    word_derivative,
    word_residue,
)
from .machines import (
    Config,
    Halt,
    Halted,
    If,
    Inc,
    Machine,
    MachineError,
    Running,
    config_word,
    encode_instruction,
    encode_machine,
    next_set,
    parity_machine,
    parse_machine,
    run,
    step,
)
from .reduction import (
    ReductionInstance,
    build_instance,
    check_representable,
    eta,
    residue_term,
    step_inequality_check,
)
from .harness import (
    BOT,
    TOP,
    BotTopNat,
    PreconditionError,
    check_language_leq,
    check_preka_axioms,
    model_eval,
    nat,
    selftest,
    verify_completeness_bounded,
    verify_soundness_witness,
)
from .reports import CheckReport
