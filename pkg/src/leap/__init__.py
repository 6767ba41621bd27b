"""Learning event-recording automata from positive and negative symbolic timed words."""

from .guards import (
    Alphabet,
    Bound,
    ConstantTooLargeError,
    EmptyGuardError,
    Guard,
    GuardParseError,
    Interval,
    TOP,
    UnknownClockError,
    compare_guards,
    guard_to_text,
    intersect_guards,
    normalize,
    parse_guard,
    regions_of,
    valuation_satisfies,
)
from .words import (
    ClockValuation,
    RegionWord,
    SymbolicWord,
    TimedWord,
    clock_word,
    compare_words,
    compatible,
    expand_to_regions,
    is_consistent,
    parse_symbolic_word,
    parse_timed_word,
    symbolic_word_to_text,
    timed_word,
    timed_word_to_text,
    witness,
)
from .feasibility import (
    Constraint,
    DiffSystem,
    InfeasibleError,
    emit_smtlib,
    extract_witness,
    from_symbolic_word,
    is_feasible,
)
from .era import (
    Era,
    RegionDfa,
    StateBudgetExceededError,
    Transition,
    accepts_timed,
    canonical_rename,
    equivalent,
    era_from_json,
    era_to_dot,
    era_to_json,
    is_deterministic,
    region_dfa,
)
from .intersect import (
    BackendUnavailableError,
    DisjointViolation,
    FastPathNotApplicableError,
    IntersectionResult,
    disjoint_from_all,
    fast_path_region,
    intersection_nonempty,
)
from .learner import (
    Fold,
    InvalidSampleError,
    LearnOptions,
    LearnResult,
    MergeAttempt,
    MergeTrace,
    PrefixTree,
    Promote,
    Sample,
    ValidationReport,
    Violation,
    build_prefix_tree,
    expand_sample_to_regions,
    learn,
    replay_trace,
    sample_from_json,
    sample_to_json,
    validate_sample,
)
from .reduction import Cnf3, brute_sat, build_reduction, parse_dimacs
from .charsets import TailIndex, build_charset, build_tail_index, kernel, shortest_prefixes

__version__ = "0.1.0"
