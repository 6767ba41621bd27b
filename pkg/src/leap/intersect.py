"""Intersection non-emptiness: does a symbolic word meet an ERA's language?

Three backends answer the same question:

* ``path``   - depth-first search over (position, state) pairs carrying the
               canonical zone of clock values; infeasible branches are pruned
               and failed (position, state, zone) triples memoized.  Default.
* ``smt``    - emits one QF_LRA formula over the run timestamps with
               log2(#states) Boolean variables per step and delegates to an
               external solver command.
* ``oracle`` - expands the word into region words and asks the region DFA;
               exponential, used for differential testing.

Every witness produced locally is substitution-checked against both the word
and the automaton before it is returned.
"""

from __future__ import annotations

import math
import os
import shlex
import subprocess
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import zones
from .era import DEFAULT_STATE_BUDGET, Era, is_deterministic, region_dfa
from .feasibility import Constraint, DiffSystem, base_constraints, extract_witness
from .guards import Alphabet, Guard, event_of, guard_to_pieces
from .words import (
    SymbolicWord,
    TimedWord,
    compatible,
    expand_to_regions,
    is_consistent,
    witness as word_witness,
)

SMT_CMD_ENV = "LEAP_SMT_CMD"

BACKEND_PATH = "path"
BACKEND_SMT = "smt"
BACKEND_ORACLE = "oracle"
BACKEND_FAST = "fast"


class BackendUnavailableError(RuntimeError):
    """The requested backend cannot run (no solver command configured)."""


class FastPathNotApplicableError(RuntimeError):
    """fast_path_region preconditions (deterministic, simple guards) fail."""


@dataclass(frozen=True)
class IntersectionResult:
    nonempty: bool
    witness: TimedWord | None
    backend: str


TransFn = Callable[[str, str], Iterable[tuple[Guard, str]]]


def _era_trans_fn(era: Era) -> TransFn:
    table: dict[tuple[str, str], list[tuple[Guard, str]]] = {}
    for t in era.transitions:
        table.setdefault((t.src, t.event), []).append((t.guard, t.dst))

    def fn(state: str, event: str) -> Iterable[tuple[Guard, str]]:
        return table.get((state, event), ())

    return fn


def path_search(
    trans: TransFn,
    initial: str,
    is_accepting: Callable[[str], bool],
    word: SymbolicWord,
    alphabet: Alphabet,
) -> list[Guard] | None:
    """The guards of an accepting feasible run along the word, or None.

    The zone carried through the search is over the event-recording clocks;
    at each position it is intersected with the word guard, then with a
    candidate transition guard, and reset on the letter's event.
    """
    n = len(alphabet)
    failed: set[tuple[int, str, zones.Dbm]] = set()
    path: list[Guard] = []

    def step(pos: int, state: str, zone: zones.Dbm) -> bool:
        if pos == len(word):
            return is_accepting(state)
        key = (pos, state, zone)
        if key in failed:
            return False
        event, word_guard = word[pos]
        delayed = zones.up(zone, n)
        constrained = delayed
        for clock, iv in word_guard.items:
            constrained = zones.intersect_interval(constrained, alphabet.index(event_of(clock)), iv)
            if constrained is None:
                break
        if constrained is not None:
            for guard, dst in trans(state, event):
                stepped = constrained
                for clock, iv in guard.items:
                    stepped = zones.intersect_interval(
                        stepped, alphabet.index(event_of(clock)), iv
                    )
                    if stepped is None:
                        break
                if stepped is None:
                    continue
                path.append(guard)
                if step(pos + 1, dst, zones.reset(stepped, alphabet.index(event), n)):
                    return True
                path.pop()
        failed.add(key)
        return False

    if step(0, initial, zones.zero_zone(n)):
        return path
    return None


def run_system(word: SymbolicWord, path_guards: Sequence[Guard], alphabet: Alphabet) -> DiffSystem:
    """Difference system of a run: word constraints plus per-step guards."""
    n = len(word)
    constraints = list(base_constraints(n))
    last: dict[str, int] = {}
    for pos0, (event, word_guard) in enumerate(word):
        i = pos0 + 1
        for guard in (word_guard, path_guards[pos0]):
            for clock, iv in guard.items:
                j = last.get(event_of(clock), 0)
                if iv.hi.value is not math.inf:
                    constraints.append(Constraint(i, j, iv.hi.value, iv.hi.strict))
                if iv.lo.value > 0 or iv.lo.strict:
                    constraints.append(Constraint(j, i, -iv.lo.value, iv.lo.strict))
        last[event] = i
    return DiffSystem(n, tuple(constraints))


def _witness_from_path(
    era: Era, word: SymbolicWord, path_guards: list[Guard]
) -> TimedWord:
    from .era import accepts_timed

    stamps = extract_witness(run_system(word, path_guards, era.alphabet))
    tw = tuple((event, t) for (event, _), t in zip(word, stamps))
    if not compatible(tw, word, era.alphabet):
        raise AssertionError(f"intersection witness incompatible with word: {tw}")
    if not accepts_timed(era, tw):
        raise AssertionError(f"intersection witness rejected by automaton: {tw}")
    return tw


def _check_word(era: Era, w: SymbolicWord) -> None:
    for event, _ in w:
        if event not in era.alphabet:
            raise ValueError(f"word event {event!r} not in automaton alphabet")


def intersection_nonempty(
    era: Era,
    w: SymbolicWord,
    backend: str = BACKEND_PATH,
    smt_cmd: str | None = None,
    budget: int = DEFAULT_STATE_BUDGET,
) -> IntersectionResult:
    """Decide whether some timed word is accepted by the ERA and matches w."""
    _check_word(era, w)
    if backend == BACKEND_PATH:
        accepting = era.accepting.__contains__
        path = path_search(_era_trans_fn(era), era.initial, accepting, w, era.alphabet)
        if path is None:
            return IntersectionResult(False, None, BACKEND_PATH)
        return IntersectionResult(True, _witness_from_path(era, w, path), BACKEND_PATH)
    if backend == BACKEND_SMT:
        verdict = _smt_nonempty(era, w, smt_cmd)
        return IntersectionResult(verdict, None, BACKEND_SMT)
    if backend == BACKEND_ORACLE:
        from .words import max_constant

        k = max(era.k, max_constant([w]), 1)
        dfa = region_dfa(era, k=k, budget=budget)
        for rw in expand_to_regions(w, k, era.alphabet):
            if dfa.accepts(rw):
                tw = word_witness(rw, era.alphabet)
                if tw is None:
                    raise AssertionError(f"consistent region word without witness: {rw}")
                return IntersectionResult(True, tw, BACKEND_ORACLE)
        return IntersectionResult(False, None, BACKEND_ORACLE)
    raise ValueError(f"unknown backend {backend!r}")


def fast_path_region(era: Era, w: SymbolicWord) -> IntersectionResult:
    """Polynomial-time check for deterministic automata with simple guards.

    Traces the unique syntactic path of the region word (missing edges
    reject) and combines the verdict with the word's own consistency.
    """
    det, _ = is_deterministic(era)
    if not det:
        raise FastPathNotApplicableError("automaton is not deterministic")
    table: dict[tuple[str, str, tuple[int, ...]], str] = {}
    for t in era.transitions:
        pieces = guard_to_pieces(t.guard, era.k, era.alphabet)
        if pieces is None:
            raise FastPathNotApplicableError(f"non-simple automaton guard: {t.guard}")
        table[(t.src, t.event, pieces)] = t.dst
    letters = []
    for event, g in w:
        pieces = guard_to_pieces(g, era.k, era.alphabet)
        if pieces is None:
            raise FastPathNotApplicableError(f"non-simple word guard: {g}")
        letters.append((event, pieces))
    _check_word(era, w)
    state = era.initial
    for event, pieces in letters:
        nxt = table.get((state, event, pieces))
        if nxt is None:
            return IntersectionResult(False, None, BACKEND_FAST)
        state = nxt
    if state not in era.accepting:
        return IntersectionResult(False, None, BACKEND_FAST)
    tw = word_witness(w, era.alphabet)
    if tw is None:
        return IntersectionResult(False, None, BACKEND_FAST)
    return IntersectionResult(True, tw, BACKEND_FAST)


@dataclass(frozen=True)
class DisjointViolation:
    index: int
    word: SymbolicWord
    witness: TimedWord | None


def disjoint_from_all(
    era: Era,
    negatives: Sequence[SymbolicWord],
    backend: str = BACKEND_PATH,
    smt_cmd: str | None = None,
    budget: int = DEFAULT_STATE_BUDGET,
) -> DisjointViolation | None:
    """None when the language avoids every word; else the first violation."""
    for idx, w in enumerate(negatives):
        result = intersection_nonempty(era, w, backend=backend, smt_cmd=smt_cmd, budget=budget)
        if result.nonempty:
            return DisjointViolation(idx, w, result.witness)
    return None


# ---------------------------------------------------------------------------
# SMT backend
# ---------------------------------------------------------------------------


def smt_script(era: Era, w: SymbolicWord) -> str:
    """QF_LRA encoding of the intersection query.

    Timestamps t_1..t_p are reals; the automaton state after each step is
    encoded with ceil(log2 n) Booleans per step index 0..p.  sat iff the
    intersection is non-empty.
    """
    states = list(era.states)
    n_states = len(states)
    bits = max(1, (n_states - 1).bit_length()) if n_states > 1 else 0
    code = {s: i for i, s in enumerate(states)}
    p = len(w)

    def state_formula(step: int, state: str) -> str:
        if bits == 0:
            return "true"
        i = code[state]
        lits = [
            (f"s{step}_{b}" if (i >> b) & 1 else f"(not s{step}_{b})")
            for b in range(bits)
        ]
        return lits[0] if len(lits) == 1 else "(and " + " ".join(lits) + ")"

    def term(i: int) -> str:
        return "0.0" if i == 0 else f"t{i}"

    last: dict[str, int] = {}
    guard_atoms_at: list[Callable[[Guard], list[str]]] = []
    for pos0, (event, _) in enumerate(w):
        i = pos0 + 1
        snapshot = dict(last)

        def atoms(guard: Guard, i=i, snapshot=snapshot) -> list[str]:
            out = []
            for clock, iv in guard.items:
                j = snapshot.get(event_of(clock), 0)
                expr = f"(- {term(i)} {term(j)})"
                if iv.hi.value is not math.inf:
                    op = "<" if iv.hi.strict else "<="
                    out.append(f"({op} {expr} {float(iv.hi.value)})")
                if iv.lo.value > 0 or iv.lo.strict:
                    op = ">" if iv.lo.strict else ">="
                    out.append(f"({op} {expr} {float(iv.lo.value)})")
            return out

        guard_atoms_at.append(atoms)
        last[event] = i

    lines = ["(set-logic QF_LRA)"]
    for i in range(1, p + 1):
        lines.append(f"(declare-const t{i} Real)")
    for step in range(p + 1):
        for b in range(bits):
            lines.append(f"(declare-const s{step}_{b} Bool)")
    lines.append("(assert (>= t1 0.0))" if p else "(assert true)")
    for i in range(2, p + 1):
        lines.append(f"(assert (<= t{i - 1} t{i}))")
    for pos0, (event, word_guard) in enumerate(w):
        for atom in guard_atoms_at[pos0](word_guard):
            lines.append(f"(assert {atom})")
    lines.append(f"(assert {state_formula(0, era.initial)})")
    for pos0, (event, _) in enumerate(w):
        options = []
        for t in era.transitions:
            if t.event != event:
                continue
            conj = [state_formula(pos0, t.src), state_formula(pos0 + 1, t.dst)]
            conj.extend(guard_atoms_at[pos0](t.guard))
            options.append("(and " + " ".join(conj) + ")")
        if not options:
            lines.append("(assert false)")
            break
        lines.append("(assert (or " + " ".join(options) + "))")
    else:
        finals = [state_formula(p, s) for s in sorted(era.accepting)]
        if not finals:
            lines.append("(assert false)")
        else:
            lines.append("(assert (or " + " ".join(finals) + "))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def _smt_nonempty(era: Era, w: SymbolicWord, smt_cmd: str | None) -> bool:
    cmd = smt_cmd or os.environ.get(SMT_CMD_ENV)
    if not cmd:
        raise BackendUnavailableError(
            f"no SMT solver configured; set {SMT_CMD_ENV} or pass --smt-cmd"
        )
    script = smt_script(era, w)
    proc = subprocess.run(
        shlex.split(cmd),
        input=script.encode(),
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
        timeout=300,
    )
    for token in proc.stdout.decode().split():
        if token == "sat":
            return True
        if token == "unsat":
            return False
    raise BackendUnavailableError(
        f"solver produced no verdict: {proc.stdout.decode()!r} {proc.stderr.decode()!r}"
    )
