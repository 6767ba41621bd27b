"""3-CNF to intersection-non-emptiness reduction, plus a brute-force oracle.

The constructed automaton runs in two phases over the alphabet
{p1..pn, delta, ok}.  The first phase picks a truth value per variable by
delaying each p_i transition 1 (true) or 2 (false) time units into its
3-unit slot; the second phase checks one clause per ok letter by reading
the per-variable clocks, with zero time elapsing.  The companion symbolic
word fixes only the untimed shape, so the intersection is non-empty exactly
when the formula is satisfiable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .era import Era
from .guards import TOP, Alphabet, Guard, clock_of, normalize
from .words import SymbolicWord

DELIM = "delta"
OK = "ok"


class TooLargeError(ValueError):
    """brute_sat is exhaustive and capped."""


@dataclass(frozen=True)
class Cnf3:
    """A CNF with exactly three (possibly repeated) literals per clause."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError(f"clause must have exactly 3 literals: {clause}")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")

    @staticmethod
    def make(num_vars: int, clauses: Sequence[Sequence[int]]) -> "Cnf3":
        padded = []
        for clause in clauses:
            clause = list(clause)
            if not clause:
                raise ValueError("empty clause")
            if len(clause) > 3:
                raise ValueError(f"clause with more than 3 literals: {clause}")
            while len(clause) < 3:
                clause.append(clause[0])
            padded.append(tuple(clause))
        return Cnf3(num_vars, tuple(padded))


def parse_dimacs(text: str) -> Cnf3:
    """Parse standard DIMACS CNF; short clauses are padded by repetition."""
    num_vars = None
    num_clauses = None
    clauses: list[list[int]] = []
    pending: list[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    if pending:
        clauses.append(pending)
    if num_vars is None:
        raise ValueError("missing DIMACS header")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise ValueError(f"header announced {num_clauses} clauses, found {len(clauses)}")
    return Cnf3.make(num_vars, clauses)


def brute_sat(f: Cnf3, cap: int = 20) -> dict[int, bool] | None:
    """A satisfying assignment found by enumeration, or None."""
    if f.num_vars > cap:
        raise TooLargeError(f"{f.num_vars} variables exceed the exhaustive cap {cap}")
    for bits in itertools.product((False, True), repeat=f.num_vars):
        assignment = {i + 1: bits[i] for i in range(f.num_vars)}
        if all(
            any(assignment[abs(lit)] == (lit > 0) for lit in clause) for clause in f.clauses
        ):
            return assignment
    return None


def _var_event(i: int) -> str:
    return f"p{i}"


def reduction_k(n: int) -> int:
    return 3 * n + 2


def build_reduction(f: Cnf3) -> tuple[Era, SymbolicWord]:
    """The automaton/word pair whose intersection is non-empty iff f is sat.

    Clause transitions are expanded into one transition per full valuation of
    the variable clocks, which makes the automaton deterministic; the word is
    (delta, T) (p1, T) (delta, T) ... (pn, T) (delta, T) (delta, T) (ok, T)^m.
    """
    n, m = f.num_vars, len(f.clauses)
    events = [_var_event(i) for i in range(1, n + 1)] + [DELIM, OK]
    alphabet = Alphabet(events)
    k = reduction_k(n)

    def g(*atoms: tuple[str, str, int]) -> Guard:
        return normalize(list(atoms), k, alphabet)

    states = (
        ["q0"]
        + [f"v{i}" for i in range(n + 1)]
        + [f"p{i}_true" for i in range(1, n + 1)]
        + [f"p{i}_false" for i in range(1, n + 1)]
        + [f"C{h}" for h in range(1, m + 2)]
    )
    transitions: list[tuple[str, str, Guard, str]] = [("q0", DELIM, TOP, "v0")]
    for i in range(1, n + 1):
        ev = _var_event(i)
        transitions.append((f"v{i-1}", ev, g((clock_of(DELIM), "=", 1)), f"p{i}_true"))
        transitions.append((f"v{i-1}", ev, g((clock_of(DELIM), "=", 2)), f"p{i}_false"))
        transitions.append((f"p{i}_true", DELIM, g((clock_of(ev), "=", 2)), f"v{i}"))
        transitions.append((f"p{i}_false", DELIM, g((clock_of(ev), "=", 1)), f"v{i}"))
    transitions.append((f"v{n}", DELIM, g((clock_of(DELIM), "=", 0)), "C1"))

    # at the clause states, the clock of p_i reads 3(n-i)+2 when p_i was set
    # true and 3(n-i)+1 when false
    def true_value(i: int) -> int:
        return 3 * (n - i) + 2

    def false_value(i: int) -> int:
        return 3 * (n - i) + 1

    for h, clause in enumerate(f.clauses, start=1):
        guards: set[Guard] = set()
        for lit in clause:
            i = abs(lit)
            fixed = true_value(i) if lit > 0 else false_value(i)
            others = [j for j in range(1, n + 1) if j != i]
            for combo in itertools.product((True, False), repeat=len(others)):
                atoms = [(clock_of(_var_event(i)), "=", fixed), (clock_of(DELIM), "=", 0)]
                for j, val in zip(others, combo):
                    atoms.append(
                        (clock_of(_var_event(j)), "=", true_value(j) if val else false_value(j))
                    )
                guards.add(normalize(atoms, k, alphabet))
        for guard in guards:
            transitions.append((f"C{h}", OK, guard, f"C{h+1}"))

    era = Era.make(alphabet, k, states, "q0", transitions, [f"C{m+1}"])

    word: list[tuple[str, Guard]] = [(DELIM, TOP)]
    for i in range(1, n + 1):
        word.append((_var_event(i), TOP))
        word.append((DELIM, TOP))
    word.append((DELIM, TOP))
    word.extend((OK, TOP) for _ in range(m))
    return era, tuple(word)
