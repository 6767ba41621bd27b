"""Event-recording automata: semantics, determinism, region DFA, equivalence.

An ERA has one implicit clock per alphabet event, reset on every occurrence
of that event.  Acceptance of a timed word is decided by subset simulation:
clock valuations depend only on the input word, never on the chosen run, so
tracking the reachable state set is exact even for nondeterministic automata.

The region DFA of an ERA reads symbolic letters (event, simple guard) and
accepts exactly the consistent region words whose denotation lies inside the
automaton's timed language.  Its states pair a reachable ERA state set with
the canonical zone of clock values after the word read so far, extrapolated
at the maximal constant so that only finitely many zones arise.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

from . import zones
from .guards import (
    Alphabet,
    Guard,
    clock_of,
    guard_pieces,
    guard_to_text,
    intersect_guards,
    parse_guard,
    simple_guard_from_pieces,
    valuation_satisfies,
)
from .words import RegionWord, SymbolicWord, TimedWord, clock_word


class StateBudgetExceededError(RuntimeError):
    """A zone-graph construction outgrew the configured state cap."""


DEFAULT_STATE_BUDGET = 20_000


class Transition(NamedTuple):
    src: str
    event: str
    guard: Guard
    dst: str


def _guard_sort_key(g: Guard):
    return tuple(
        (c, iv.lo.value, iv.lo.strict, iv.hi.value, iv.hi.strict) for c, iv in g.items
    )


@dataclass(frozen=True)
class Era:
    """An event-recording automaton with canonically ordered components."""

    alphabet: Alphabet
    k: int
    states: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...]
    accepting: frozenset[str]

    @staticmethod
    def make(
        alphabet: Alphabet | Sequence[str],
        k: int,
        states: Iterable[str],
        initial: str,
        transitions: Iterable[tuple[str, str, Guard, str]],
        accepting: Iterable[str],
    ) -> "Era":
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        states = tuple(sorted(set(states)))
        accepting = frozenset(accepting)
        trans = tuple(
            sorted(
                (Transition(*t) for t in set(transitions)),
                key=lambda t: (t.src, alphabet.index(t.event), _guard_sort_key(t.guard), t.dst),
            )
        )
        era = Era(alphabet, k, states, initial, trans, accepting)
        era._check()
        return era

    def _check(self) -> None:
        if self.initial not in self.states:
            raise ValueError(f"initial state {self.initial!r} not among states")
        if not self.accepting <= set(self.states):
            raise ValueError("accepting states not among states")
        for t in self.transitions:
            if t.src not in self.states or t.dst not in self.states:
                raise ValueError(f"transition endpoint missing: {t}")
            if t.event not in self.alphabet:
                raise ValueError(f"transition event {t.event!r} not in alphabet")
            for _, iv in t.guard.items:
                hi = iv.hi.value
                if iv.lo.value > self.k or (hi is not math.inf and hi > self.k):
                    raise ValueError(f"guard constant exceeds k={self.k}: {t}")

    def outgoing(self, state: str, event: str) -> list[tuple[Guard, str]]:
        return [(t.guard, t.dst) for t in self.transitions if t.src == state and t.event == event]


def accepts_timed(era: Era, tw: TimedWord) -> bool:
    """True iff some run over the timed word ends in an accepting state."""
    current = {era.initial}
    for event, valuation in clock_word(tw, era.alphabet):
        nxt = {
            t.dst
            for t in era.transitions
            if t.src in current and t.event == event and valuation_satisfies(valuation, t.guard)
        }
        if not nxt:
            return False
        current = nxt
    return bool(current & era.accepting)


def is_deterministic(era: Era) -> tuple[bool, tuple[Transition, Transition] | None]:
    """Check pairwise-disjoint guards per (state, event); returns an offending pair."""
    by_key: dict[tuple[str, str], list[Transition]] = {}
    for t in era.transitions:
        by_key.setdefault((t.src, t.event), []).append(t)
    for group in by_key.values():
        for t1, t2 in itertools.combinations(group, 2):
            if intersect_guards(t1.guard, t2.guard) is not None:
                return False, (t1, t2)
    return True, None


# ---------------------------------------------------------------------------
# Region DFA
# ---------------------------------------------------------------------------

Letter = tuple[str, tuple[int, ...]]  # (event, per-clock unit pieces)


@dataclass
class RegionDfa:
    """A DFA over symbolic letters (event, simple guard).

    Transitions exist exactly for the consistency-reachable letters; a region
    word without a full trace is inconsistent and not accepted.
    """

    alphabet: Alphabet
    k: int
    n_states: int
    initial: int
    trans: dict[tuple[int, Letter], int]
    accepting: frozenset[int]
    state_meta: list[tuple[frozenset[str], zones.Dbm]] = field(repr=False)

    def letters_from(self, state: int) -> list[Letter]:
        return sorted(
            (letter for (s, letter) in self.trans if s == state),
            key=lambda l: (self.alphabet.index(l[0]), l[1]),
        )

    def word_to_letters(self, rw: RegionWord) -> list[Letter]:
        from .guards import guard_to_pieces

        letters = []
        for event, g in rw:
            pieces = guard_to_pieces(g, self.k, self.alphabet)
            if pieces is None:
                raise ValueError(f"guard {g} is not simple at k={self.k}")
            letters.append((event, pieces))
        return letters

    def accepts(self, rw: RegionWord) -> bool:
        state = self.initial
        for letter in self.word_to_letters(rw):
            nxt = self.trans.get((state, letter))
            if nxt is None:
                return False
            state = nxt
        return state in self.accepting

    def letter_to_symbolic(self, letter: Letter) -> tuple[str, Guard]:
        return letter[0], simple_guard_from_pieces(letter[1], self.k, self.alphabet)


def all_letters(alphabet: Alphabet, k: int) -> list[Letter]:
    pieces = range(2 * k + 2)
    return [
        (event, combo)
        for event in alphabet
        for combo in itertools.product(pieces, repeat=len(alphabet))
    ]


def _guard_piece_table(era: Era, k: int) -> dict[Guard, tuple[range, ...]]:
    table: dict[Guard, tuple[range, ...]] = {}
    for t in era.transitions:
        if t.guard not in table:
            table[t.guard] = guard_pieces(t.guard, k, era.alphabet)
    return table


def _pieces_in_guard(pieces: tuple[int, ...], ranges: tuple[range, ...]) -> bool:
    return all(p in r for p, r in zip(pieces, ranges))


def region_dfa(era: Era, k: int | None = None, budget: int = DEFAULT_STATE_BUDGET) -> RegionDfa:
    """Zone-based subset construction of the region DFA of an ERA."""
    k = era.k if k is None else max(k, era.k)
    alphabet = era.alphabet
    n = len(alphabet)
    guard_table = _guard_piece_table(era, k)
    out_by_state_event: dict[tuple[str, str], list[tuple[Guard, str]]] = {}
    for t in era.transitions:
        out_by_state_event.setdefault((t.src, t.event), []).append((t.guard, t.dst))

    piece_space = list(itertools.product(range(2 * k + 2), repeat=n))
    init_key = (frozenset([era.initial]), zones.zero_zone(n))
    ids: dict[tuple[frozenset[str], zones.Dbm], int] = {init_key: 0}
    meta: list[tuple[frozenset[str], zones.Dbm]] = [init_key]
    trans: dict[tuple[int, Letter], int] = {}
    queue = [0]
    while queue:
        sid = queue.pop(0)
        era_set, zone = meta[sid]
        delayed = zones.up(zone, n)
        for event in alphabet:
            for pieces in piece_space:
                stepped = zones.intersect_pieces(delayed, pieces, k, n)
                if stepped is None:
                    continue
                targets = frozenset(
                    dst
                    for src in era_set
                    for guard, dst in out_by_state_event.get((src, event), ())
                    if _pieces_in_guard(pieces, guard_table[guard])
                )
                nxt_zone = zones.extrapolate(zones.reset(stepped, alphabet.index(event), n), k)
                key = (targets, nxt_zone)
                nid = ids.get(key)
                if nid is None:
                    nid = len(meta)
                    if nid >= budget:
                        raise StateBudgetExceededError(
                            f"region DFA exceeded {budget} states for {len(era.states)}-state ERA"
                        )
                    ids[key] = nid
                    meta.append(key)
                    queue.append(nid)
                trans[(sid, (event, pieces))] = nid
    accepting = frozenset(i for i, (s, _) in enumerate(meta) if s & era.accepting)
    return RegionDfa(alphabet, k, len(meta), 0, trans, accepting, meta)


def equivalent(
    a: Era,
    b: Era,
    budget: int = DEFAULT_STATE_BUDGET,
) -> tuple[bool, RegionWord | None]:
    """Timed-language equality, with a least counterexample region word.

    Runs a synchronized zone-subset construction of both automata; a
    reachable configuration accepting in exactly one is turned into the
    shortest (then lexicographically least) separating region word.
    """
    if a.alphabet != b.alphabet:
        raise ValueError(f"alphabet mismatch: {a.alphabet} vs {b.alphabet}")
    alphabet = a.alphabet
    k = max(a.k, b.k)
    n = len(alphabet)
    table_a = _guard_piece_table(a, k)
    table_b = _guard_piece_table(b, k)
    out_a: dict[tuple[str, str], list[tuple[Guard, str]]] = {}
    for t in a.transitions:
        out_a.setdefault((t.src, t.event), []).append((t.guard, t.dst))
    out_b: dict[tuple[str, str], list[tuple[Guard, str]]] = {}
    for t in b.transitions:
        out_b.setdefault((t.src, t.event), []).append((t.guard, t.dst))

    piece_space = list(itertools.product(range(2 * k + 2), repeat=n))
    start = (frozenset([a.initial]), frozenset([b.initial]), zones.zero_zone(n))
    seen = {start: None}  # state -> (parent state, letter)
    queue = [start]
    while queue:
        cfg = queue.pop(0)
        set_a, set_b, zone = cfg
        if bool(set_a & a.accepting) != bool(set_b & b.accepting):
            letters: list[Letter] = []
            cur = cfg
            while seen[cur] is not None:
                cur, letter = seen[cur]
                letters.append(letter)
            letters.reverse()
            cex = tuple(
                (event, simple_guard_from_pieces(pieces, k, alphabet))
                for event, pieces in letters
            )
            return False, cex
        delayed = zones.up(zone, n)
        for event in alphabet:
            for pieces in piece_space:
                stepped = zones.intersect_pieces(delayed, pieces, k, n)
                if stepped is None:
                    continue
                nxt_a = frozenset(
                    dst
                    for src in set_a
                    for guard, dst in out_a.get((src, event), ())
                    if _pieces_in_guard(pieces, table_a[guard])
                )
                nxt_b = frozenset(
                    dst
                    for src in set_b
                    for guard, dst in out_b.get((src, event), ())
                    if _pieces_in_guard(pieces, table_b[guard])
                )
                nxt_zone = zones.extrapolate(zones.reset(stepped, alphabet.index(event), n), k)
                key = (nxt_a, nxt_b, nxt_zone)
                if key not in seen:
                    if len(seen) >= budget:
                        raise StateBudgetExceededError(
                            f"equivalence product exceeded {budget} configurations"
                        )
                    seen[key] = (cfg, (event, pieces))
                    queue.append(key)
    return True, None


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def canonical_rename(era: Era) -> Era:
    """Rename states to q0, q1, ... in breadth-first discovery order."""
    order: list[str] = [era.initial]
    seen = {era.initial}
    i = 0
    while i < len(order):
        state = order[i]
        i += 1
        for t in era.transitions:
            if t.src == state and t.dst not in seen:
                seen.add(t.dst)
                order.append(t.dst)
    for state in era.states:  # unreachable states keep a stable position
        if state not in seen:
            seen.add(state)
            order.append(state)
    names = {old: f"q{i}" for i, old in enumerate(order)}
    return Era.make(
        era.alphabet,
        era.k,
        [names[s] for s in era.states],
        names[era.initial],
        [(names[t.src], t.event, t.guard, names[t.dst]) for t in era.transitions],
        [names[s] for s in era.accepting],
    )


def era_to_json(era: Era, rename: bool = True) -> dict:
    if rename:
        era = canonical_rename(era)
    return {
        "alphabet": list(era.alphabet.events),
        "k": era.k,
        "states": list(era.states),
        "initial": era.initial,
        "accepting": sorted(era.accepting),
        "transitions": [
            {
                "from": t.src,
                "event": t.event,
                "guard": guard_to_text(t.guard, era.alphabet),
                "to": t.dst,
            }
            for t in era.transitions
        ],
    }


def era_from_json(data: dict) -> Era:
    alphabet = Alphabet(data["alphabet"])
    k = int(data["k"])
    transitions = [
        (t["from"], t["event"], parse_guard(t["guard"], k, alphabet), t["to"])
        for t in data["transitions"]
    ]
    return Era.make(
        alphabet, k, data["states"], data["initial"], transitions, data["accepting"]
    )


def era_to_json_text(era: Era, rename: bool = True) -> str:
    return json.dumps(era_to_json(era, rename=rename), indent=2, sort_keys=False) + "\n"


def era_to_dot(era: Era, rename: bool = True) -> str:
    if rename:
        era = canonical_rename(era)
    lines = ["digraph era {", "  rankdir=LR;", '  __init [shape=point, label=""];']
    for state in era.states:
        shape = "doublecircle" if state in era.accepting else "circle"
        lines.append(f'  "{state}" [shape={shape}];')
    lines.append(f'  __init -> "{era.initial}";')
    for t in era.transitions:
        label = f"{t.event}, {guard_to_text(t.guard, era.alphabet)}"
        lines.append(f'  "{t.src}" -> "{t.dst}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
