"""Timed, clocked, symbolic and region words.

A timed word is a sequence of (event, timestamp) pairs with non-decreasing
rational timestamps.  A symbolic word replaces timestamps with guards over
the event-recording clocks and denotes the set of timed words compatible
with it.  Region words are symbolic words whose guards are all simple.

Timestamps are exact rationals throughout: strict guard bounds make float
comparisons unsound.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .guards import (
    Alphabet,
    Guard,
    GuardParseError,
    clock_of,
    compare_guards,
    guard_pieces,
    guard_to_text,
    is_simple_guard,
    parse_guard,
    piece_interval,
    simple_guard_from_pieces,
    valuation_satisfies,
)

TimedWord = tuple[tuple[str, Fraction], ...]
ClockValuation = dict[str, Fraction]
SymbolicWord = tuple[tuple[str, Guard], ...]
# region words are symbolic words whose guards are all simple
RegionWord = SymbolicWord


def timed_word(pairs: Iterable[tuple[str, object]]) -> TimedWord:
    """Build a timed word, checking monotonicity and converting to Fractions."""
    out: list[tuple[str, Fraction]] = []
    prev = Fraction(0)
    for event, stamp in pairs:
        t = Fraction(stamp) if not isinstance(stamp, Fraction) else stamp
        if t < 0:
            raise ValueError(f"negative timestamp {t}")
        if out and t < out[-1][1]:
            raise ValueError(f"timestamps must be non-decreasing, got {t} after {out[-1][1]}")
        out.append((event, t))
        prev = t
    return tuple(out)


def clock_word(tw: TimedWord, alphabet: Alphabet) -> tuple[tuple[str, ClockValuation], ...]:
    """The clocked word of a timed word.

    Position i maps each clock to the time since the last strictly earlier
    occurrence of its event, measured from 0 when the event has not occurred.
    """
    last: dict[str, Fraction] = {e: Fraction(0) for e in alphabet}
    out = []
    for event, t in tw:
        valuation = {clock_of(e): t - last[e] for e in alphabet}
        out.append((event, valuation))
        last[event] = t
    return tuple(out)


def compatible(tw: TimedWord, sw: SymbolicWord, alphabet: Alphabet) -> bool:
    """True iff the timed word lies in the symbolic word's denotation."""
    if len(tw) != len(sw):
        return False
    cw = clock_word(tw, alphabet)
    for (ev_t, valuation), (ev_s, guard) in zip(cw, sw):
        if ev_t != ev_s or not valuation_satisfies(valuation, guard):
            return False
    return True


def is_consistent(sw: SymbolicWord, alphabet: Alphabet) -> bool:
    """True iff some timed word is compatible with ``sw``."""
    from .feasibility import from_symbolic_word, is_feasible

    return is_feasible(from_symbolic_word(sw, alphabet))


def witness(sw: SymbolicWord, alphabet: Alphabet) -> TimedWord | None:
    """A timed word compatible with ``sw``, or None when none exists.

    The returned word is re-checked against ``sw`` before returning.
    """
    from .feasibility import extract_witness, from_symbolic_word, is_feasible

    system = from_symbolic_word(sw, alphabet)
    if not is_feasible(system):
        return None
    stamps = extract_witness(system)
    tw = tuple((event, t) for (event, _), t in zip(sw, stamps))
    if not compatible(tw, sw, alphabet):
        raise AssertionError(f"witness {tw} fails compatibility with {sw}")
    return tw


def expand_to_regions(
    sw: SymbolicWord,
    k: int,
    alphabet: Alphabet,
    include_inconsistent: bool = False,
) -> list[RegionWord]:
    """All region words refining ``sw``, in ascending order.

    The denotations of the returned words partition the denotation of the
    input.  Inconsistent refinements are dropped unless requested; pruning
    happens per prefix so large products are never materialized.
    """
    from . import zones

    n = len(alphabet)
    letters: list[tuple[str, list[tuple[int, ...]]]] = []
    for event, guard in sw:
        ranges = guard_pieces(guard, k, alphabet)
        combos = [()]
        for r in ranges:
            combos = [c + (p,) for c in combos for p in r]
        letters.append((event, combos))

    out: list[RegionWord] = []
    if include_inconsistent:
        def walk_all(i: int, acc: list[tuple[str, Guard]]) -> None:
            if i == len(letters):
                out.append(tuple(acc))
                return
            event, combos = letters[i]
            for pieces in combos:
                acc.append((event, simple_guard_from_pieces(pieces, k, alphabet)))
                walk_all(i + 1, acc)
                acc.pop()

        walk_all(0, [])
        return out

    def walk(i: int, zone, acc: list[tuple[str, Guard]]) -> None:
        if i == len(letters):
            out.append(tuple(acc))
            return
        event, combos = letters[i]
        delayed = zones.up(zone, n)
        for pieces in combos:
            stepped = zones.intersect_pieces(delayed, pieces, k, n)
            if stepped is None:
                continue
            acc.append((event, simple_guard_from_pieces(pieces, k, alphabet)))
            walk(i + 1, zones.reset(stepped, alphabet.index(event), n), acc)
            acc.pop()

    walk(0, zones.zero_zone(n), [])
    return out


def compare_words(w1: SymbolicWord, w2: SymbolicWord, k: int, alphabet: Alphabet) -> int:
    """Length-first, then positionwise (event, guard) total order: -1, 0, +1."""
    if len(w1) != len(w2):
        return -1 if len(w1) < len(w2) else 1
    for (e1, g1), (e2, g2) in zip(w1, w2):
        if e1 != e2:
            return -1 if alphabet.index(e1) < alphabet.index(e2) else 1
        c = compare_guards(g1, g2, k, alphabet)
        if c != 0:
            return c
    return 0


def max_constant(words: Iterable[SymbolicWord]) -> int:
    """Largest constant appearing in any guard; 0 when none do."""
    best = 0
    for w in words:
        for _, g in w:
            for _, iv in g.items:
                if isinstance(iv.lo.value, int):
                    best = max(best, iv.lo.value)
                if isinstance(iv.hi.value, int):
                    best = max(best, iv.hi.value)
    return best


def is_region_word(sw: SymbolicWord, k: int, alphabet: Alphabet) -> bool:
    return all(is_simple_guard(g, k, alphabet) for _, g in sw)


# ---------------------------------------------------------------------------
# Text and JSON forms
#
#   symbolic word:  (event, guard); (event, guard); ...        "eps" = empty
#   timed word:     (event, stamp)(event, stamp)...            "eps" = empty
# ---------------------------------------------------------------------------

_TIMED_PAIR = re.compile(r"\(\s*([^\s,()]+)\s*,\s*([0-9./]+)\s*\)")


def parse_symbolic_word(text: str, k: int, alphabet: Alphabet) -> SymbolicWord:
    text = text.strip()
    if text in ("eps", ""):
        return ()
    letters = []
    for pos, chunk in enumerate(text.split(";")):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise GuardParseError(f"letter {pos}: expected '(event, guard)', got {chunk!r}")
        body = chunk[1:-1]
        if "," not in body:
            raise GuardParseError(f"letter {pos}: missing ',' in {chunk!r}")
        event, guard_text = body.split(",", 1)
        event = event.strip()
        if event not in alphabet:
            raise GuardParseError(f"letter {pos}: unknown event {event!r}")
        letters.append((event, parse_guard(guard_text, k, alphabet)))
    return tuple(letters)


def symbolic_word_to_text(sw: SymbolicWord, alphabet: Alphabet) -> str:
    if not sw:
        return "eps"
    return "; ".join(f"({e}, {guard_to_text(g, alphabet)})" for e, g in sw)


def parse_timed_word(text: str, alphabet: Alphabet) -> TimedWord:
    text = text.strip()
    if text in ("eps", ""):
        return ()
    pairs = _TIMED_PAIR.findall(text)
    consumed = _TIMED_PAIR.sub("", text).replace(";", "").strip()
    if not pairs or consumed:
        raise GuardParseError(f"cannot parse timed word {text!r}")
    out = []
    for event, stamp in pairs:
        if event not in alphabet:
            raise GuardParseError(f"unknown event {event!r} in timed word")
        out.append((event, Fraction(stamp)))
    return timed_word(out)


def timed_word_to_text(tw: TimedWord) -> str:
    if not tw:
        return "eps"

    def fmt(t: Fraction) -> str:
        return str(t.numerator) if t.denominator == 1 else f"{t.numerator}/{t.denominator}"

    return "".join(f"({e},{fmt(t)})" for e, t in tw)


def symbolic_word_to_json(sw: SymbolicWord, alphabet: Alphabet) -> list[dict]:
    return [{"event": e, "guard": guard_to_text(g, alphabet)} for e, g in sw]


def symbolic_word_from_json(data: Sequence[dict], k: int, alphabet: Alphabet) -> SymbolicWord:
    letters = []
    for pos, item in enumerate(data):
        event = item["event"]
        if event not in alphabet:
            raise GuardParseError(f"letter {pos}: unknown event {event!r}")
        letters.append((event, parse_guard(item["guard"], k, alphabet)))
    return tuple(letters)
