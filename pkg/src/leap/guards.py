"""Clock guards over event-recording clocks.

A guard constrains, per clock, the time elapsed since the last occurrence of
the clock's event to an integer-bounded interval.  All constants are integers
in [0, K] for a per-automaton maximal constant K; the only unbounded piece is
the open ray (K, oo).  Guards are immutable, hashable values; syntactic
equality after normalization coincides with semantic equality.

A *simple* guard constrains every clock of the alphabet to one of the unit
pieces [c,c], (c,c+1) or (K,oo); simple guards form the granularity at which
two guards are either identical or disjoint.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

INF = math.inf

CLOCK_PREFIX = "x_"


class GuardError(ValueError):
    """Base class for guard construction errors."""


class EmptyGuardError(GuardError):
    """The conjunction of atoms has no solutions."""


class UnknownClockError(GuardError):
    """A clock does not belong to any alphabet event."""


class ConstantTooLargeError(GuardError):
    """A guard constant exceeds the maximal constant K."""


class GuardParseError(GuardError):
    """Malformed guard text."""


def clock_of(event: str) -> str:
    return CLOCK_PREFIX + event


def event_of(clock: str) -> str:
    if not clock.startswith(CLOCK_PREFIX):
        raise UnknownClockError(f"not a clock name: {clock!r}")
    return clock[len(CLOCK_PREFIX):]


class Alphabet:
    """An ordered event set; the order induces the order on clocks."""

    __slots__ = ("events", "_index")

    def __init__(self, events: Sequence[str]):
        events = tuple(events)
        if len(set(events)) != len(events):
            raise ValueError(f"duplicate events in alphabet: {events}")
        if not all(events):
            raise ValueError("empty event name")
        self.events = events
        self._index = {e: i for i, e in enumerate(events)}

    def __contains__(self, event: str) -> bool:
        return event in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.events == other.events

    def __hash__(self) -> int:
        return hash(self.events)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.events)!r})"

    def index(self, event: str) -> int:
        try:
            return self._index[event]
        except KeyError:
            raise UnknownClockError(f"event {event!r} not in alphabet {self.events}") from None

    def clocks(self) -> tuple[str, ...]:
        return tuple(clock_of(e) for e in self.events)


@dataclass(frozen=True, slots=True)
class Bound:
    """One endpoint of an interval; value is an int or +oo (upper only)."""

    value: int | float
    strict: bool

    def __post_init__(self) -> None:
        if self.value is INF:
            # canonical representation of "no upper bound"
            object.__setattr__(self, "strict", True)
        elif not isinstance(self.value, int) or self.value < 0:
            raise GuardError(f"bound value must be a non-negative integer or +oo: {self.value!r}")


_LO_FULL = Bound(0, False)
_HI_FULL = Bound(INF, True)


@dataclass(frozen=True, slots=True)
class Interval:
    """A non-empty interval with integer endpoints (upper may be +oo)."""

    lo: Bound
    hi: Bound

    def __post_init__(self) -> None:
        if self.hi.value is not INF:
            if self.lo.value > self.hi.value:
                raise EmptyGuardError(f"empty interval: {self}")
            if self.lo.value == self.hi.value and (self.lo.strict or self.hi.strict):
                raise EmptyGuardError(f"empty interval: {self}")

    def is_full(self) -> bool:
        return self.lo == _LO_FULL and self.hi == _HI_FULL

    def contains(self, value) -> bool:
        if self.lo.strict:
            if not value > self.lo.value:
                return False
        elif not value >= self.lo.value:
            return False
        if self.hi.value is INF:
            return True
        if self.hi.strict:
            return value < self.hi.value
        return value <= self.hi.value

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = _tighter_lo(self.lo, other.lo)
        hi = _tighter_hi(self.hi, other.hi)
        try:
            return Interval(lo, hi)
        except EmptyGuardError:
            return None


FULL_INTERVAL = Interval(_LO_FULL, _HI_FULL)


def _tighter_lo(a: Bound, b: Bound) -> Bound:
    if a.value != b.value:
        return a if a.value > b.value else b
    return a if a.strict else b


def _tighter_hi(a: Bound, b: Bound) -> Bound:
    if a.value != b.value:
        return a if a.value < b.value else b
    return a if a.strict else b


@dataclass(frozen=True, eq=False)
class Guard:
    """A conjunction of per-clock intervals; absent clocks are unconstrained.

    ``items`` is sorted by clock name, full intervals dropped, so structural
    equality of guards is semantic equality.  The hash is cached: guards key
    transition tables on hot paths.
    """

    items: tuple[tuple[str, Interval], ...] = ()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Guard) and self.items == other.items

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.items)
            object.__setattr__(self, "_hash", h)
        return h

    @staticmethod
    def of(mapping: Mapping[str, Interval]) -> "Guard":
        items = tuple(sorted((c, iv) for c, iv in mapping.items() if not iv.is_full()))
        return Guard(items)

    def interval_for(self, clock: str) -> Interval:
        for c, iv in self.items:
            if c == clock:
                return iv
        return FULL_INTERVAL

    def clocks(self) -> tuple[str, ...]:
        return tuple(c for c, _ in self.items)

    def is_top(self) -> bool:
        return not self.items

    def __repr__(self) -> str:
        if not self.items:
            return "Guard(true)"
        return f"Guard({' && '.join(f'{c}:{_interval_text(iv)}' for c, iv in self.items)})"


TOP = Guard()

_OPS = ("<=", ">=", "=", "<", ">")


def normalize(
    atoms: Iterable[tuple[str, str, int]],
    k: int,
    alphabet: Alphabet,
) -> Guard:
    """Build the canonical guard equivalent to a conjunction of atoms.

    Each atom is ``(clock, op, constant)`` with op one of =, <, <=, >, >=.
    Raises ``EmptyGuardError`` when the conjunction is unsatisfiable,
    ``UnknownClockError`` for clocks outside the alphabet and
    ``ConstantTooLargeError`` for constants above K.
    """
    if k < 1:
        raise GuardError(f"maximal constant must be positive, got {k}")
    intervals: dict[str, Interval] = {}
    for clock, op, const in atoms:
        event = event_of(clock)
        if event not in alphabet:
            raise UnknownClockError(f"clock {clock!r} has no event in alphabet {alphabet.events}")
        if not isinstance(const, int) or const < 0:
            raise GuardError(f"guard constant must be a non-negative integer: {const!r}")
        if const > k:
            raise ConstantTooLargeError(f"constant {const} exceeds maximal constant {k}")
        if op == "=":
            atom = Interval(Bound(const, False), Bound(const, False))
        elif op == "<":
            atom = Interval(_LO_FULL, Bound(const, True))
        elif op == "<=":
            atom = Interval(_LO_FULL, Bound(const, False))
        elif op == ">":
            atom = Interval(Bound(const, True), _HI_FULL)
        elif op == ">=":
            atom = Interval(Bound(const, False), _HI_FULL)
        else:
            raise GuardError(f"unknown comparison operator {op!r}")
        prev = intervals.get(clock, FULL_INTERVAL)
        merged = prev.intersect(atom)
        if merged is None:
            raise EmptyGuardError(f"contradictory constraints on {clock}")
        intervals[clock] = merged
    return Guard.of(intervals)


def intersect_guards(g1: Guard, g2: Guard) -> Guard | None:
    """Conjunction of two guards; ``None`` marks the empty intersection."""
    intervals = dict(g1.items)
    for clock, iv in g2.items:
        merged = intervals.get(clock, FULL_INTERVAL).intersect(iv)
        if merged is None:
            return None
        intervals[clock] = merged
    return Guard.of(intervals)


def valuation_satisfies(valuation: Mapping[str, object], g: Guard) -> bool:
    """True iff the clock valuation lies in the guard's solution set."""
    for clock, iv in g.items:
        if clock not in valuation:
            raise UnknownClockError(f"valuation missing clock {clock}")
        if not iv.contains(valuation[clock]):
            return False
    return True


# ---------------------------------------------------------------------------
# Unit pieces: the grid refining every integer-bounded interval.
#
# Piece indices for maximal constant K:
#   2c   <-> [c, c]        for 0 <= c <= K
#   2c+1 <-> (c, c+1)      for 0 <= c < K
#   2K+1 <-> (K, oo)
# ---------------------------------------------------------------------------


def piece_count(k: int) -> int:
    return 2 * k + 2


def piece_interval(piece: int, k: int) -> Interval:
    if not 0 <= piece <= 2 * k + 1:
        raise GuardError(f"piece {piece} out of range for K={k}")
    if piece == 2 * k + 1:
        return Interval(Bound(k, True), _HI_FULL)
    c, odd = divmod(piece, 2)
    if odd:
        return Interval(Bound(c, True), Bound(c + 1, True))
    return Interval(Bound(c, False), Bound(c, False))


def interval_pieces(iv: Interval, k: int) -> range:
    """The contiguous range of piece indices whose union is the interval."""
    if iv.lo.value > k or (iv.lo.value == k and iv.lo.strict):
        return range(2 * k + 1, 2 * k + 2)
    first = 2 * iv.lo.value + (1 if iv.lo.strict else 0)
    if iv.hi.value is INF:
        return range(first, 2 * k + 2)
    last = 2 * iv.hi.value - (1 if iv.hi.strict else 0)
    return range(first, last + 1)


def guard_pieces(g: Guard, k: int, alphabet: Alphabet) -> tuple[range, ...]:
    """Per-clock piece ranges, one per alphabet clock in alphabet order."""
    return tuple(interval_pieces(g.interval_for(clock_of(e)), k) for e in alphabet)


def simple_guard_from_pieces(pieces: Sequence[int], k: int, alphabet: Alphabet) -> Guard:
    intervals = {
        clock_of(e): piece_interval(p, k) for e, p in zip(alphabet.events, pieces, strict=True)
    }
    return Guard.of(intervals)


def guard_to_pieces(g: Guard, k: int, alphabet: Alphabet) -> tuple[int, ...] | None:
    """The piece tuple of a simple guard, or ``None`` if the guard is not simple."""
    out = []
    for e in alphabet:
        r = interval_pieces(g.interval_for(clock_of(e)), k)
        if len(r) != 1:
            return None
        out.append(r[0])
    return tuple(out)


def is_simple_guard(g: Guard, k: int, alphabet: Alphabet) -> bool:
    return guard_to_pieces(g, k, alphabet) is not None


def regions_of(g: Guard, k: int, alphabet: Alphabet) -> list[Guard]:
    """Decompose a guard into the simple guards it covers, in ascending order.

    The returned guards are pairwise disjoint, their union is the input
    guard, and each is either contained in or disjoint from any unit piece.
    """
    ranges = guard_pieces(g, k, alphabet)
    return [simple_guard_from_pieces(combo, k, alphabet) for combo in itertools.product(*ranges)]


def compare_guards(g1: Guard, g2: Guard, k: int, alphabet: Alphabet) -> int:
    """Total order on guards: -1, 0 or +1.

    A guard denotes a set of simple guards (its region decomposition); the
    order compares these sets by their greatest differing region, the owner
    being the greater guard.  Strict semantic inclusion therefore always
    makes the included guard smaller, and disjoint guards compare by their
    topmost region.  Computed per clock without enumerating the product.
    """
    ranges1 = guard_pieces(g1, k, alphabet)
    ranges2 = guard_pieces(g2, k, alphabet)
    if ranges1 == ranges2:
        return 0
    top = 2 * k + 1
    result = 0
    # scan clocks from least significant to most significant, carrying the
    # verdict of the less significant suffix
    for r1, r2 in zip(reversed(ranges1), reversed(ranges2)):
        if r1 == r2:
            continue
        sub = result
        verdict = 0
        for p in range(top, -1, -1):
            a = p in r1
            b = p in r2
            if a and b:
                if sub != 0:
                    verdict = sub
                    break
            elif a:
                verdict = 1
                break
            elif b:
                verdict = -1
                break
        result = verdict
    return result


# ---------------------------------------------------------------------------
# Text grammar
#
#   guard := "true" | atom ("&&" atom)*
#   atom  := clock op INT | INT relop clock relop INT
#   op    := "=" | "<" | "<=" | ">" | ">="
#   relop := "<" | "<="
#   clock := "x_" IDENT
#
# Canonical serialization: clocks in alphabet order; two-sided form when both
# bounds are finite, non-trivial and distinct; trivial lower bounds omitted.
# ---------------------------------------------------------------------------

_IDENT = r"[A-Za-z0-9_#.\-]+"
_ATOM_CLOCK_OP = re.compile(
    rf"^\s*(x_{_IDENT})\s*(<=|>=|=|<|>)\s*(\d+)\s*$"
)
_ATOM_TWO_SIDED = re.compile(
    rf"^\s*(\d+)\s*(<=|<)\s*(x_{_IDENT})\s*(<=|<)\s*(\d+)\s*$"
)


def parse_guard(text: str, k: int, alphabet: Alphabet) -> Guard:
    """Parse guard text into a canonical guard."""
    text = text.strip()
    if text in ("true", "", "T"):
        return TOP
    atoms: list[tuple[str, str, int]] = []
    for part in text.split("&&"):
        m = _ATOM_CLOCK_OP.match(part)
        if m:
            atoms.append((m.group(1), m.group(2), int(m.group(3))))
            continue
        m = _ATOM_TWO_SIDED.match(part)
        if m:
            lo, lop, clock, hop, hi = m.groups()
            atoms.append((clock, ">" if lop == "<" else ">=", int(lo)))
            atoms.append((clock, "<" if hop == "<" else "<=", int(hi)))
            continue
        raise GuardParseError(f"cannot parse guard atom {part.strip()!r} (column {text.find(part)})")
    return normalize(atoms, k, alphabet)


def _interval_text(iv: Interval) -> str:
    lo = ("(" if iv.lo.strict else "[") + str(iv.lo.value)
    hi = ("oo)" if iv.hi.value is INF else str(iv.hi.value) + (")" if iv.hi.strict else "]"))
    return f"{lo},{hi}"


def _atom_text(clock: str, iv: Interval) -> str:
    lo, hi = iv.lo, iv.hi
    lo_trivial = lo == _LO_FULL
    if hi.value is INF:
        if lo_trivial:
            return f"{clock} >= 0"
        return f"{clock} {'>' if lo.strict else '>='} {lo.value}"
    if lo.value == hi.value:
        return f"{clock} = {lo.value}"
    if lo_trivial:
        return f"{clock} {'<' if hi.strict else '<='} {hi.value}"
    return (
        f"{lo.value} {'<' if lo.strict else '<='} {clock}"
        f" {'<' if hi.strict else '<='} {hi.value}"
    )


def guard_to_text(g: Guard, alphabet: Alphabet) -> str:
    """Canonical guard text, clocks in alphabet order."""
    if g.is_top():
        return "true"
    by_clock = dict(g.items)
    parts = []
    for e in alphabet:
        clock = clock_of(e)
        if clock in by_clock:
            parts.append(_atom_text(clock, by_clock[clock]))
    return " && ".join(parts)
