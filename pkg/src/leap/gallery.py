"""Ready-made automata and samples used in tests, docs and the demo UI.

Guards quantify the time since the last occurrence of an event (clock
``x_<event>``); ``T`` below abbreviates the trivial guard.
"""

from __future__ import annotations

from .era import Era
from .guards import TOP, Alphabet, parse_guard
from .learner import Sample
from .words import SymbolicWord

PRESS_ALARM = Alphabet(["press", "alarm"])
AB = Alphabet(["a", "b"])
A_ONLY = Alphabet(["a"])
MARKED = Alphabet(["#", "a", "b"])


def _w(alphabet: Alphabet, k: int, text: str) -> SymbolicWord:
    from .words import parse_symbolic_word

    return parse_symbolic_word(text, k, alphabet)


def press_twice_alarm_draft() -> Era:
    """Double press within one unit must alarm immediately; a late second
    press returns to the start, so a third press may follow at any delay."""
    g = lambda t: parse_guard(t, 1, PRESS_ALARM)
    return Era.make(
        PRESS_ALARM,
        1,
        ["q0", "q1", "q2"],
        "q0",
        [
            ("q0", "press", TOP, "q1"),
            ("q1", "press", g("x_press > 1"), "q0"),
            ("q1", "press", g("x_press <= 1"), "q2"),
            ("q2", "alarm", g("x_press = 0"), "q0"),
        ],
        ["q0", "q1"],
    )


def press_twice_alarm() -> Era:
    """Like the draft, but a late second press stays armed instead of
    resetting, so immediate presses after it remain forbidden."""
    g = lambda t: parse_guard(t, 1, PRESS_ALARM)
    return Era.make(
        PRESS_ALARM,
        1,
        ["q0", "q1", "q2"],
        "q0",
        [
            ("q0", "press", TOP, "q1"),
            ("q1", "press", g("x_press > 1"), "q1"),
            ("q1", "press", g("x_press <= 1"), "q2"),
            ("q2", "alarm", g("x_press = 0"), "q0"),
        ],
        ["q0", "q1"],
    )


def press_twice_alarm_sample(with_refinement: bool = True) -> Sample:
    """Scenario words for the press/alarm requirement.

    The first seven words teach the draft automaton; the eighth (a negative
    forbidding press-late-press-then-immediate-press) pins down the final
    one.
    """
    k = 1
    positive = [
        _w(PRESS_ALARM, k, "(press, true); (press, x_press <= 1); (alarm, x_press = 0)"),
        _w(PRESS_ALARM, k, "(press, true); (press, x_press > 1)"),
        _w(PRESS_ALARM, k, "eps"),
        _w(PRESS_ALARM, k, "(press, true)"),
    ]
    negative = [
        _w(PRESS_ALARM, k, "(press, true); (press, x_press > 1); (alarm, x_press >= 0)"),
        _w(PRESS_ALARM, k, "(press, true); (press, x_press <= 1)"),
        _w(PRESS_ALARM, k, "(press, true); (alarm, x_press >= 0)"),
    ]
    if with_refinement:
        negative.append(
            _w(PRESS_ALARM, k, "(press, true); (press, x_press > 1); (press, x_press = 0)")
        )
    return Sample.make(PRESS_ALARM, positive, negative, k=k)


def delayed_echo() -> Era:
    """Every a is answered by a b after exactly one unit, and every b by an
    a within one unit; all states accepting."""
    g = lambda t: parse_guard(t, 1, AB)
    return Era.make(
        AB,
        1,
        ["q0", "q1", "q2"],
        "q0",
        [
            ("q0", "a", TOP, "q1"),
            ("q1", "b", g("x_a = 1"), "q2"),
            ("q2", "a", g("x_b <= 1"), "q1"),
        ],
        ["q0", "q1", "q2"],
    )


def delayed_echo_sample() -> Sample:
    """Seven scenario words whose merges reproduce the delayed-echo automaton."""
    k = 2
    positive = [
        _w(AB, k, "eps"),
        _w(AB, k, "(a, x_a = 1); (b, x_a = 1)"),
        _w(AB, k, "(a, true); (b, x_a = 1); (a, x_b <= 1)"),
    ]
    negative = [
        _w(AB, k, "(a, true); (a, true)"),
        _w(AB, k, "(a, true); (b, x_a = 1); (a, x_b = 2); (b, x_a = 1)"),
        _w(AB, k, "(a, true); (b, x_a = 1); (b, x_a = 1)"),
        _w(AB, k, "(a, true); (b, x_a = 1); (a, x_b = 1); (a, true); (b, x_a = 1)"),
    ]
    return Sample.make(AB, positive, negative, k=k)


def pulse_modes() -> Era:
    """A single-event automaton mixing point, open-interval and unbounded
    guards across three mutually reachable modes."""
    g = lambda t: parse_guard(t, 1, A_ONLY)
    return Era.make(
        A_ONLY,
        1,
        ["q0", "q1", "q2"],
        "q0",
        [
            ("q0", "a", g("x_a > 0"), "q0"),
            ("q0", "a", g("x_a = 0"), "q1"),
            ("q1", "a", g("0 < x_a < 1"), "q1"),
            ("q1", "a", g("x_a >= 1"), "q2"),
            ("q1", "a", g("x_a = 0"), "q2"),
            ("q2", "a", g("x_a >= 0"), "q1"),
        ],
        ["q0", "q2"],
    )


def nth_last_a(n: int) -> Era:
    """Words over {a,b} opened by a single '#', where the n-th last letter
    is an 'a' occurring within one unit of the '#'.

    Nondeterministic with n+2 states; deterministic automata for the same
    language need exponentially many.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    g = lambda t: parse_guard(t, 1, MARKED)
    states = [f"q{i}" for i in range(n + 2)]
    transitions = [
        ("q0", "#", TOP, "q1"),
        ("q1", "a", TOP, "q1"),
        ("q1", "b", TOP, "q1"),
        ("q1", "a", g("x_# <= 1"), "q2"),
    ]
    for i in range(2, n + 1):
        transitions.append((f"q{i}", "a", TOP, f"q{i+1}"))
        transitions.append((f"q{i}", "b", TOP, f"q{i+1}"))
    return Era.make(MARKED, 1, states, "q0", transitions, [f"q{n+1}"])


def nth_last_a_sample(n: int) -> Sample:
    """A sample of size linear in n from which the learner finds the
    (n+2)-state automaton for the n-th-last-letter language."""
    if n < 1:
        raise ValueError("n must be at least 1")
    k = 1
    t = "true"
    pos1 = "(#, true); (a, true); (a, x_# <= 1)" + "; (a, true)" * (n - 1)
    pos2 = "(#, true); (b, true); (a, x_# <= 1)" + "; (b, true)" * (n - 1)
    positive = [_w(MARKED, k, pos1), _w(MARKED, k, pos2)]

    def word(*events: str) -> SymbolicWord:
        return tuple((e, TOP) for e in events)

    negative: list[SymbolicWord] = [()]
    negative.append(word("#", *["a"] * (n - 1)))
    negative.append(word("#", *["b"] * (n - 1)))
    negative.append(word("a", *["b"] * (n - 1)))
    negative.extend(word(*["a"] * i) for i in range(1, n + 2))
    negative.extend(word(*["b"] * i) for i in range(1, n))
    negative.extend(word("#", "a", *["b"] * i) for i in range(1, n - 1))
    seen: set[SymbolicWord] = set()
    deduped = [w for w in negative if not (w in seen or seen.add(w))]
    return Sample.make(MARKED, positive, deduped, k=k)


def universal(alphabet: Alphabet, k: int = 1) -> Era:
    """The single-state automaton accepting every timed word."""
    return Era.make(
        alphabet, k, ["q0"], "q0", [("q0", e, TOP, "q0") for e in alphabet], ["q0"]
    )


def empty_language(alphabet: Alphabet, k: int = 1) -> Era:
    """The single-state automaton accepting nothing."""
    return Era.make(alphabet, k, ["q0"], "q0", [], [])
