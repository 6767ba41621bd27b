"""Tail classes, shortest prefixes, kernels and characteristic samples.

Region words are grouped by their *tail*: the extensions that stay inside
the target language, where words with empty denotations count as members of
every language.  Operationally the tails are the states of the target's
region DFA completed with an accepting sink for inconsistent continuations,
minimized; two region words have the same tail exactly when they reach the
same minimized state.

A characteristic sample contains, for every kernel word, a positive witness
of its membership (clause i), and for every shortest-prefix/kernel pair
with different tails a shared distinguishing suffix placed positively on
the in-language side and negatively on the other (clause ii).  Feeding such
a sample to the learner reproduces the target language.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .era import (
    DEFAULT_STATE_BUDGET,
    Era,
    Letter,
    RegionDfa,
    all_letters,
    region_dfa,
)
from .guards import Alphabet, simple_guard_from_pieces
from .learner import Sample
from .words import RegionWord

LetterWord = tuple[Letter, ...]


@dataclass
class TailIndex:
    """Tail classes of a target language, with least representatives."""

    alphabet: Alphabet
    k: int
    dfa: RegionDfa = field(repr=False)
    letters: list[Letter] = field(repr=False)
    n_classes: int = 0
    initial_class: int = 0
    sink_class: int | None = None
    class_trans: list[list[int]] = field(default_factory=list, repr=False)
    class_accepting: list[bool] = field(default_factory=list)
    least: dict[int, LetterWord] = field(default_factory=dict, repr=False)
    prefix_classes: set[int] = field(default_factory=set)

    def class_of(self, letters: LetterWord) -> int:
        cls = self.initial_class
        index = self._letter_index
        for letter in letters:
            cls = self.class_trans[cls][index[letter]]
        return cls

    def to_region_word(self, letters: LetterWord) -> RegionWord:
        return tuple(
            (event, simple_guard_from_pieces(pieces, self.k, self.alphabet))
            for event, pieces in letters
        )

    @property
    def _letter_index(self) -> dict[Letter, int]:
        if not hasattr(self, "_letter_index_cache"):
            self._letter_index_cache = {l: i for i, l in enumerate(self.letters)}
        return self._letter_index_cache


def build_tail_index(target: Era, budget: int = DEFAULT_STATE_BUDGET) -> TailIndex:
    """Minimize the completed region DFA of the target into tail classes."""
    dfa = region_dfa(target, budget=budget)
    alphabet, k = dfa.alphabet, dfa.k
    letters = all_letters(alphabet, k)
    letter_index = {l: i for i, l in enumerate(letters)}

    sink = dfa.n_states
    sink_needed = any(
        (s, letter) not in dfa.trans for s in range(dfa.n_states) for letter in letters
    )
    n_total = dfa.n_states + (1 if sink_needed else 0)
    trans_table = [[0] * len(letters) for _ in range(n_total)]
    for s in range(dfa.n_states):
        for li, letter in enumerate(letters):
            trans_table[s][li] = dfa.trans.get((s, letter), sink)
    if sink_needed:
        trans_table[sink] = [sink] * len(letters)
    accepting = [s in dfa.accepting for s in range(dfa.n_states)]
    if sink_needed:
        accepting.append(True)  # inconsistent words belong to every language

    # Moore partition refinement
    block = [1 if acc else 0 for acc in accepting]
    n_blocks = 2 if 0 < sum(block) < len(block) else 1
    if n_blocks == 1:
        block = [0] * n_total
    while True:
        signatures: dict[tuple, int] = {}
        new_block = [0] * n_total
        for s in range(n_total):
            sig = (block[s], tuple(block[t] for t in trans_table[s]))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[s] = signatures[sig]
        if len(signatures) == n_blocks:
            block = new_block
            break
        n_blocks = len(signatures)
        block = new_block

    # keep only classes reachable from the initial one, renumbered by BFS in
    # letter order so least representatives come out of the same traversal
    raw_trans: dict[int, list[int]] = {}
    for s in range(n_total):
        raw_trans.setdefault(block[s], [block[t] for t in trans_table[s]])
    initial_raw = block[dfa.initial]
    rename: dict[int, int] = {initial_raw: 0}
    least: dict[int, LetterWord] = {0: ()}
    order = [initial_raw]
    queue = [initial_raw]
    while queue:
        raw = queue.pop(0)
        for li, letter in enumerate(letters):
            nxt = raw_trans[raw][li]
            if nxt not in rename:
                rename[nxt] = len(rename)
                least[rename[nxt]] = least[rename[raw]] + (letter,)
                order.append(nxt)
                queue.append(nxt)
    n_classes = len(rename)
    class_trans = [[rename[raw_trans[raw][li]] for li in range(len(letters))] for raw in order]
    class_accepting = [False] * n_classes
    for s in range(n_total):
        if accepting[s] and block[s] in rename:
            class_accepting[rename[block[s]]] = True
    sink_class = rename.get(block[sink]) if sink_needed else None

    prefix_classes: set[int] = set()
    pending = [c for c in range(n_classes) if class_accepting[c]]
    prefix_classes.update(pending)
    while pending:
        fresh = [
            c
            for c in range(n_classes)
            if c not in prefix_classes and any(t in prefix_classes for t in class_trans[c])
        ]
        prefix_classes.update(fresh)
        pending = fresh

    return TailIndex(
        alphabet,
        k,
        dfa,
        letters,
        n_classes,
        0,
        sink_class,
        class_trans,
        class_accepting,
        least,
        prefix_classes,
    )


def shortest_prefixes(ti: TailIndex) -> list[RegionWord]:
    """The least region word of every tail class, in word order."""
    words = [ti.least[c] for c in sorted(ti.least, key=lambda c: _word_key(ti.least[c], ti))]
    return [ti.to_region_word(w) for w in words]


def _word_key(letters: LetterWord, ti: TailIndex):
    index = ti._letter_index
    return (len(letters), tuple(index[l] for l in letters))


def _kernel_letterwords(ti: TailIndex) -> list[LetterWord]:
    out: list[LetterWord] = [()]
    seen: set[LetterWord] = {()}
    for cls in range(ti.n_classes):
        u = ti.least[cls]
        for li, letter in enumerate(ti.letters):
            if ti.class_trans[cls][li] in ti.prefix_classes:
                word = u + (letter,)
                if word not in seen:
                    seen.add(word)
                    out.append(word)
    out.sort(key=lambda w: _word_key(w, ti))
    return out


def kernel(ti: TailIndex) -> list[RegionWord]:
    """The empty word plus one-letter extensions of shortest prefixes that
    remain prefixes of the language (an accepting class stays reachable)."""
    return [ti.to_region_word(w) for w in _kernel_letterwords(ti)]


def _accepting_suffix(ti: TailIndex, cls: int) -> LetterWord | None:
    """Least letter word leading from a class to an accepting class."""
    if ti.class_accepting[cls]:
        return ()
    parent: dict[int, tuple[int, Letter]] = {cls: None}
    queue = [cls]
    while queue:
        c = queue.pop(0)
        for li, letter in enumerate(ti.letters):
            nxt = ti.class_trans[c][li]
            if nxt not in parent:
                parent[nxt] = (c, letter)
                if ti.class_accepting[nxt]:
                    word = []
                    cur = nxt
                    while parent[cur] is not None:
                        cur, l = parent[cur]
                        word.append(l)
                    word.reverse()
                    return tuple(word)
                queue.append(nxt)
    return None


def _distinguishing_suffix(ti: TailIndex, c1: int, c2: int) -> LetterWord:
    """Least letter word accepted from exactly one of two distinct classes."""
    start = (c1, c2)
    parent: dict[tuple[int, int], tuple[tuple[int, int], Letter] | None] = {start: None}
    queue = [start]
    while queue:
        pair = queue.pop(0)
        a, b = pair
        if ti.class_accepting[a] != ti.class_accepting[b]:
            word = []
            cur = pair
            while parent[cur] is not None:
                cur, l = parent[cur]
                word.append(l)
            word.reverse()
            return tuple(word)
        for li, letter in enumerate(ti.letters):
            nxt = (ti.class_trans[a][li], ti.class_trans[b][li])
            if nxt not in parent:
                parent[nxt] = (pair, letter)
                queue.append(nxt)
    raise AssertionError(f"classes {c1} and {c2} are distinct but indistinguishable")


def build_charset(target: Era, budget: int = DEFAULT_STATE_BUDGET) -> Sample:
    """A sample from which the learner recovers the target's timed language.

    Pairs whose blue-side class is the inconsistent sink and whose red-side
    class is accepting are skipped: merging a childless vacuous-prefix state
    into an accepting state only adds vacuously-true words, so no negative
    is needed to forbid it.
    """
    ti = build_tail_index(target, budget=budget)
    positives: dict[LetterWord, None] = {}
    negatives: dict[LetterWord, None] = {}

    kernel_words = _kernel_letterwords(ti)
    suffix_memo: dict[int, LetterWord | None] = {}
    for v in kernel_words:
        cv = ti.class_of(v)
        if ti.class_accepting[cv]:
            positives.setdefault(v)
            continue
        if cv not in suffix_memo:
            suffix_memo[cv] = _accepting_suffix(ti, cv)
        w = suffix_memo[cv]
        if w is not None:
            positives.setdefault(v + w)

    sp_words = [ti.least[c] for c in range(ti.n_classes)]
    dist_memo: dict[tuple[int, int], LetterWord] = {}
    candidates = list(dict.fromkeys(kernel_words + sp_words))
    for v in candidates:
        cv = ti.class_of(v)
        for cu in range(ti.n_classes):
            if cu == cv:
                continue
            if cv == ti.sink_class and ti.class_accepting[cu]:
                continue
            u = ti.least[cu]
            key = (min(cu, cv), max(cu, cv))
            if key not in dist_memo:
                dist_memo[key] = _distinguishing_suffix(ti, key[0], key[1])
            w = dist_memo[key]
            au = ti.class_accepting[ti.class_of(u + w)]
            if au:
                positives.setdefault(u + w)
                negatives.setdefault(v + w)
            else:
                negatives.setdefault(u + w)
                positives.setdefault(v + w)

    pos_sorted = sorted(positives, key=lambda w: _word_key(w, ti))
    neg_sorted = sorted(negatives, key=lambda w: _word_key(w, ti))
    return Sample(
        ti.alphabet,
        ti.k,
        tuple(ti.to_region_word(w) for w in pos_sorted),
        tuple(ti.to_region_word(w) for w in neg_sorted),
    )
