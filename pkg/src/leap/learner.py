"""Passive learner: red/blue state merging over a prefix tree of samples.

The learner builds a prefix-tree automaton from the positive words, then
repeatedly pops the least blue state (in the length-then-letterwise word
order) and either merges it into some red state or promotes it.  A merge
redirects the blue state's unique incoming edge onto the red target and
recursively folds successor pairs reachable by the same (event, guard)
label; it is kept only when the resulting automaton stays disjoint from
every negative word.

Merges are applied in place with an undo journal, so a rejected attempt
rolls back in time proportional to the touched subtree rather than the
automaton size.  When the whole sample consists of region words the
disjointness check degenerates to tracing each negative's unique syntactic
path, which keeps region-mode learning polynomial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Iterable, Sequence

from .era import Era, _guard_sort_key
from .guards import Alphabet, Guard
from .intersect import (
    BACKEND_PATH,
    DisjointViolation,
    path_search,
    run_system,
)
from .feasibility import extract_witness, from_symbolic_word, is_feasible
from .words import (
    SymbolicWord,
    TimedWord,
    compare_words,
    expand_to_regions,
    is_consistent,
    is_region_word,
    max_constant,
    symbolic_word_from_json,
    symbolic_word_to_json,
    witness as word_witness,
)


# ---------------------------------------------------------------------------
# Samples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Sample:
    """Positive and negative symbolic words over a shared alphabet."""

    alphabet: Alphabet
    k: int
    positive: tuple[SymbolicWord, ...]
    negative: tuple[SymbolicWord, ...]

    @staticmethod
    def make(
        alphabet: Alphabet | Sequence[str],
        positive: Iterable[SymbolicWord],
        negative: Iterable[SymbolicWord],
        k: int | None = None,
    ) -> "Sample":
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(alphabet)
        positive = tuple(tuple(w) for w in positive)
        negative = tuple(tuple(w) for w in negative)
        if k is None:
            k = max(1, max_constant(positive + negative))
        return Sample(alphabet, k, positive, negative)


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    severity: str  # "error" | "warning"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not any(v.severity == "error" for v in self.violations)

    @property
    def warnings(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == "warning")


def _words_overlap(w1: SymbolicWord, w2: SymbolicWord, alphabet: Alphabet) -> bool:
    """Whether two symbolic words share a compatible timed word."""
    from .guards import intersect_guards

    if len(w1) != len(w2):
        return False
    merged = []
    for (e1, g1), (e2, g2) in zip(w1, w2):
        if e1 != e2:
            return False
        g = intersect_guards(g1, g2)
        if g is None:
            return False
        merged.append((e1, g))
    return is_feasible(from_symbolic_word(tuple(merged), alphabet))


def validate_sample(sample: Sample) -> ValidationReport:
    """Check constant bounds, vacuous words, and positive/negative overlap.

    Overlapping positive/negative pairs and oversized constants are errors;
    words with empty denotations are reported as warnings (inconsistent
    positives are admitted and shape the prefix tree, inconsistent negatives
    are vacuous and dropped by the learner).
    """
    out: list[Violation] = []
    k = sample.k
    over = max_constant(sample.positive + sample.negative)
    if over > k:
        out.append(
            Violation("constant", f"guard constant {over} exceeds k={k}", "error")
        )
    for idx, w in enumerate(sample.negative):
        if not is_consistent(w, sample.alphabet):
            out.append(
                Violation(
                    "vacuous-negative",
                    f"negative word {idx} has an empty denotation and is ignored",
                    "warning",
                )
            )
    for idx, w in enumerate(sample.positive):
        if not is_consistent(w, sample.alphabet):
            out.append(
                Violation(
                    "vacuous-positive",
                    f"positive word {idx} has an empty denotation",
                    "warning",
                )
            )
    for pi, wp in enumerate(sample.positive):
        for ni, wn in enumerate(sample.negative):
            if _words_overlap(wp, wn, sample.alphabet):
                out.append(
                    Violation(
                        "overlap",
                        f"positive word {pi} and negative word {ni} intersect",
                        "error",
                    )
                )
    return ValidationReport(tuple(out))


def sample_to_json(sample: Sample) -> dict:
    return {
        "alphabet": list(sample.alphabet.events),
        "k": sample.k,
        "positive": [symbolic_word_to_json(w, sample.alphabet) for w in sample.positive],
        "negative": [symbolic_word_to_json(w, sample.alphabet) for w in sample.negative],
    }


def sample_from_json(data: dict) -> Sample:
    alphabet = Alphabet(data["alphabet"])
    k = data.get("k")
    if k is None:
        k = 1
        for w in list(data["positive"]) + list(data["negative"]):
            for item in w:
                for const in re.findall(r"(?<![\w#])\d+", item["guard"]):
                    k = max(k, int(const))
    k = int(k)
    positive = [symbolic_word_from_json(w, k, alphabet) for w in data["positive"]]
    negative = [symbolic_word_from_json(w, k, alphabet) for w in data["negative"]]
    return Sample(alphabet, k, tuple(positive), tuple(negative))


def expand_sample_to_regions(sample: Sample) -> Sample:
    """Replace every word by its consistent region refinements."""
    positive: list[SymbolicWord] = []
    negative: list[SymbolicWord] = []
    seen_p: set[SymbolicWord] = set()
    seen_n: set[SymbolicWord] = set()
    for w in sample.positive:
        for rw in expand_to_regions(w, sample.k, sample.alphabet):
            if rw not in seen_p:
                seen_p.add(rw)
                positive.append(rw)
    for w in sample.negative:
        for rw in expand_to_regions(w, sample.k, sample.alphabet):
            if rw not in seen_n:
                seen_n.add(rw)
                negative.append(rw)
    return Sample(sample.alphabet, sample.k, tuple(positive), tuple(negative))


# ---------------------------------------------------------------------------
# Prefix tree
# ---------------------------------------------------------------------------


@dataclass
class PrefixTree:
    """Tree-shaped automaton over the prefixes of the positive words."""

    era: Era
    prefixes: dict[str, SymbolicWord]
    red: list[str]
    blue: list[str]


def build_prefix_tree(sample: Sample) -> PrefixTree:
    """One state per distinct positive prefix; accepting = the words themselves.

    State ids follow first appearance while scanning the sample in order, so
    identical samples produce identical trees and traces.
    """
    alphabet, k = sample.alphabet, sample.k
    ids: dict[SymbolicWord, str] = {(): "q0"}
    transitions: list[tuple[str, str, Guard, str]] = []
    accepting: set[str] = set()
    for w in sample.positive:
        for i in range(1, len(w) + 1):
            prefix = w[:i]
            if prefix not in ids:
                ids[prefix] = f"q{len(ids)}"
                event, guard = w[i - 1]
                transitions.append((ids[w[: i - 1]], event, guard, ids[prefix]))
        accepting.add(ids[w])
    era = Era.make(alphabet, k, ids.values(), "q0", transitions, accepting)
    prefixes = {sid: prefix for prefix, sid in ids.items()}
    order = _word_order_key(k, alphabet, prefixes)
    blue = sorted((ids[p] for p in ids if len(p) == 1), key=order)
    return PrefixTree(era, prefixes, ["q0"], blue)


def _word_order_key(
    k: int, alphabet: Alphabet, prefixes: dict[str, SymbolicWord]
) -> Callable[[str], object]:
    def cmp(a: str, b: str) -> int:
        return compare_words(prefixes[a], prefixes[b], k, alphabet)

    return cmp_to_key(cmp)


# ---------------------------------------------------------------------------
# Merge trace
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Promote:
    state: str


@dataclass(frozen=True)
class MergeAttempt:
    blue: str
    red: str
    accepted: bool
    violating: SymbolicWord | None = None


@dataclass(frozen=True)
class Fold:
    folded: str
    into: str


TraceEvent = Promote | MergeAttempt | Fold
MergeTrace = tuple[TraceEvent, ...]


def trace_to_json(trace: MergeTrace, alphabet: Alphabet) -> list[dict]:
    out = []
    for ev in trace:
        if isinstance(ev, Promote):
            out.append({"kind": "promote", "state": ev.state})
        elif isinstance(ev, MergeAttempt):
            item = {
                "kind": "merge",
                "blue": ev.blue,
                "red": ev.red,
                "verdict": "accept" if ev.accepted else "reject",
            }
            if ev.violating is not None:
                item["violating"] = symbolic_word_to_json(ev.violating, alphabet)
            out.append(item)
        else:
            out.append({"kind": "fold", "folded": ev.folded, "into": ev.into})
    return out


# ---------------------------------------------------------------------------
# Working automaton with an undo journal
# ---------------------------------------------------------------------------

Label = tuple[str, Guard]


class WorkingAutomaton:
    """Mutable label-deterministic transition structure with rollback.

    Per state and (event, guard) label there is at most one target; semantic
    nondeterminism (overlapping but distinct guards) is untouched.  Every
    mutation is journaled so a rejected merge attempt can be undone.
    """

    def __init__(self, era: Era):
        self.alphabet = era.alphabet
        self.k = era.k
        self.initial = era.initial
        self.accept: dict[str, bool] = {s: s in era.accepting for s in era.states}
        self.out: dict[str, dict[Label, str]] = {s: {} for s in era.states}
        self.inc: dict[str, set[tuple[str, str, Guard]]] = {s: set() for s in era.states}
        self._journal: list[tuple] = []
        self.observer = None
        self._rolling_back = False
        for t in era.transitions:
            self.out[t.src][(t.event, t.guard)] = t.dst
            self.inc[t.dst].add((t.src, t.event, t.guard))

    # -- journal ------------------------------------------------------------

    def mark(self) -> int:
        return len(self._journal)

    def rollback(self, mark: int) -> None:
        self._rolling_back = True
        while len(self._journal) > mark:
            op = self._journal.pop()
            tag = op[0]
            if tag == "edge+":
                _, src, label, dst = op
                del self.out[src][label]
                self.inc[dst].discard((src, *label))
            elif tag == "edge-":
                _, src, label, dst = op
                self.out[src][label] = dst
                self.inc[dst].add((src, *label))
            elif tag == "acc":
                _, state, old = op
                self.accept[state] = old
            elif tag == "state-":
                _, state, old_accept = op
                self.accept[state] = old_accept
                self.out[state] = {}
                self.inc[state] = set()
        self._rolling_back = False

    # -- primitive mutations --------------------------------------------------

    def _add_edge(self, src: str, label: Label, dst: str) -> None:
        assert label not in self.out[src]
        self.out[src][label] = dst
        self.inc[dst].add((src, *label))
        self._journal.append(("edge+", src, label, dst))
        if self.observer is not None and not self._rolling_back:
            self.observer.edge_added(src, label, dst)

    def _del_edge(self, src: str, label: Label) -> None:
        dst = self.out[src].pop(label)
        self.inc[dst].discard((src, *label))
        self._journal.append(("edge-", src, label, dst))
        if self.observer is not None and not self._rolling_back:
            self.observer.edge_removed(src, label, dst)

    def _set_accept(self, state: str, value: bool) -> None:
        if self.accept[state] != value:
            self._journal.append(("acc", state, self.accept[state]))
            self.accept[state] = value
            if self.observer is not None and not self._rolling_back:
                self.observer.accept_changed(state, value)

    def _drop_state(self, state: str) -> None:
        assert not self.out[state] and not self.inc[state]
        self._journal.append(("state-", state, self.accept[state]))
        del self.out[state]
        del self.inc[state]
        del self.accept[state]

    # -- views -----------------------------------------------------------------

    def states(self) -> list[str]:
        return list(self.out)

    def sorted_labels(self, state: str) -> list[Label]:
        return sorted(
            self.out[state],
            key=lambda l: (self.alphabet.index(l[0]), _guard_sort_key(l[1])),
        )

    def trans_fn(self, state: str, event: str) -> list[tuple[Guard, str]]:
        return [
            (label[1], dst)
            for label, dst in sorted(
                self.out[state].items(),
                key=lambda kv: (self.alphabet.index(kv[0][0]), _guard_sort_key(kv[0][1])),
            )
            if label[0] == event
        ]

    def to_era(self) -> Era:
        transitions = [
            (src, label[0], label[1], dst)
            for src, labels in self.out.items()
            for label, dst in labels.items()
        ]
        accepting = [s for s, a in self.accept.items() if a]
        return Era.make(self.alphabet, self.k, self.states(), self.initial, transitions, accepting)

    # -- merge + fold ------------------------------------------------------------

    def merge_into(self, red: str, blue: str) -> list[Fold]:
        """Redirect blue's unique parent edge onto red, then fold downward."""
        parents = list(self.inc[blue])
        assert len(parents) == 1, f"blue state {blue} has {len(parents)} parents"
        src, event, guard = parents[0]
        self._del_edge(src, (event, guard))
        assert (event, guard) not in self.out[src]
        self._add_edge(src, (event, guard), red)
        return self._unify(red, blue)

    def _unify(self, keep_root: str, drop_root: str) -> list[Fold]:
        folds: list[Fold] = []
        alias: dict[str, str] = {}

        def resolve(state: str) -> str:
            while state in alias:
                state = alias[state]
            return state

        queue: list[tuple[str, str, bool]] = [(keep_root, drop_root, False)]
        while queue:
            keep, drop, is_fold = queue.pop(0)
            keep = resolve(keep)
            drop = resolve(drop)
            if keep == drop:
                continue
            if is_fold:
                folds.append(Fold(drop, keep))
            if self.accept[drop] and not self.accept[keep]:
                self._set_accept(keep, True)
            # stray incoming edges re-point to the survivor
            for src, event, guard in sorted(
                self.inc[drop],
                key=lambda e: (e[0], self.alphabet.index(e[1]), _guard_sort_key(e[2])),
            ):
                self._del_edge(src, (event, guard))
                src2 = keep if src == drop else resolve(src)
                label = (event, guard)
                existing = self.out[src2].get(label)
                if existing is None:
                    self._add_edge(src2, label, keep)
                else:
                    assert resolve(existing) == keep, "label determinism violated"
            # outgoing edges re-point from the survivor, folding label clashes
            for label in self.sorted_labels(drop):
                dst = self.out[drop][label]
                self._del_edge(drop, label)
                dst2 = keep if dst == drop else resolve(dst)
                existing = self.out[keep].get(label)
                if existing is None:
                    self._add_edge(keep, label, dst2)
                else:
                    existing = resolve(existing)
                    if existing != dst2:
                        queue.append((existing, dst2, True))
            alias[drop] = keep
            self._drop_state(drop)
        return folds


# ---------------------------------------------------------------------------
# Consistency checkers
# ---------------------------------------------------------------------------


class _SemanticChecker:
    """Intersection check of the working automaton against each negative."""

    def __init__(self, sample: Sample, work: WorkingAutomaton):
        self.work = work
        self.alphabet = sample.alphabet
        self.negatives = [
            (idx, w)
            for idx, w in enumerate(sample.negative)
            if is_consistent(w, sample.alphabet)
        ]

    def mark(self) -> int:
        return 0

    def rollback(self, mark: int) -> None:
        pass

    def violation(self) -> DisjointViolation | None:
        accepting = lambda s: self.work.accept[s]
        for idx, w in self.negatives:
            path = path_search(self.work.trans_fn, self.work.initial, accepting, w, self.alphabet)
            if path is not None:
                stamps = extract_witness(run_system(w, path, self.alphabet))
                tw = tuple((event, t) for (event, _), t in zip(w, stamps))
                return DisjointViolation(idx, w, tw)
        return None


class _RegionChecker:
    """Incremental trace check, valid when every sample word is a region word.

    The working automaton then stays deterministic with simple guards, so a
    negative is accepted iff its unique syntactic path ends accepting.  The
    negatives live in a trie whose nodes are mapped to the automaton states
    their paths currently reach; edge and acceptance changes update only the
    affected subtrees, so a merge attempt costs time proportional to what it
    touches rather than to the number of negatives.
    """

    def __init__(self, sample: Sample, work: WorkingAutomaton):
        self.work = work
        self.children: list[dict[Label, int]] = [{}]
        self.reject_index: list[int | None] = [None]
        self.by_index: dict[int, tuple[SymbolicWord, TimedWord]] = {}
        for idx, w in enumerate(sample.negative):
            tw = word_witness(w, sample.alphabet)
            if tw is None:
                continue  # vacuous negative, imposes nothing
            node = 0
            for letter in w:
                nxt = self.children[node].get(letter)
                if nxt is None:
                    nxt = len(self.children)
                    self.children.append({})
                    self.reject_index.append(None)
                    self.children[node][letter] = nxt
                node = nxt
            if self.reject_index[node] is None:
                self.reject_index[node] = idx
                self.by_index[idx] = (w, tw)
        self.pos: list[str | None] = [None] * len(self.children)
        self.at_state: dict[str, set[int]] = {}
        self.conflicts: set[int] = set()
        self._journal: list[tuple] = []
        self._map_subtree(0, work.initial)
        work.observer = self

    # -- incremental bookkeeping ---------------------------------------------

    def mark(self) -> int:
        return len(self._journal)

    def rollback(self, mark: int) -> None:
        while len(self._journal) > mark:
            op = self._journal.pop()
            tag = op[0]
            if tag == "pos+":
                _, node, state = op
                self.pos[node] = None
                self.at_state[state].discard(node)
            elif tag == "pos-":
                _, node, state = op
                self.pos[node] = state
                self.at_state.setdefault(state, set()).add(node)
            elif tag == "cf+":
                self.conflicts.discard(op[1])
            else:  # "cf-"
                self.conflicts.add(op[1])

    def _map_subtree(self, node: int, state: str) -> None:
        stack = [(node, state)]
        while stack:
            nd, st = stack.pop()
            assert self.pos[nd] is None
            self.pos[nd] = st
            self.at_state.setdefault(st, set()).add(nd)
            self._journal.append(("pos+", nd, st))
            if self.reject_index[nd] is not None and self.work.accept[st]:
                self.conflicts.add(nd)
                self._journal.append(("cf+", nd))
            out_st = self.work.out[st]
            for label, child in self.children[nd].items():
                nxt = out_st.get(label)
                if nxt is not None:
                    stack.append((child, nxt))

    def _unmap_subtree(self, node: int) -> None:
        stack = [node]
        while stack:
            nd = stack.pop()
            st = self.pos[nd]
            if st is None:
                continue
            self.pos[nd] = None
            self.at_state[st].discard(nd)
            self._journal.append(("pos-", nd, st))
            if nd in self.conflicts:
                self.conflicts.discard(nd)
                self._journal.append(("cf-", nd))
            stack.extend(self.children[nd].values())

    # -- observer hooks --------------------------------------------------------

    def edge_added(self, src: str, label: Label, dst: str) -> None:
        for node in list(self.at_state.get(src, ())):
            child = self.children[node].get(label)
            if child is not None and self.pos[child] is None:
                self._map_subtree(child, dst)

    def edge_removed(self, src: str, label: Label, dst: str) -> None:
        for node in list(self.at_state.get(src, ())):
            child = self.children[node].get(label)
            if child is not None and self.pos[child] is not None:
                self._unmap_subtree(child)

    def accept_changed(self, state: str, value: bool) -> None:
        for node in self.at_state.get(state, ()):
            if self.reject_index[node] is None:
                continue
            if value and node not in self.conflicts:
                self.conflicts.add(node)
                self._journal.append(("cf+", node))
            elif not value and node in self.conflicts:
                self.conflicts.discard(node)
                self._journal.append(("cf-", node))

    def violation(self) -> DisjointViolation | None:
        if not self.conflicts:
            return None
        idx = min(self.reject_index[node] for node in self.conflicts)
        w, tw = self.by_index[idx]
        return DisjointViolation(idx, w, tw)


# ---------------------------------------------------------------------------
# The learner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LearnOptions:
    backend: str = BACKEND_PATH
    smt_cmd: str | None = None
    region_mode: bool = False


@dataclass(frozen=True)
class LearnResult:
    era: Era
    trace: MergeTrace
    stats: dict


class InvalidSampleError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        errors = [v.message for v in report.violations if v.severity == "error"]
        super().__init__("invalid sample: " + "; ".join(errors))


def learn(sample: Sample, options: LearnOptions = LearnOptions()) -> LearnResult:
    """Run the merging loop and return the automaton, trace and statistics.

    The output accepts every positive word's denotation and avoids every
    negative word's; it may be nondeterministic.
    """
    report = validate_sample(sample)
    if not report.ok:
        raise InvalidSampleError(report)
    if options.region_mode:
        sample = expand_sample_to_regions(sample)

    tree = build_prefix_tree(sample)
    work = WorkingAutomaton(tree.era)
    prefixes = tree.prefixes
    order = _word_order_key(sample.k, sample.alphabet, prefixes)

    all_region = all(
        is_region_word(w, sample.k, sample.alphabet)
        for w in sample.positive + sample.negative
    )
    if all_region and options.backend == BACKEND_PATH:
        checker = _RegionChecker(sample, work)
    elif options.backend == BACKEND_PATH:
        checker = _SemanticChecker(sample, work)
    else:
        checker = _BackendChecker(sample, work, options)

    red: list[str] = list(tree.red)
    red_set = set(red)
    blue: list[str] = list(tree.blue)
    blue_set = set(blue)
    trace: list[TraceEvent] = []
    merges = promotions = 0

    def add_blues(candidates: Iterable[str]) -> None:
        fresh = []
        for s in candidates:
            if s not in red_set and s not in blue_set and s in work.out:
                blue_set.add(s)
                fresh.append(s)
        if fresh:
            blue.extend(fresh)
            blue.sort(key=order)

    while blue:
        non_red_before = len(work.out) - len(red)
        blue_state = blue.pop(0)
        blue_set.discard(blue_state)
        merged = False
        for red_state in red:
            mark = work.mark()
            checker_mark = checker.mark()
            folds = work.merge_into(red_state, blue_state)
            violation = checker.violation()
            if violation is None:
                trace.append(MergeAttempt(blue_state, red_state, True))
                trace.extend(folds)
                merges += 1
                touched = [red_state] + [f.into for f in folds if f.into in red_set]
                successors: list[str] = []
                for r in dict.fromkeys(touched):
                    if r not in work.out:
                        continue
                    for label in work.sorted_labels(r):
                        successors.append(work.out[r][label])
                add_blues(successors)
                merged = True
                break
            work.rollback(mark)
            checker.rollback(checker_mark)
            trace.append(MergeAttempt(blue_state, red_state, False, violation.word))
        if not merged:
            red.append(blue_state)
            red_set.add(blue_state)
            promotions += 1
            trace.append(Promote(blue_state))
            add_blues(work.out[blue_state][label] for label in work.sorted_labels(blue_state))
        assert len(work.out) - len(red) < non_red_before, "loop variant failed to decrease"

    era = work.to_era()
    stats = {
        "states": len(era.states),
        "transitions": len(era.transitions),
        "merges": merges,
        "promotions": promotions,
        "positive": len(sample.positive),
        "negative": len(sample.negative),
    }
    return LearnResult(era, tuple(trace), stats)


class _BackendChecker:
    """Disjointness check routed through a configurable backend."""

    def __init__(self, sample: Sample, work: WorkingAutomaton, options: LearnOptions):
        from .intersect import intersection_nonempty

        self.sample = sample
        self.work = work
        self.options = options
        self._nonempty = intersection_nonempty

    def mark(self) -> int:
        return 0

    def rollback(self, mark: int) -> None:
        pass

    def violation(self) -> DisjointViolation | None:
        era = self.work.to_era()
        for idx, w in enumerate(self.sample.negative):
            result = self._nonempty(
                era, w, backend=self.options.backend, smt_cmd=self.options.smt_cmd
            )
            if result.nonempty:
                return DisjointViolation(idx, w, result.witness)
        return None


def replay_trace(sample: Sample, trace: MergeTrace) -> Era:
    """Re-apply a recorded trace to the prefix tree; folds must match."""
    tree = build_prefix_tree(sample)
    work = WorkingAutomaton(tree.era)
    pending = list(trace)
    while pending:
        ev = pending.pop(0)
        if isinstance(ev, MergeAttempt) and ev.accepted:
            folds = work.merge_into(ev.red, ev.blue)
            for fold in folds:
                recorded = pending.pop(0)
                if recorded != fold:
                    raise AssertionError(f"trace mismatch: recorded {recorded}, got {fold}")
    return work.to_era()
