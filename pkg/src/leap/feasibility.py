"""Difference-constraint systems over run timestamps.

A system constrains timestamps t_1..t_n (t_0 is the fixed reference 0) with
inequalities ``t_i - t_j <= c`` or ``< c``.  Feasibility is negative-cycle
detection on the constraint graph; strictness is handled exactly by counting
strict edges in a lexicographic weight algebra instead of epsilon-inflation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .guards import Alphabet, clock_of, event_of

Number = int | Fraction


@dataclass(frozen=True, slots=True)
class Constraint:
    """t_i - t_j <= bound (strict: <)."""

    i: int
    j: int
    bound: Number
    strict: bool


@dataclass(frozen=True, slots=True)
class DiffSystem:
    """A conjunction of difference constraints over t_0..t_n."""

    n: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self) -> None:
        for c in self.constraints:
            if not (0 <= c.i <= self.n and 0 <= c.j <= self.n):
                raise ValueError(f"constraint index out of range: {c}")


class InfeasibleError(ValueError):
    """Witness extraction was called on an infeasible system."""


def base_constraints(n: int) -> list[Constraint]:
    """Non-negativity and monotonicity: 0 = t_0 <= t_1 <= ... <= t_n."""
    return [Constraint(i - 1, i, 0, False) for i in range(1, n + 1)]


def from_symbolic_word(sw, alphabet: Alphabet) -> DiffSystem:
    """Translate a symbolic word's guards into a difference system.

    A guard atom on clock x_e at position i constrains t_i - t_j, where j is
    the latest earlier position carrying event e, or 0 when there is none.
    """
    n = len(sw)
    constraints = base_constraints(n)
    last: dict[str, int] = {}
    for pos0, (event, guard) in enumerate(sw):
        i = pos0 + 1
        for clock, iv in guard.items:
            j = last.get(event_of(clock), 0)
            if iv.hi.value is not math.inf:
                constraints.append(Constraint(i, j, iv.hi.value, iv.hi.strict))
            if iv.lo.value > 0 or iv.lo.strict:
                constraints.append(Constraint(j, i, -iv.lo.value, iv.lo.strict))
        last[event] = i
    return DiffSystem(n, tuple(constraints))


def _bellman_ford(d: DiffSystem) -> list[tuple[Number, int]] | None:
    """Shortest-path potentials from a virtual source, or None if infeasible.

    Distances are (value, strict_edge_count) pairs ordered lexicographically
    with more strict edges counting as tighter; a relaxable edge after n+1
    rounds signals a cycle enforcing 0 < 0.
    """
    dist: list[tuple[Number, int]] = [(0, 0)] * (d.n + 1)
    edges = [(c.j, c.i, c.bound, 1 if c.strict else 0) for c in d.constraints]
    for _ in range(d.n + 1):
        changed = False
        for j, i, bound, s in edges:
            vj, ej = dist[j]
            cand = (vj + bound, ej + s)
            vi, ei = dist[i]
            if cand[0] < vi or (cand[0] == vi and cand[1] > ei):
                dist[i] = cand
                changed = True
        if not changed:
            return dist
    return None


def is_feasible(d: DiffSystem) -> bool:
    """True iff some rational assignment satisfies every constraint."""
    return _bellman_ford(d) is not None


def check_assignment(d: DiffSystem, stamps: Sequence[Number]) -> bool:
    """Exact substitution check of t_1..t_n (t_0 = 0)."""
    values = [Fraction(0)] + [Fraction(t) for t in stamps]
    for c in d.constraints:
        diff = values[c.i] - values[c.j]
        if c.strict:
            if not diff < c.bound:
                return False
        elif not diff <= c.bound:
            return False
    return True


def extract_witness(d: DiffSystem) -> list[Fraction]:
    """A rational assignment satisfying every constraint.

    Strict inequalities are cleared by shifting each potential down by
    (strict edge count) * eps for an eps below every slack; with integral
    bounds the denominators divide 2(n+1).  The result is substitution
    checked before returning.
    """
    dist = _bellman_ford(d)
    if dist is None:
        raise InfeasibleError("cannot extract a witness from an infeasible system")
    denom_lcm = 1
    for c in d.constraints:
        if isinstance(c.bound, Fraction):
            denom_lcm = denom_lcm * c.bound.denominator // math.gcd(denom_lcm, c.bound.denominator)
    eps = Fraction(1, 2 * (d.n + 1) * denom_lcm)
    v0, e0 = dist[0]
    stamps = [Fraction(dist[i][0] - v0) - (dist[i][1] - e0) * eps for i in range(1, d.n + 1)]
    if not check_assignment(d, stamps):
        raise AssertionError(f"extracted witness fails substitution: {stamps} for {d}")
    return stamps


def _smt_num(value: Number) -> str:
    f = Fraction(value)
    if f < 0:
        return f"(- {_smt_num(-f)})"
    if f.denominator == 1:
        return f"{f.numerator}.0"
    return f"(/ {f.numerator}.0 {f.denominator}.0)"


def _smt_var(i: int) -> str:
    return "0.0" if i == 0 else f"t{i}"


def emit_smtlib(d: DiffSystem) -> str:
    """A QF_LRA SMT-LIB v2 script; sat iff the system is feasible."""
    lines = ["(set-logic QF_LRA)"]
    for i in range(1, d.n + 1):
        lines.append(f"(declare-const t{i} Real)")
    for c in d.constraints:
        op = "<" if c.strict else "<="
        lines.append(f"(assert ({op} (- {_smt_var(c.i)} {_smt_var(c.j)}) {_smt_num(c.bound)}))")
    if d.n == 0 and not d.constraints:
        lines.append("(assert true)")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
