"""Difference-bound matrices over event-recording clocks.

A zone is a conjunction of constraints ``x_i - x_j <= c`` (or ``<``) over the
clocks plus a reference variable fixed to 0.  Matrices are stored closed
(all-pairs tightest bounds), so structural equality is semantic equality and
the matrix doubles as a memoization key.

Weights are ``(value, strict)`` pairs; ``(c, True)`` means the strict bound
``< c`` and is tighter than ``(c, False)``.  Guard constants are integers, so
all finite weights stay integral.
"""

from __future__ import annotations

import math
from typing import Sequence

from .guards import Interval, piece_interval

Weight = tuple[float, bool]
Dbm = tuple[tuple[Weight, ...], ...]

INF_W: Weight = (math.inf, True)
ZERO_W: Weight = (0, False)


def w_less(a: Weight, b: Weight) -> bool:
    return a[0] < b[0] or (a[0] == b[0] and a[1] and not b[1])


def w_add(a: Weight, b: Weight) -> Weight:
    v = a[0] + b[0]
    if v is math.inf or v == math.inf:
        return INF_W
    return (v, a[1] or b[1])


def zero_zone(n_clocks: int) -> Dbm:
    """All clocks equal to 0."""
    m = n_clocks + 1
    return tuple(tuple(ZERO_W for _ in range(m)) for _ in range(m))


def up(zone: Dbm, n_clocks: int) -> Dbm:
    """Let time elapse: drop absolute upper bounds, keep differences."""
    m = n_clocks + 1
    return tuple(
        tuple(INF_W if (j == 0 and i != 0) else zone[i][j] for j in range(m))
        for i in range(m)
    )


def reset(zone: Dbm, clock_index: int, n_clocks: int) -> Dbm:
    """Set one clock to 0 (the zone must be closed)."""
    m = n_clocks + 1
    r = clock_index + 1
    rows = [list(row) for row in zone]
    for j in range(m):
        rows[r][j] = zone[0][j]
        rows[j][r] = zone[j][0]
    rows[r][r] = ZERO_W
    return tuple(tuple(row) for row in rows)


def close(zone: Sequence[Sequence[Weight]]) -> Dbm | None:
    """Floyd-Warshall closure; ``None`` when the zone is empty."""
    m = len(zone)
    rows = [list(row) for row in zone]
    for k in range(m):
        rk = rows[k]
        for i in range(m):
            wik = rows[i][k]
            if wik == INF_W:
                continue
            ri = rows[i]
            for j in range(m):
                cand = w_add(wik, rk[j])
                if w_less(cand, ri[j]):
                    ri[j] = cand
    for i in range(m):
        if w_less(rows[i][i], ZERO_W):
            return None
    return tuple(tuple(row) for row in rows)


def _constrain(rows: list[list[Weight]], i: int, j: int, w: Weight) -> bool:
    """Add ``x_i - x_j <= w`` to a closed matrix, re-closing incrementally.

    Returns False when the zone becomes empty.
    """
    if not w_less(w, rows[i][j]):
        return True
    m = len(rows)
    for a in range(m):
        wai = rows[a][i]
        if wai == INF_W:
            continue
        base = w_add(wai, w)
        ra = rows[a]
        rj = rows[j]
        for b in range(m):
            cand = w_add(base, rj[b])
            if w_less(cand, ra[b]):
                ra[b] = cand
    for a in range(m):
        if w_less(rows[a][a], ZERO_W):
            return False
    return True


def intersect_interval(zone: Dbm, clock_index: int, iv: Interval) -> Dbm | None:
    """Conjoin a per-clock interval; ``None`` when empty."""
    rows = [list(row) for row in zone]
    r = clock_index + 1
    if iv.hi.value is not math.inf:
        if not _constrain(rows, r, 0, (iv.hi.value, iv.hi.strict)):
            return None
    if iv.lo.value > 0 or iv.lo.strict:
        if not _constrain(rows, 0, r, (-iv.lo.value, iv.lo.strict)):
            return None
    return tuple(tuple(row) for row in rows)


def intersect_pieces(zone: Dbm, pieces: Sequence[int], k: int, n_clocks: int) -> Dbm | None:
    """Conjoin one unit piece per clock; ``None`` when empty."""
    rows = [list(row) for row in zone]
    for idx, piece in enumerate(pieces):
        iv = piece_interval(piece, k)
        r = idx + 1
        if iv.hi.value is not math.inf:
            if not _constrain(rows, r, 0, (iv.hi.value, iv.hi.strict)):
                return None
        if iv.lo.value > 0 or iv.lo.strict:
            if not _constrain(rows, 0, r, (-iv.lo.value, iv.lo.strict)):
                return None
    return tuple(tuple(row) for row in rows)


def extrapolate(zone: Dbm, k: int) -> Dbm:
    """Abstract bounds beyond the maximal constant (then re-close).

    Guards never distinguish values above k, so zones agreeing after
    extrapolation enable the same transitions; the finitely many canonical
    forms guarantee termination of zone-graph constructions.
    """
    m = len(zone)
    rows = [list(row) for row in zone]
    changed = False
    for i in range(m):
        for j in range(m):
            v, s = rows[i][j]
            if v is math.inf:
                continue
            if v > k:
                rows[i][j] = INF_W
                changed = True
            elif v < -k:
                rows[i][j] = (-k, True)
                changed = True
    if not changed:
        return zone
    closed = close(rows)
    if closed is None:
        raise AssertionError("extrapolation emptied a non-empty zone")
    return closed
