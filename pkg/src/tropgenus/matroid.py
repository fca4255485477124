"""Finite matroids on {0..n-1} with an exhaustive, pre-populated rank table.

Subsets are bitmasks throughout; `rank` also accepts iterables of elements.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

from .errors import ResourceLimitError

MAX_GROUND = 12


def _mask(s):
    if isinstance(s, int):
        return s
    m = 0
    for e in s:
        m |= 1 << e
    return m


def elements(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class Matroid:
    """Matroid given by its full rank table (index = subset bitmask)."""

    def __init__(self, ground_size, rank_table):
        if len(rank_table) != 1 << ground_size:
            raise ValueError("rank table must have 2^n entries")
        self.ground_size = ground_size
        self._rank = tuple(rank_table)
        self._flats = None
        self._covers = {}

    @property
    def full(self):
        return (1 << self.ground_size) - 1

    @property
    def rank_table(self):
        return self._rank

    @property
    def rank(self):
        return self._rank[self.full]

    def rank_of(self, s):
        return self._rank[_mask(s)]

    def closure(self, s):
        m = _mask(s)
        rk = self._rank[m]
        for e in range(self.ground_size):
            if not m >> e & 1 and self._rank[m | 1 << e] == rk:
                m |= 1 << e
        return m

    def is_flat(self, s):
        m = _mask(s)
        return self.closure(m) == m

    def loops(self):
        return [e for e in range(self.ground_size) if self._rank[1 << e] == 0]

    def coloops(self):
        return [e for e in range(self.ground_size) if self._rank[self.full ^ (1 << e)] < self.rank]

    def covers(self, flat):
        """Flats covering `flat` (closures of flat + one element)."""
        hit = self._covers.get(flat)
        if hit is not None:
            return hit
        seen = []
        for e in range(self.ground_size):
            if flat >> e & 1:
                continue
            c = self.closure(flat | 1 << e)
            if c not in seen:
                seen.append(c)
        self._covers[flat] = seen
        return seen

    def flats(self):
        """All flats graded by rank: list indexed by rank of sorted bitmask lists."""
        if self._flats is None:
            if self.ground_size > MAX_GROUND:
                raise ResourceLimitError(f"flat enumeration capped at ground size {MAX_GROUND}")
            graded = [[] for _ in range(self.rank + 1)]
            for m in range(1 << self.ground_size):
                if self.closure(m) == m:
                    graded[self._rank[m]].append(m)
            self._flats = graded
        return self._flats

    def flat_set(self):
        return {f for level in self.flats() for f in level}

    def maximal_chains(self):
        """Maximal chains of flats from closure(empty) to the full set, as block tuples."""
        out = []

        def rec(prev, blocks):
            if prev == self.full:
                out.append(tuple(blocks))
                return
            for f in self.covers(prev):
                rec(f, blocks + [f & ~prev])

        rec(self.closure(0), [] if self.closure(0) == 0 else [self.closure(0)])
        return out

    def __eq__(self, other):
        return isinstance(other, Matroid) and other.ground_size == self.ground_size \
            and other._rank == self._rank

    def __hash__(self):
        return hash((self.ground_size, self._rank))

    def __repr__(self):
        return f"Matroid(n={self.ground_size}, rank={self.rank})"

    def flats_json(self):
        return json.dumps({
            "ground_size": self.ground_size,
            "rank": self.rank,
            "flats_by_rank": [[elements(f) for f in level] for level in self.flats()],
        }, separators=(",", ":"))


def column_matroid(matrix, ncols=None) -> Matroid:
    """Matroid of the columns of an exact matrix (list of rows).

    `matrix` may also be a ConstraintMatrix. Rank of every column subset is
    computed by incremental exact elimination.
    """
    rows = getattr(matrix, "rows", matrix)
    if ncols is None:
        ncols = getattr(matrix, "columns", None)
        if ncols is None:
            ncols = len(rows[0])
    if ncols > MAX_GROUND:
        raise ResourceLimitError(f"column matroid capped at {MAX_GROUND} columns")
    cols = [[Fraction(row[j]) for row in rows] for j in range(ncols)]
    # basis[m]: echelon list of (pivot index, vector) spanning the columns in m
    table = [0] * (1 << ncols)
    basis = [None] * (1 << ncols)
    basis[0] = ()
    for m in range(1, 1 << ncols):
        top = m.bit_length() - 1
        rest = m ^ (1 << top)
        vec = list(cols[top])
        for p, b in basis[rest]:
            if vec[p]:
                f = vec[p] / b[p]
                vec = [x - f * y for x, y in zip(vec, b)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            basis[m] = basis[rest]
            table[m] = table[rest]
        else:
            basis[m] = basis[rest] + ((piv, vec),)
            table[m] = table[rest] + 1
    return Matroid(ncols, table)


def dual(m: Matroid) -> Matroid:
    full = m.full
    r = m.rank
    table = [bin(s).count("1") + m.rank_table[full ^ s] - r for s in range(1 << m.ground_size)]
    return Matroid(m.ground_size, table)


def compress_mask(mask, support):
    out = 0
    for k, e in enumerate(support):
        if mask >> e & 1:
            out |= 1 << k
    return out


def expand_mask(mask, support):
    out = 0
    for k, e in enumerate(support):
        if mask >> k & 1:
            out |= 1 << e
    return out


def restriction(m: Matroid, s) -> Matroid:
    """M|S, relabelled onto 0..|S|-1 in increasing element order."""
    support = elements(_mask(s))
    return Matroid(len(support), [m.rank_of(expand_mask(a, support)) for a in range(1 << len(support))])


def contraction(m: Matroid, s) -> Matroid:
    """M/S on the complement of S, relabelled in increasing element order."""
    s = _mask(s)
    support = elements(m.full & ~s)
    base = m.rank_of(s)
    return Matroid(len(support),
                   [m.rank_of(expand_mask(a, support) | s) - base for a in range(1 << len(support))])


def flats(m: Matroid):
    return m.flats()


def uniform_matroid(k, n) -> Matroid:
    return Matroid(n, [min(k, bin(s).count("1")) for s in range(1 << n)])


def matroid_from_bases(n, bases) -> Matroid:
    bases = [_mask(b) for b in bases]
    return Matroid(n, [max(bin(s & b).count("1") for b in bases) for s in range(1 << n)])


def brute_force_rank(matrix, subset):
    """Rank via nonvanishing maximal minors; independent of the elimination path."""
    rows = getattr(matrix, "rows", matrix)
    cols = sorted(subset)
    if not rows or not cols:
        return 0
    for k in range(min(len(rows), len(cols)), 0, -1):
        for rsel in combinations(range(len(rows)), k):
            for csel in combinations(cols, k):
                if _det([[Fraction(rows[i][j]) for j in csel] for i in rsel]) != 0:
                    return k
    return 0


def _det(a):
    # cofactor expansion; matrices here are at most ~5x5
    n = len(a)
    if n == 1:
        return a[0][0]
    total = Fraction(0)
    for j in range(n):
        if a[0][j]:
            minor = [row[:j] + row[j + 1:] for row in a[1:]]
            total += (-1) ** j * a[0][j] * _det(minor)
    return total
