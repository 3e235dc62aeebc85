"""Symbolic lifting of coordinates by the order-3 map f(t) = 1/(1 - t).

Every coordinate ``u`` (not 0 or 1) is paired with ``f(u)`` and ``f(f(u))``;
exactly one of the three lies above 1 and is called its representative.
Comparisons between lifted values reduce to the interval (region) of each
value plus an order on representatives, kept in :class:`RepGraph`.

Vertex ids: ``x_i -> i``, ``y_i -> n + i``, ``z_i -> 2n + i``.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

NEG, MID, POS = 0, 1, 2
X, Y, Z = 0, 1, 2
LESS, GREATER, UNKNOWN = -1, 1, 0

ZERO = "0"
ONE = "1"


class CycleError(ValueError):
    pass


def f_eval(t) -> Fraction:
    t = Fraction(t)
    if t == 0 or t == 1:
        raise ValueError(f"f is only used off {{0, 1}}, got {t}")
    return 1 / (1 - t)


def f_iter(t, k: int) -> Fraction:
    t = Fraction(t)
    for _ in range(k % 3):
        t = f_eval(t)
    return t


def region_of_value(t) -> int:
    if t < 0:
        return NEG
    if t < 1:
        return MID
    return POS


@dataclass(frozen=True)
class VarId:
    line: int
    index: int

    def encode(self, n: int) -> int:
        return self.line * n + self.index

    @classmethod
    def decode(cls, v: int, n: int) -> "VarId":
        return cls(v // n, v % n)


def region_of(v: int, pattern) -> int:
    """Region of vertex ``v`` read off the tags of its line."""
    n = pattern.n
    line, e = divmod(v, n)
    tp = pattern.lines[line]
    rank = tp.perm.word.index(e)
    if rank < tp.zero:
        return NEG
    if rank < tp.one:
        return MID
    return POS


def regions_of(pattern) -> list[int]:
    n = pattern.n
    out = [0] * (3 * n)
    for line, tp in enumerate(pattern.lines):
        for rank, e in enumerate(tp.perm.word):
            out[line * n + e] = NEG if rank < tp.zero else (MID if rank < tp.one else POS)
    return out


def rep_of(v: int, region: int) -> tuple[int, int]:
    """Vertex standing for ``v`` in the poset, and the shift j with f^j(v) > 1."""
    return v, (2 - region) % 3


class RepGraph:
    """Transitively closed DAG over the 3n representatives.

    ``succ[v]`` is a bitmask of the vertices ``w`` with rep(v) < rep(w).
    """

    __slots__ = ("n", "succ")

    def __init__(self, n: int, succ: Sequence[int] | None = None):
        self.n = n
        self.succ = list(succ) if succ is not None else [0] * (3 * n)

    @property
    def size(self) -> int:
        return 3 * self.n

    def copy(self) -> "RepGraph":
        return RepGraph(self.n, self.succ)

    def has_edge(self, v: int, w: int) -> bool:
        return bool(self.succ[v] >> w & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(self.size) for w in range(self.size) if self.has_edge(v, w)]

    def add_edge_closure(self, v: int, w: int) -> bool:
        """Add v -> w and restore closure.  Returns False (graph untouched) on a cycle."""
        succ = self.succ
        if v == w or succ[w] >> v & 1:
            return False
        if succ[v] >> w & 1:
            return True
        gain = (1 << w) | succ[w]
        vbit = 1 << v
        for a in range(len(succ)):
            if a == v or succ[a] & vbit:
                succ[a] |= gain
        return True

    def close(self) -> bool:
        """Warshall closure in place; False if a cycle exists."""
        return transitive_closure_acyclic(self)

    def is_closed(self) -> bool:
        succ = self.succ
        for v in range(len(succ)):
            s = succ[v]
            m = s
            while m:
                low = m & -m
                w = low.bit_length() - 1
                if succ[w] & ~s:
                    return False
                m ^= low
        return True

    def __eq__(self, other):
        return isinstance(other, RepGraph) and self.n == other.n and self.succ == other.succ

    def __repr__(self):
        return f"RepGraph(n={self.n}, edges={self.edges()})"


def transitive_closure_acyclic(g: RepGraph) -> bool:
    succ = g.succ
    size = len(succ)
    for k in range(size):
        kbit = 1 << k
        sk = succ[k]
        for i in range(size):
            if succ[i] & kbit:
                succ[i] |= sk
    return not any(succ[v] >> v & 1 for v in range(size))


def base_graph(pattern) -> RepGraph:
    """Edges forced by the pattern: same line, same region, earlier in the word."""
    n = pattern.n
    g = RepGraph(n)
    regions = regions_of(pattern)
    for line, tp in enumerate(pattern.lines):
        word = [line * n + e for e in tp.perm.word]
        for a in range(n):
            va = word[a]
            for b in range(a + 1, n):
                vb = word[b]
                if regions[va] == regions[vb]:
                    g.succ[va] |= 1 << vb
    return g


def topological_sort(g: RepGraph) -> list[int]:
    """Linear extension; among available vertices the smallest id goes first."""
    size = g.size
    indeg = [0] * size
    for v in range(size):
        for w in range(size):
            if g.succ[v] >> w & 1:
                indeg[w] += 1
    heap = [v for v in range(size) if indeg[v] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        v = heapq.heappop(heap)
        out.append(v)
        for w in range(size):
            if g.succ[v] >> w & 1:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, w)
    if len(out) != size:
        raise CycleError("graph has a cycle")
    return out


def compare_with_f(g: RepGraph, regions: Sequence[int], u: int, w: int) -> int:
    """Sign of ``u - f(w)``: LESS, GREATER or UNKNOWN."""
    ru = regions[u]
    rf = (regions[w] + 1) % 3
    if ru != rf:
        return LESS if ru < rf else GREATER
    if g.succ[u] >> w & 1:
        return LESS
    if g.succ[w] >> u & 1:
        return GREATER
    return UNKNOWN


# ---------------------------------------------------------------- lifted orders
#
# A lifted order is a tuple of tokens sorted increasingly: ZERO, ONE, or
# (v, k) standing for f^k applied to vertex v.

def lifted_values(coords: Sequence[Fraction]) -> dict:
    vals = {ZERO: Fraction(0), ONE: Fraction(1)}
    for v, c in enumerate(coords):
        c = Fraction(c)
        vals[(v, 0)] = c
        vals[(v, 1)] = f_eval(c)
        vals[(v, 2)] = f_eval(vals[(v, 1)])
    return vals


def lifted_order(coords: Sequence[Fraction]) -> tuple:
    """Order of the lifted point on {0, 1, t_1..t_9n}; requires distinct values."""
    vals = lifted_values(coords)
    order = tuple(sorted(vals, key=vals.__getitem__))
    if len(set(vals.values())) != len(vals):
        raise ValueError("lifted point lies on an arrangement hyperplane")
    return order


def order_from_reps(rep_order: Sequence[int], regions: Sequence[int]) -> tuple:
    """Full lifted order from an order on representatives plus each vertex's region.

    Representatives fill (1, inf) in ``rep_order``; f maps that interval onto
    (-inf, 0) increasingly and f^2 onto (0, 1).
    """
    high = [(v, (2 - regions[v]) % 3) for v in rep_order]
    low = [(v, (k + 1) % 3) for v, k in high]
    mid = [(v, (k + 2) % 3) for v, k in high]
    return tuple(low) + (ZERO,) + tuple(mid) + (ONE,) + tuple(high)


def validate_lifted_order(order: Sequence, n: int) -> bool:
    """Conditions (i) and (ii) for a total order to come from a lifted point."""
    tokens = [(v, k) for v in range(3 * n) for k in range(3)]
    if len(order) != len(tokens) + 2 or set(order) != set(tokens) | {ZERO, ONE}:
        return False
    pos = {tok: i for i, tok in enumerate(order)}
    p0, p1 = pos[ZERO], pos[ONE]
    if not p0 < p1:
        return False
    # (i): the block of each vertex has one value in each region, cyclically.
    for v in range(3 * n):
        ok = False
        for j in range(3):
            a, b, c = pos[(v, j)], pos[(v, (j + 1) % 3)], pos[(v, (j + 2) % 3)]
            if a < p0 < b < p1 < c:
                ok = True
                break
        if not ok:
            return False
    # (ii): f may only reverse a pair straddling 1.
    for ti in tokens:
        fi = (ti[0], (ti[1] + 1) % 3)
        for tj in tokens:
            if ti == tj:
                continue
            fj = (tj[0], (tj[1] + 1) % 3)
            if pos[ti] < pos[tj] and pos[fj] < pos[fi]:
                if not pos[ti] < p1 < pos[tj]:
                    return False
    return True


def witness_from_order(order: Sequence, n: int) -> list[Fraction]:
    """Coordinates (by vertex id) whose lift realizes ``order``.

    The k-th token above 1 (k = 1..3n) gets value k + 1 and the owning
    coordinate is recovered by applying f the right number of times.
    """
    if not validate_lifted_order(order, n):
        raise ValueError("order violates the lifting conditions")
    p1 = order.index(ONE)
    coords = [None] * (3 * n)
    for rank, (v, k) in enumerate(order[p1 + 1:], start=1):
        coords[v] = f_iter(Fraction(rank + 1), 3 - k)
    return coords


def value_for_rank(rank0: int, region: int) -> Fraction:
    """Coordinate whose representative is ``rank0 + 2`` (0-based rank)."""
    r = rank0 + 2
    if region == POS:
        return Fraction(r)
    if region == NEG:
        return Fraction(-1, r - 1)
    return Fraction(r - 1, r)


def witness_from_reps(rep_order: Iterable[int], regions: Sequence[int]) -> list[Fraction]:
    coords = [None] * len(regions)
    for rank0, v in enumerate(rep_order):
        coords[v] = value_for_rank(rank0, regions[v])
    return coords
