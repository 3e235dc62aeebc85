"""Brute-force cell oracle for canonical realizability (small n).

Regions are fixed by the tags, so a cell is an order on the 3n
representatives.  Whether two triangles are disjoint depends only on the
relative order of their own six representatives, so each pair gets a table
of admissible 6-orders, computed by building the witness for every order
and testing it with exact geometry.  A backtracking search then looks for a
global order admissible on every pair, and the resulting witness is checked
in full by :func:`geometry.verify_certificate`.

Nothing here goes through the symbolic orientation code or the decider.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .decider import Verdict
from .geometry import DegenerateError, TriangleConfig, point_x, point_y, point_z, triangles_disjoint, verify_certificate
from .lifting import value_for_rank

MAX_ORACLE_N = 3


def _regions(pattern) -> list[int]:
    n = pattern.n
    out = [0] * (3 * n)
    for line, tp in enumerate(pattern.lines):
        for pos, e in enumerate(tp.perm.word):
            out[line * n + e] = 0 if pos < tp.zero else (1 if pos < tp.one else 2)
    return out


@lru_cache(maxsize=None)
def _pair_prefixes(key) -> frozenset:
    """Admissible prefixes of orders on (x_i, y_i, z_i, x_j, y_j, z_j).

    ``key`` holds, per line, (i before j, region of i, region of j).
    """
    regions = [key[l][1] for l in range(3)] + [key[l][2] for l in range(3)]
    allowed = set()
    for order in permutations(range(6)):
        vals = [None] * 6
        for rank, loc in enumerate(order):
            vals[loc] = value_for_rank(rank, regions[loc])
        if any((vals[l] < vals[3 + l]) != key[l][0] for l in range(3)):
            continue
        ti = (point_x(vals[0]), point_y(vals[1]), point_z(vals[2]))
        tj = (point_x(vals[3]), point_y(vals[4]), point_z(vals[5]))
        try:
            ok = triangles_disjoint(ti, tj)
        except DegenerateError:
            ok = False
        if ok:
            for k in range(7):
                allowed.add(order[:k])
    return frozenset(allowed)


def oracle_decide_tagged(pattern) -> Verdict:
    n = pattern.n
    if n > MAX_ORACLE_N:
        raise ValueError(f"oracle limited to n <= {MAX_ORACLE_N}")
    regions = _regions(pattern)
    ranks = [tp.perm.ranks() for tp in pattern.lines]
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            key = tuple((ranks[l][i] < ranks[l][j], regions[l * n + i], regions[l * n + j])
                        for l in range(3))
            pairs[(i, j)] = _pair_prefixes(key)

    def local(v, i, j):
        line, e = divmod(v, n)
        return line if e == i else 3 + line

    size = 3 * n
    order: list[int] = []
    used = [False] * size
    seq = {p: () for p in pairs}

    def rec():
        if len(order) == size:
            cfg = TriangleConfig.from_vertex_values(
                [value_for_rank(order.index(v), regions[v]) for v in range(size)], n)
            return cfg if verify_certificate(pattern, cfg) else None
        for v in range(size):
            if used[v]:
                continue
            e = v % n
            touched = []
            ok = True
            for (i, j), prefixes in pairs.items():
                if e != i and e != j:
                    continue
                nxt = seq[(i, j)] + (local(v, i, j),)
                if nxt not in prefixes:
                    ok = False
                    break
                touched.append(((i, j), seq[(i, j)]))
                seq[(i, j)] = nxt
            if ok:
                used[v] = True
                order.append(v)
                found = rec()
                if found is not None:
                    return found
                order.pop()
                used[v] = False
            for p, old in touched:
                seq[p] = old
        return None

    cfg = rec()
    if cfg is None:
        return Verdict(False, pattern)
    return Verdict(True, pattern, cfg)
