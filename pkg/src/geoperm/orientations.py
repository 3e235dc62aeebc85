"""Orientation predicates of two canonical triangles, evaluated symbolically.

Every orientation needed by the Guigue-Devillers test factors into sign
comparisons between coordinates, comparisons with 1, and at most one
comparison of the form ``v - f(w)``.  The first two are read off the pattern;
the last is decided by regions and the representative poset when possible,
and otherwise returned as pending.
"""
from __future__ import annotations

from typing import NamedTuple, Optional, Sequence

from .lifting import GREATER, LESS, POS, RepGraph, compare_with_f


class SignEntry(NamedTuple):
    """``sign`` alone when ``v`` is None, else ``sign * sgn(v - f(w))``."""

    sign: int
    v: Optional[int] = None
    w: Optional[int] = None

    @property
    def determined(self) -> bool:
        return self.v is None

    def resolve(self, g: RepGraph, regions: Sequence[int]) -> "SignEntry":
        if self.v is None:
            return self
        c = compare_with_f(g, regions, self.v, self.w)
        if c == LESS:
            return SignEntry(-self.sign)
        if c == GREATER:
            return SignEntry(self.sign)
        return self


def associated_vertex(v: int, n: int) -> int:
    """The w for which ``v - f(w)`` can be unknown: x_k -> z_k, y_k -> x_k, z_k -> y_k."""
    line, k = divmod(v, n)
    return ((line + 2) % 3) * n + k


def _decide(sign: int, g, regions, v: int, w: int) -> SignEntry:
    c = compare_with_f(g, regions, v, w)
    if c == GREATER:
        return SignEntry(sign)
    if c == LESS:
        return SignEntry(-sign)
    return SignEntry(sign, v, w)


def initial_orientation(i: int, l: int, j: int, ranks, regions, g: RepGraph | None = None,
                        unknowns: set | None = None) -> SignEntry:
    """Orientation of (X_i, Y_i, Z_i, L_j) where L is line ``l``.

    With s = l, t = l+1, u = l+2 (mod 3) it is
    sgn(s_i - s_j) * sgn(t_i - 1) * sgn(u_i - f(t_i)).  An undecided last
    factor is returned pending and its ``u_i`` added to ``unknowns``.
    """
    n = len(ranks[0])
    s, t, u = l, (l + 1) % 3, (l + 2) % 3
    sign = 1 if ranks[s][i] > ranks[s][j] else -1
    if regions[t * n + i] < POS:
        sign = -sign
    v, w = u * n + i, t * n + i
    if g is None:
        g = RepGraph(n)
    entry = _decide(sign, g, regions, v, w)
    if not entry.determined and unknowns is not None:
        unknowns.add(v)
    return entry


def sign_vector(i: int, j: int, ranks, regions, g: RepGraph | None = None,
                unknowns: set | None = None) -> list[SignEntry]:
    """v(i, j): [X_iY_iZ_i, X_j], [.., Y_j], [.., Z_j], then the same with i, j swapped."""
    return ([initial_orientation(i, l, j, ranks, regions, g, unknowns) for l in range(3)]
            + [initial_orientation(j, l, i, ranks, regions, g, unknowns) for l in range(3)])


def rename_guigue(sv: Sequence[int], i: int, j: int, n: int) -> tuple[int, ...]:
    """Vertex ids (A_i, B_i, C_i, A_j, B_j, C_j) making the sign vector (1,-1,-1,1,-1,-1).

    ``sv`` holds six determined signs whose halves are both non-constant.
    """
    if sv[0] == sv[1] == sv[2] or sv[3] == sv[4] == sv[5]:
        raise ValueError("renaming only applies when the quick test is inconclusive")
    xi, yi, zi, xj, yj, zj = i, i + n, i + 2 * n, j, j + n, j + 2 * n
    sign_i, sign_j = sv[0], sv[3]
    if sv[0] == sv[1]:
        xj, yj, zj = zj, xj, yj
        sign_i = sv[2]
    elif sv[0] == sv[2]:
        xj, yj, zj = yj, zj, xj
        sign_i = sv[1]
    if sv[3] == sv[4]:
        xi, yi, zi = zi, xi, yi
        sign_j = sv[5]
    elif sv[3] == sv[5]:
        xi, yi, zi = yi, zi, xi
        sign_j = sv[4]
    if sign_i == -1:
        yi, zi = zi, yi
    if sign_j == -1:
        yj, zj = zj, yj
    return (xi, yi, zi, xj, yj, zj)


def sort_with_parity(q: Sequence[int]) -> tuple[list[int], int]:
    """Insertion sort by vertex id (i.e. by line, then index); returns (sorted, (-1)^swaps)."""
    q = list(q)
    sign = 1
    for a in range(1, len(q)):
        b = a
        while b > 0 and q[b - 1] > q[b]:
            q[b - 1], q[b] = q[b], q[b - 1]
            sign = -sign
            b -= 1
    return q, sign


def final_orientation(quad: Sequence[int], g: RepGraph, ranks, regions) -> SignEntry:
    """Orientation of four vertices, two from each triangle, via the Table-1 cases."""
    n = len(ranks[0])
    q, sign = sort_with_parity(quad)
    line = [v // n for v in q]
    idx = [v % n for v in q]

    def before(a, b):  # coordinate of q[a] smaller than that of q[b] (same line)
        return ranks[line[a]][idx[a]] < ranks[line[b]][idx[b]]

    if line[0] == line[1] and line[2] == line[3]:
        if before(0, 1):
            sign = -sign
        if before(2, 3):
            sign = -sign
        return SignEntry(sign)
    if line[0] == line[1]:  # [Xa, Xb, Yc, Zd] = (xa-xb)(yc-1)(zd-f(yc))
        if before(0, 1):
            sign = -sign
        if regions[q[2]] < POS:
            sign = -sign
        return _decide(sign, g, regions, q[3], q[2])
    if line[1] == line[2]:  # [Xa, Yb, Yc, Zd] = -(yb-yc)(zd-1)(xa-f(zd))
        sign = -sign
        if before(1, 2):
            sign = -sign
        if regions[q[3]] < POS:
            sign = -sign
        return _decide(sign, g, regions, q[0], q[3])
    if line[2] == line[3]:  # [Xa, Yb, Zc, Zd] = (zc-zd)(xa-1)(yb-f(xa))
        if before(2, 3):
            sign = -sign
        if regions[q[0]] < POS:
            sign = -sign
        return _decide(sign, g, regions, q[1], q[0])
    raise ValueError(f"quadruple {list(quad)} does not match any Table-1 shape")
