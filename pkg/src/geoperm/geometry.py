"""Exact rational geometry on the three canonical lines.

The lines are ``l_x = (0,1,0) + R(1,0,0)``, ``l_y = (0,0,1) + R(0,1,0)`` and
``l_z = (1,0,0) + R(0,0,1)``; triangle ``i`` has vertices
``X_i = (x_i,1,0)``, ``Y_i = (0,y_i,1)`` and ``Z_i = (1,0,z_i)``.
Everything here is exact: inputs are converted to :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Point3 = tuple  # (Fraction, Fraction, Fraction)


class DegenerateError(ValueError):
    """A zero orientation was met where generic position is required."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def point(x, y, z) -> Point3:
    return (to_fraction(x), to_fraction(y), to_fraction(z))


def point_x(x) -> Point3:
    return (to_fraction(x), Fraction(1), Fraction(0))


def point_y(y) -> Point3:
    return (Fraction(0), to_fraction(y), Fraction(1))


def point_z(z) -> Point3:
    return (Fraction(1), Fraction(0), to_fraction(z))


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def orient4(p, q, r, s) -> int:
    """Sign of det[[p q r s]; [1 1 1 1]] (columns are the points)."""
    # Subtracting column s from the others leaves det3(p-s, q-s, r-s).
    ps = (p[0] - s[0], p[1] - s[1], p[2] - s[2])
    qs = (q[0] - s[0], q[1] - s[1], q[2] - s[2])
    rs = (r[0] - s[0], r[1] - s[1], r[2] - s[2])
    d = _det3(ps, qs, rs)
    return (d > 0) - (d < 0)


def _nonzero(o: int) -> int:
    if o == 0:
        raise DegenerateError("coplanar quadruple")
    return o


def triangles_disjoint(t1: Sequence[Point3], t2: Sequence[Point3]) -> bool:
    """Guigue-Devillers test for two triangles in generic position.

    Raises :class:`DegenerateError` on any zero orientation.
    """
    p1, q1, r1 = t1
    p2, q2, r2 = t2
    s1 = [_nonzero(orient4(p1, q1, r1, v)) for v in (p2, q2, r2)]
    if s1[0] == s1[1] == s1[2]:
        return True
    s2 = [_nonzero(orient4(p2, q2, r2, v)) for v in (p1, q1, r1)]
    if s2[0] == s2[1] == s2[2]:
        return True
    a, b = _rename(list(t1), list(t2), s1, s2)
    ai, bi, ci = a
    aj, bj, cj = b
    if _nonzero(orient4(ai, bi, aj, bj)) == 1:
        return True
    return _nonzero(orient4(ai, ci, cj, aj)) == 1


def _oddball(signs):
    """Index of the entry differing from the other two."""
    if signs[0] == signs[1]:
        return 2
    if signs[0] == signs[2]:
        return 1
    return 0


def _rename(ti, tj, si, sj):
    # si[k] = [ti, tj[k]]; sj[k] = [tj, ti[k]].  Circular shifts keep orientations.
    kj = _oddball(si)
    ki = _oddball(sj)
    ti = ti[ki:] + ti[:ki]
    tj = tj[kj:] + tj[:kj]
    if si[kj] == -1:
        ti = [ti[0], ti[2], ti[1]]
    if sj[ki] == -1:
        tj = [tj[0], tj[2], tj[1]]
    return ti, tj


# ------------------------------------------------------------ naive oracle

def _solve3(m, rhs):
    """Cramer's rule on a 3x3 system (rows of ``m``)."""
    d = _det3(m[0], m[1], m[2])
    if d == 0:
        return None
    cols = list(zip(*m))
    out = []
    for k in range(3):
        c = list(cols)
        c[k] = tuple(rhs)
        rows = list(zip(*c))
        out.append(_det3(rows[0], rows[1], rows[2]) / d)
    return out


def segment_hits_triangle(a, b, tri) -> bool:
    """Closed segment ``ab`` meets triangle ``tri`` (non-coplanar case).

    Solves ``a + t (b - a) = p + u (q - p) + v (r - p)`` directly.
    """
    p, q, r = tri
    d = [b[k] - a[k] for k in range(3)]
    e1 = [q[k] - p[k] for k in range(3)]
    e2 = [r[k] - p[k] for k in range(3)]
    # t*d - u*e1 - v*e2 = p - a
    rows = [(d[k], -e1[k], -e2[k]) for k in range(3)]
    sol = _solve3(rows, [p[k] - a[k] for k in range(3)])
    if sol is None:
        raise DegenerateError("segment parallel to triangle plane")
    t, u, v = sol
    return 0 <= t <= 1 and u >= 0 and v >= 0 and u + v <= 1


def triangles_intersect_naive(t1, t2) -> bool:
    """Two generic triangles meet iff an edge of one crosses the other."""
    for a, b in ((t1[0], t1[1]), (t1[1], t1[2]), (t1[2], t1[0])):
        if segment_hits_triangle(a, b, t2):
            return True
    for a, b in ((t2[0], t2[1]), (t2[1], t2[2]), (t2[2], t2[0])):
        if segment_hits_triangle(a, b, t1):
            return True
    return False


# ------------------------------------------------------------ configurations

@dataclass(frozen=True)
class TriangleConfig:
    """Coordinates of a canonical configuration; ``x[e]`` is element ``e`` on l_x."""

    x: tuple
    y: tuple
    z: tuple

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, tuple(to_fraction(v) for v in getattr(self, name)))
        if not len(self.x) == len(self.y) == len(self.z):
            raise ValueError("coordinate vectors must have equal length")

    @classmethod
    def from_vertex_values(cls, values: Sequence[Fraction], n: int) -> "TriangleConfig":
        """Split a flat vector indexed by vertex id (x's, then y's, then z's)."""
        return cls(tuple(values[:n]), tuple(values[n:2 * n]), tuple(values[2 * n:3 * n]))

    @property
    def n(self) -> int:
        return len(self.x)

    def lines(self) -> tuple:
        return (self.x, self.y, self.z)

    def triangle(self, i: int):
        return (point_x(self.x[i]), point_y(self.y[i]), point_z(self.z[i]))

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(v) for v in line] for line in self.lines()]

    @classmethod
    def from_strings(cls, rows) -> "TriangleConfig":
        return cls(*(tuple(Fraction(v) for v in row) for row in rows))


def region_of_value(v: Fraction) -> int:
    """0 below 0, 1 inside (0, 1), 2 above 1."""
    if v < 0:
        return 0
    if v < 1:
        return 1
    return 2


def verify_certificate(pattern, config: TriangleConfig) -> bool:
    """Check that ``config`` is a canonical realization of the tagged pattern.

    Cheap combinatorial checks run first; disjointness of every pair last.
    """
    n = pattern.n
    if config.n != n:
        return False
    for line, tp in zip(config.lines(), pattern.lines):
        if any(v == 0 or v == 1 for v in line):
            return False
        if len(set(line)) != n:
            return False
        order = tuple(sorted(range(n), key=line.__getitem__))
        if order != tp.perm.word:
            return False
        for pos, e in enumerate(order):
            want = 0 if pos < tp.zero else (1 if pos < tp.one else 2)
            if region_of_value(line[e]) != want:
                return False
    tris = [config.triangle(i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if not triangles_disjoint(tris[i], tris[j]):
                return False
    return True
