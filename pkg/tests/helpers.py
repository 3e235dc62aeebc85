"""Shared generators and closed forms for the tests."""
from __future__ import annotations

import random
from fractions import Fraction

from geoperm.core import TaggedPattern, tag_positions
from geoperm.geometry import point_x, point_y, point_z

MAKE = {"x": point_x, "y": point_y, "z": point_z}


def rand_q(rng: random.Random, span: int = 20, den: int = 12) -> Fraction:
    """Random rational avoiding 0 and 1."""
    while True:
        q = Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))
        if q not in (0, 1):
            return q


def rand_point(rng: random.Random) -> tuple:
    return tuple(Fraction(rng.randint(-30, 30), rng.randint(1, 7)) for _ in range(3))


def sgn(v) -> int:
    return (v > 0) - (v < 0)


def f(t):
    return 1 / (1 - t)


# orient4 closed forms per line shape: (line letters, determinant, factored form), over (a, b, c, d).
ORIENT_SHAPES = [
    ("xxyy", lambda a, b, c, d: (a - b) * (c - d), lambda a, b, c, d: (a - b) * (c - d)),
    ("xxzz", lambda a, b, c, d: (a - b) * (c - d), lambda a, b, c, d: (a - b) * (c - d)),
    ("yyzz", lambda a, b, c, d: (a - b) * (c - d), lambda a, b, c, d: (a - b) * (c - d)),
    ("xxyz", lambda a, b, c, d: (a - b) * (c * d - d + 1),
     lambda a, b, c, d: (a - b) * (c - 1) * (d - f(c))),
    ("xyyz", lambda a, b, c, d: (b - c) * (a - a * d - 1),
     lambda a, b, c, d: -(b - c) * (d - 1) * (a - f(d))),
    ("xyzz", lambda a, b, c, d: (c - d) * (a * b + 1 - b),
     lambda a, b, c, d: (c - d) * (a - 1) * (b - f(a))),
]


def shape_points(shape: str, vals) -> list:
    return [MAKE[ch](v) for ch, v in zip(shape, vals)]


def random_tagged(rng: random.Random, n: int) -> TaggedPattern:
    tags = tag_positions(n)
    return TaggedPattern.from_parts([rng.sample(range(n), n) for _ in range(3)],
                                    [rng.choice(tags) for _ in range(3)])


def region(v) -> int:
    return 0 if v < 0 else (1 if v < 1 else 2)
