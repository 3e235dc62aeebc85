"""Forbidden tagged patterns: exhaustive tables, minimal ones, and a sub-pattern prefilter.

A *table* of size k maps ``(w2, w3)`` to a boolean array of shape (T, T, T)
(T = number of tag positions for size k) marking which taggings of
``(identity, w2, w3)`` have no canonical realization.  Having a canonical
realization is inherited by sub-patterns, so a tagging is forbidden as soon
as one of its restrictions is; only the remaining taggings go to the decider.
"""
from __future__ import annotations

import logging
import os
import time
from itertools import combinations, permutations
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .core import class_key_tuple, tag_positions
from .decider import UndecidedOrientationError

log = logging.getLogger(__name__)

Table = dict[tuple[tuple[int, ...], tuple[int, ...]], np.ndarray]


def _tag_index(k: int) -> dict[tuple[int, int], int]:
    return {tag: i for i, tag in enumerate(tag_positions(k))}


def restriction_maps(words, keep: tuple[int, ...]):
    """Key and per-line tag-index maps of the restriction of ``words`` to ``keep``.

    The restricted words are relabelled so that the first reads ``0 1 ...``.
    ``maps[l][t]`` is the index (size ``len(keep)``) of tag ``t`` (size n) on line l.
    """
    n = len(words[0])
    k = len(keep)
    inside = [False] * n
    for e in keep:
        inside[e] = True
    label = {}
    for e in words[0]:
        if inside[e]:
            label[e] = len(label)
    small = _tag_index(k)
    maps = []
    restricted = []
    for word in words:
        restricted.append(tuple(label[e] for e in word if inside[e]))
        before = [0] * (n + 1)
        for pos, e in enumerate(word):
            before[pos + 1] = before[pos] + inside[e]
        maps.append(np.array([small[(before[z], before[o])] for z, o in tag_positions(n)],
                             dtype=np.intp))
    return (restricted[1], restricted[2]), maps


def flag_by_table(words, table: Table, k: int) -> np.ndarray:
    """Taggings of ``words`` (flat, tagging order) having a size-k restriction in ``table``."""
    n = len(words[0])
    T = len(tag_positions(n))
    flagged = np.zeros((T, T, T), dtype=np.bool_)
    for keep in combinations(range(n), k):
        key, maps = restriction_maps(words, keep)
        flagged |= table[key][np.ix_(*maps)]
    return flagged.reshape(-1)


def _verdicts(words, flagged: np.ndarray) -> np.ndarray:
    from ._kernel import verdicts_kernel
    n = len(words[0])
    out = verdicts_kernel(np.array(words, dtype=np.int64),
                          np.array(tag_positions(n), dtype=np.int64),
                          np.ascontiguousarray(flagged, dtype=np.bool_))
    bad = np.flatnonzero(out == -2)
    if bad.size:
        raise UndecidedOrientationError(f"undetermined final orientations in tagging {int(bad[0])} of {words}")
    return out


def build_level(k: int, lower: Optional[Table]) -> tuple[Table, set]:
    """Table of size k plus the class keys of its minimal forbidden patterns."""
    ident = tuple(range(k))
    tags = tag_positions(k)
    T = len(tags)
    table: Table = {}
    minimal = set()
    perms = list(permutations(range(k)))
    for w2 in perms:
        for w3 in perms:
            words = (ident, w2, w3)
            if lower is not None:
                flagged = flag_by_table(words, lower, k - 1)
            else:
                flagged = np.zeros(T ** 3, dtype=np.bool_)
            out = _verdicts(words, flagged)
            new = out == 0
            table[(w2, w3)] = (flagged | new).reshape(T, T, T)
            for idx in np.flatnonzero(new):
                a, rest = divmod(int(idx), T * T)
                b, c = divmod(rest, T)
                minimal.add(class_key_tuple(words, (tags[a], tags[b], tags[c])))
    return table, minimal


def mine_levels(max_n: int, progress: Optional[Callable[[int, float], None]] = None):
    """Yield ``(k, table, minimal_keys)`` for k = 1..max_n."""
    table = None
    for k in range(1, max_n + 1):
        t0 = time.perf_counter()
        table, minimal = build_level(k, table)
        if progress is not None:
            progress(k, time.perf_counter() - t0)
        yield k, table, minimal


def mine_minimal_forbidden(max_n: int) -> list:
    """Class keys ``(words, tags)`` of all minimally forbidden patterns of size <= max_n, sorted."""
    found = set()
    for _, _, minimal in mine_levels(max_n):
        found |= minimal
    return sorted(found, key=lambda key: (len(key[0][0]), key))


# ---------------------------------------------------------------- cached tables

def cache_dir() -> Path:
    root = os.environ.get("GP_CACHE") or os.path.join(
        os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache")), "geoperm")
    return Path(root)


def _table_path(k: int) -> Path:
    return cache_dir() / f"forbidden_tagged_{k}.npz"


def save_table(table: Table, k: int, path: Path) -> None:
    keys = np.array([w2 + w3 for w2, w3 in table], dtype=np.int8).reshape(len(table), 2 * k)
    values = np.stack([table[key] for key in table])
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp.npz")
    np.savez_compressed(tmp, keys=keys, values=values)
    os.replace(tmp, path)


def load_table(k: int, path: Path) -> Table:
    data = np.load(path)
    keys, values = data["keys"], data["values"]
    return {(tuple(int(x) for x in row[:k]), tuple(int(x) for x in row[k:])): values[i]
            for i, row in enumerate(keys)}


def forbidden_table(k: int, *, use_cache: bool = True) -> Table:
    """Exhaustive table of size k, built by mining (and cached on disk when allowed)."""
    path = _table_path(k)
    if use_cache and path.exists():
        try:
            return load_table(k, path)
        except (OSError, ValueError, KeyError):
            log.warning("ignoring unreadable table cache %s", path)
    table = None
    for level, table, _ in mine_levels(k):
        pass
    if use_cache:
        try:
            save_table(table, k, path)
        except OSError:
            log.warning("could not write table cache %s", path)
    return table


class SubpatternFilter:
    """Prefilter for the deciders: flags taggings containing a forbidden size-k pattern."""

    def __init__(self, table: Table, k: int):
        self.table = table
        self.k = k

    @classmethod
    def of_size(cls, k: int = 4, **kw) -> "SubpatternFilter":
        return cls(forbidden_table(k, **kw), k)

    def __call__(self, words) -> np.ndarray:
        if len(words[0]) <= self.k:
            T = len(tag_positions(len(words[0])))
            return np.zeros(T ** 3, dtype=np.bool_)
        return flag_by_table(words, self.table, self.k)
