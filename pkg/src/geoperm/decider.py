"""Decide canonical realizability of tagged patterns and realizability of triples.

The search follows the poset-refinement scheme: collect the unknown
comparisons ``U`` needed for the sign vectors, try every orientation of
them (a candidate), and for each candidate walk the triangle pairs, forcing
the single missing comparison when one final test is false and the other
undecided.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .core import TaggedPattern, Triple, enumerate_taggings, reverse, tag_positions
from .geometry import TriangleConfig, verify_certificate
from .lifting import RepGraph, base_graph, regions_of, topological_sort, transitive_closure_acyclic, witness_from_reps
from .orientations import SignEntry, associated_vertex, final_orientation, rename_guigue, sign_vector


class UndecidedOrientationError(RuntimeError):
    """Both final Guigue-Devillers orientations were undecided for one pair."""


@dataclass(frozen=True)
class Verdict:
    realizable: bool
    pattern: Optional[TaggedPattern] = None
    certificate: Optional[TriangleConfig] = None
    reversals: Optional[int] = None

    def __bool__(self) -> bool:
        return self.realizable


@dataclass
class SearchStats:
    tagged_calls: int = 0
    candidates: int = 0
    skipped_by_filter: int = 0


def extract_realization(g: RepGraph, regions) -> TriangleConfig:
    """Coordinates from a linear extension of ``g``; representatives get 2..3n+1."""
    order = topological_sort(g)
    return TriangleConfig.from_vertex_values(witness_from_reps(order, regions), g.n)


def _resolve(sign: int, v: int, w: int, succ) -> int:
    """+-1 when decided on ``succ``, 0 when still pending (v < 0 means static)."""
    if v < 0:
        return sign
    if succ[v] >> w & 1:
        return -sign
    if succ[w] >> v & 1:
        return sign
    return 0


def _add_edge(succ, v: int, w: int) -> bool:
    """In-place closed edge insertion on raw bitsets; False on a cycle."""
    if succ[w] >> v & 1:
        return False
    if succ[v] >> w & 1:
        return True
    gain = (1 << w) | succ[w]
    vbit = 1 << v
    for a in range(len(succ)):
        if a == v or succ[a] & vbit:
            succ[a] |= gain
    return True


def _raw(e: SignEntry) -> tuple[int, int, int]:
    return (e.sign, -1, -1) if e.determined else (e.sign, e.v, e.w)


class _Instance:
    """Per-pattern precomputation shared by all candidates.

    Sign entries are stored as raw ``(sign, v, w)`` triples with region
    information already folded in, so a candidate only looks up poset edges.
    """

    def __init__(self, pattern: TaggedPattern):
        self.pattern = pattern
        self.n = n = pattern.n
        self.ranks = [tp.perm.ranks() for tp in pattern.lines]
        self.regions = regions_of(pattern)
        self.base = base_graph(pattern)
        unknowns: set[int] = set()
        self.pairs = []
        for i, j in combinations(range(n), 2):
            entries = sign_vector(i, j, self.ranks, self.regions, self.base, unknowns)
            self.pairs.append((i, j, tuple(_raw(e) for e in entries)))
        for v in unknowns:
            w = associated_vertex(v, n)
            assert v % n == w % n, "unknown comparison between different indices"
        self.unknowns = sorted(unknowns)
        self._finals: dict = {}
        self._empty = RepGraph(n)

    def _final_pair(self, i: int, j: int, sv: tuple):
        key = (i, j, sv)
        hit = self._finals.get(key)
        if hit is None:
            ai, bi, ci, aj, bj, cj = rename_guigue(sv, i, j, self.n)
            o1 = final_orientation((ai, bi, aj, bj), self._empty, self.ranks, self.regions)
            o2 = final_orientation((ai, ci, cj, aj), self._empty, self.ranks, self.regions)
            hit = self._finals[key] = (_raw(o1), _raw(o2))
        return hit

    def check(self, succ: list) -> Optional[list]:
        """Walk the pairs on a closed acyclic candidate poset; None if some pair intersects."""
        for i, j, entries in self.pairs:
            sv = []
            for sign, v, w in entries:
                r = _resolve(sign, v, w, succ)
                if r == 0:
                    raise UndecidedOrientationError(f"sign vector of pair ({i}, {j}) not determined")
                sv.append(r)
            if sv[0] == sv[1] == sv[2] or sv[3] == sv[4] == sv[5]:
                continue
            (s1, v1, w1), (s2, v2, w2) = self._final_pair(i, j, tuple(sv))
            r1 = _resolve(s1, v1, w1, succ)
            r2 = _resolve(s2, v2, w2, succ)
            if r1 == 1 or r2 == 1:
                continue
            if r1 == 0 and r2 == 0:
                raise UndecidedOrientationError(f"both final orientations unknown for pair ({i}, {j})")
            if r1 == -1 and r2 == -1:
                return None
            sign, v, w = (s2, v2, w2) if r1 == -1 else (s1, v1, w1)
            # the pending test must hold: sign * sgn(v - f(w)) = 1
            ok = _add_edge(succ, w, v) if sign == 1 else _add_edge(succ, v, w)
            if not ok:
                return None
        return succ

    def candidate_graph(self, mask: int) -> Optional[list]:
        """Base poset plus the edges chosen by ``mask`` (bit set: v < f(w)), closed."""
        g = self.base.copy()
        for b, v in enumerate(self.unknowns):
            w = associated_vertex(v, self.n)
            if mask >> b & 1:
                g.succ[v] |= 1 << w
            else:
                g.succ[w] |= 1 << v
        return g.succ if transitive_closure_acyclic(g) else None

    def search_plain(self, stats: SearchStats) -> Optional[list]:
        for mask in range(1 << len(self.unknowns)):
            stats.candidates += 1
            succ = self.candidate_graph(mask)
            if succ is None:
                continue
            accepted = self.check(succ)
            if accepted is not None:
                return accepted
        return None

    def _doomed(self, pair, succ) -> bool:
        """True when the pair already intersects on the partial poset ``succ``."""
        i, j, entries = pair
        sv = tuple(_resolve(sign, v, w, succ) for sign, v, w in entries)
        if 0 in sv or sv[0] == sv[1] == sv[2] or sv[3] == sv[4] == sv[5]:
            return False
        (s1, v1, w1), (s2, v2, w2) = self._final_pair(i, j, sv)
        return _resolve(s1, v1, w1, succ) == -1 and _resolve(s2, v2, w2, succ) == -1

    def search_incremental(self, stats: SearchStats) -> Optional[list]:
        """Same candidates in the same (ascending mask) order, pruning hopeless prefixes.

        A prefix is dropped when it closes a cycle, or when some pair whose
        unknowns are all fixed already has both final tests false; edges only
        accumulate, so every completion would be rejected as well.
        """
        unknowns, n = self.unknowns, self.n
        assoc = [associated_vertex(v, n) for v in unknowns]
        bit_of = {v: b for b, v in enumerate(unknowns)}
        ready: list[list] = [[] for _ in range(len(unknowns) + 1)]
        for pair in self.pairs:
            bits = [bit_of[v] for _, v, _ in pair[2] if v >= 0]
            ready[min(bits) if bits else len(unknowns)].append(pair)

        def rec(succ: list, b: int) -> Optional[list]:
            # bits above b are fixed; ready[b + 1] lists pairs whose lowest bit is b + 1
            for pair in ready[b + 1]:
                if self._doomed(pair, succ):
                    return None
            if b < 0:
                stats.candidates += 1
                return self.check(succ)
            v, w = unknowns[b], assoc[b]
            for a, c in ((w, v), (v, w)):  # bit 0 first
                h = succ[:]
                if _add_edge(h, a, c):
                    found = rec(h, b - 1)
                    if found is not None:
                        return found
            return None

        return rec(self.base.succ[:], len(unknowns) - 1)


def decide_tagged(pattern: TaggedPattern, *, incremental: bool = False, engine: str = "python",
                  stats: SearchStats | None = None) -> Verdict:
    """Canonical realizability of one tagged pattern, with a certificate when realizable.

    ``incremental`` only changes how candidates are generated (hopeless
    prefixes are skipped); the accepted candidate is the same.  ``engine``
    selects the pure-Python search or its compiled twin (always incremental).
    """
    stats = stats if stats is not None else SearchStats()
    stats.tagged_calls += 1
    if engine == "compiled" and pattern.n <= _MAX_COMPILED_N:
        from . import _kernel
        ranks = np.array([tp.perm.ranks() for tp in pattern.lines], dtype=np.int64)
        regions = regions_of(pattern)
        status, succ, cand = _kernel.decide_kernel(ranks, np.array(regions, dtype=np.int64), pattern.n)
        stats.candidates += cand
        if status == _kernel.GUARD:
            raise UndecidedOrientationError(f"undetermined final orientations in {pattern}")
        if status != _kernel.ACCEPT:
            return Verdict(False, pattern)
        cert = extract_realization(RepGraph(pattern.n, [int(x) for x in succ]), regions)
        return Verdict(True, pattern, cert)
    if engine not in ("python", "compiled"):
        raise ValueError(f"unknown engine {engine!r}")
    inst = _Instance(pattern)
    succ = inst.search_incremental(stats) if incremental else inst.search_plain(stats)
    if succ is None:
        return Verdict(False, pattern)
    cert = extract_realization(RepGraph(inst.n, succ), inst.regions)
    return Verdict(True, pattern, cert)


_MAX_COMPILED_N = 20


def _reversed_triple(t: Triple, mask: int) -> Triple:
    return Triple(tuple(reverse(p) if mask >> k & 1 else p for k, p in enumerate(t.perms)))


def decide_canonical(t: Triple, *, short_circuit: bool = True, prefilter=None,
                     incremental: bool = False, engine: str = "python",
                     stats: SearchStats | None = None) -> Verdict:
    """Is some tagging of ``t`` canonically realizable?  First hit in tagging order wins.

    ``prefilter(words)`` may return a flat boolean array over the taggings
    (same order as :func:`enumerate_taggings`) marking taggings already known
    to contain a forbidden sub-pattern; those are skipped.
    """
    stats = stats if stats is not None else SearchStats()
    flagged = prefilter(t.words) if prefilter is not None else None
    if engine == "compiled" and t.n <= _MAX_COMPILED_N:
        from . import _kernel
        tag_list = tag_positions(t.n)
        total = len(tag_list) ** 3
        if flagged is None:
            flagged = np.zeros(total, dtype=np.bool_)
        flagged = np.ascontiguousarray(flagged, dtype=np.bool_).reshape(total)
        stats.skipped_by_filter += int(flagged.sum())
        best, succ, decided, bad, cand = _kernel.canonical_kernel(
            np.array(t.words, dtype=np.int64), np.array(tag_list, dtype=np.int64),
            flagged, short_circuit)
        stats.tagged_calls += int(decided)
        stats.candidates += int(cand)
        if bad >= 0:
            raise UndecidedOrientationError(f"undetermined final orientations in tagging {bad} of {t}")
        if best < 0:
            return Verdict(False)
        pattern = next(enumerate_taggings(t, int(best)))
        regions = regions_of(pattern)
        cert = extract_realization(RepGraph(t.n, [int(x) for x in succ]), regions)
        return Verdict(True, pattern, cert)
    first = None
    for k, pattern in enumerate(enumerate_taggings(t)):
        if flagged is not None and flagged[k]:
            stats.skipped_by_filter += 1
            continue
        verdict = decide_tagged(pattern, incremental=incremental, engine=engine, stats=stats)
        if verdict.realizable and first is None:
            first = verdict
            if short_circuit:
                break
    return first if first is not None else Verdict(False)


def decide_full(t: Triple, *, short_circuit: bool = True, prefilter=None,
                incremental: bool = False, engine: str = "python",
                stats: SearchStats | None = None) -> Verdict:
    """Geometric realizability of a triple: all 8 reversal masks, each via decide_canonical.

    Bit k of the mask reverses permutation k.  The certificate realizes the
    reversed, tagged pattern stored in the verdict.
    """
    stats = stats if stats is not None else SearchStats()
    first = None
    for mask in range(8):
        verdict = decide_canonical(_reversed_triple(t, mask), short_circuit=short_circuit,
                                   prefilter=prefilter, incremental=incremental,
                                   engine=engine, stats=stats)
        if verdict.realizable and first is None:
            first = Verdict(True, verdict.pattern, verdict.certificate, mask)
            if short_circuit:
                break
    return first if first is not None else Verdict(False)


def check_verdict(v: Verdict) -> bool:
    """Independent exact re-check of a realizable verdict's certificate."""
    return v.realizable and verify_certificate(v.pattern, v.certificate)
