"""Compiled twin of the decider search (numba).

Mirrors ``decider._Instance.search_incremental`` step for step on int64
bitsets, so it accepts the same candidate and returns the same poset.
Vertex bitsets need 3n <= 62, hence ``MAX_N``.
"""
from __future__ import annotations

import numpy as np
from numba import njit

MAX_N = 20

ACCEPT, REJECT, GUARD = 1, 0, -1


@njit(cache=True)
def _resolve(sign, v, w, succ):
    if v < 0:
        return sign
    if (succ[v] >> w) & 1:
        return -sign
    if (succ[w] >> v) & 1:
        return sign
    return 0


@njit(cache=True)
def _add_edge(succ, v, w):
    if (succ[w] >> v) & 1:
        return False
    if (succ[v] >> w) & 1:
        return True
    gain = (np.int64(1) << w) | succ[w]
    vbit = np.int64(1) << v
    for a in range(succ.shape[0]):
        if a == v or (succ[a] & vbit) != 0:
            succ[a] |= gain
    return True


@njit(cache=True)
def _static_cmp(sign, regions, v, w, out):
    """Fold the region part of sgn(v - f(w)) into ``out = (sign, v, w)``."""
    ru = regions[v]
    rf = (regions[w] + 1) % 3
    if ru == rf:
        out[0] = sign
        out[1] = v
        out[2] = w
    elif ru > rf:
        out[0] = sign
        out[1] = -1
        out[2] = -1
    else:
        out[0] = -sign
        out[1] = -1
        out[2] = -1


@njit(cache=True)
def _final(q0, q1, q2, q3, n, ranks, regions, out):
    q = np.empty(4, np.int64)
    q[0] = q0
    q[1] = q1
    q[2] = q2
    q[3] = q3
    sign = 1
    for a in range(1, 4):
        b = a
        while b > 0 and q[b - 1] > q[b]:
            t = q[b - 1]
            q[b - 1] = q[b]
            q[b] = t
            sign = -sign
            b -= 1
    l0, l1, l2, l3 = q[0] // n, q[1] // n, q[2] // n, q[3] // n
    i0, i1, i2, i3 = q[0] % n, q[1] % n, q[2] % n, q[3] % n
    if l0 == l1 and l2 == l3:
        if ranks[l0, i0] < ranks[l1, i1]:
            sign = -sign
        if ranks[l2, i2] < ranks[l3, i3]:
            sign = -sign
        out[0] = sign
        out[1] = -1
        out[2] = -1
    elif l0 == l1:
        if ranks[l0, i0] < ranks[l1, i1]:
            sign = -sign
        if regions[q[2]] < 2:
            sign = -sign
        _static_cmp(sign, regions, q[3], q[2], out)
    elif l1 == l2:
        sign = -sign
        if ranks[l1, i1] < ranks[l2, i2]:
            sign = -sign
        if regions[q[3]] < 2:
            sign = -sign
        _static_cmp(sign, regions, q[0], q[3], out)
    else:
        if ranks[l2, i2] < ranks[l3, i3]:
            sign = -sign
        if regions[q[0]] < 2:
            sign = -sign
        _static_cmp(sign, regions, q[1], q[0], out)


@njit(cache=True)
def _finals_for(i, j, sv, n, ranks, regions, o1, o2):
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
    _final(xi, yi, xj, yj, n, ranks, regions, o1)
    _final(xi, zi, zj, xj, n, ranks, regions, o2)


@njit(cache=True)
def _pair_status(p, pi, pj, entries, succ, n, ranks, regions, sv, o1, o2, force):
    """1 disjoint (possibly after forcing), 0 intersecting / contradiction,
    -1 both finals unknown, 2 sign vector not determined."""
    for k in range(6):
        r = _resolve(entries[p, k, 0], entries[p, k, 1], entries[p, k, 2], succ)
        if r == 0:
            return 2
        sv[k] = r
    if (sv[0] == sv[1] and sv[1] == sv[2]) or (sv[3] == sv[4] and sv[4] == sv[5]):
        return 1
    _finals_for(pi[p], pj[p], sv, n, ranks, regions, o1, o2)
    r1 = _resolve(o1[0], o1[1], o1[2], succ)
    r2 = _resolve(o2[0], o2[1], o2[2], succ)
    if r1 == 1 or r2 == 1:
        return 1
    if r1 == 0 and r2 == 0:
        return -1
    if r1 == -1 and r2 == -1:
        return 0
    if not force:
        return 1
    if r1 == -1:
        s, v, w = o2[0], o2[1], o2[2]
    else:
        s, v, w = o1[0], o1[1], o1[2]
    if s == 1:
        ok = _add_edge(succ, w, v)
    else:
        ok = _add_edge(succ, v, w)
    return 1 if ok else 0


@njit(cache=True)
def decide_kernel(ranks, regions, n):
    """Returns (status, succ, candidates); status ACCEPT, REJECT or GUARD."""
    N = 3 * n
    # base poset: same line, same region, earlier in the word
    succ0 = np.zeros(N, np.int64)
    for l in range(3):
        for a in range(n):
            va = l * n + a
            for b in range(n):
                vb = l * n + b
                if ranks[l, a] < ranks[l, b] and regions[va] == regions[vb]:
                    succ0[va] |= np.int64(1) << vb
    npairs = n * (n - 1) // 2
    pi = np.empty(npairs, np.int64)
    pj = np.empty(npairs, np.int64)
    entries = np.empty((npairs, 6, 3), np.int64)
    unknown = np.zeros(N, np.bool_)
    p = 0
    for i in range(n):
        for j in range(i + 1, n):
            pi[p] = i
            pj[p] = j
            for half in range(2):
                a = i if half == 0 else j
                c = j if half == 0 else i
                for l in range(3):
                    s, t, u = l, (l + 1) % 3, (l + 2) % 3
                    sign = 1 if ranks[s, a] > ranks[s, c] else -1
                    if regions[t * n + a] < 2:
                        sign = -sign
                    v, w = u * n + a, t * n + a
                    k = half * 3 + l
                    ru = regions[v]
                    rf = (regions[w] + 1) % 3
                    if ru == rf:
                        entries[p, k, 0] = sign
                        entries[p, k, 1] = v
                        entries[p, k, 2] = w
                        unknown[v] = True
                    else:
                        entries[p, k, 0] = sign if ru > rf else -sign
                        entries[p, k, 1] = -1
                        entries[p, k, 2] = -1
            p += 1
    m = 0
    for v in range(N):
        if unknown[v]:
            m += 1
    U = np.empty(m, np.int64)
    bit_of = np.full(N, -1, np.int64)
    k = 0
    for v in range(N):
        if unknown[v]:
            U[k] = v
            bit_of[v] = k
            k += 1
    ready = np.empty(npairs, np.int64)
    for p in range(npairs):
        lo = m
        for k in range(6):
            v = entries[p, k, 1]
            if v >= 0 and bit_of[v] < lo:
                lo = bit_of[v]
        ready[p] = lo

    sv = np.empty(6, np.int64)
    o1 = np.empty(3, np.int64)
    o2 = np.empty(3, np.int64)
    G = np.empty((m + 1, N), np.int64)
    G[0, :] = succ0
    state = np.zeros(m + 1, np.int64)
    work = np.empty(N, np.int64)
    candidates = 0
    d = 0
    entered = True
    while d >= 0:
        if entered:
            entered = False
            b = m - 1 - d
            doomed = False
            for p in range(npairs):
                if ready[p] == b + 1:
                    if _pair_status(p, pi, pj, entries, G[d], n, ranks, regions, sv, o1, o2, False) == 0:
                        doomed = True
                        break
            if doomed:
                d -= 1
                continue
            if d == m:
                candidates += 1
                work[:] = G[d]
                status = ACCEPT
                for p in range(npairs):
                    r = _pair_status(p, pi, pj, entries, work, n, ranks, regions, sv, o1, o2, True)
                    if r == 1:
                        continue
                    if r == 0:
                        status = REJECT
                    else:
                        status = GUARD
                    break
                if status == ACCEPT or status == GUARD:
                    return status, work, candidates
                d -= 1
                continue
            state[d] = 0
        if state[d] >= 2:
            d -= 1
            continue
        c = state[d]
        state[d] += 1
        b = m - 1 - d
        v = U[b]
        w = ((v // n + 2) % 3) * n + v % n
        G[d + 1, :] = G[d]
        if c == 0:
            ok = _add_edge(G[d + 1], w, v)
        else:
            ok = _add_edge(G[d + 1], v, w)
        if ok:
            d += 1
            entered = True
    return REJECT, work, candidates


@njit(cache=True)
def _regions_for(words, tags, n, regions):
    for l in range(3):
        z = tags[l, 0]
        o = tags[l, 1]
        for pos in range(n):
            e = words[l, pos]
            if pos < z:
                regions[l * n + e] = 0
            elif pos < o:
                regions[l * n + e] = 1
            else:
                regions[l * n + e] = 2


@njit(cache=True)
def canonical_kernel(words, tag_list, flagged, short_circuit):
    """Loop over taggings (product order of ``tag_list`` per line).

    Returns (first accepted index or -1, its poset, decided count,
    guard index or -1, candidates).
    """
    n = words.shape[1]
    ranks = np.empty((3, n), np.int64)
    for l in range(3):
        for pos in range(n):
            ranks[l, words[l, pos]] = pos
    T = tag_list.shape[0]
    regions = np.empty(3 * n, np.int64)
    tags = np.empty((3, 2), np.int64)
    best = -1
    best_succ = np.zeros(3 * n, np.int64)
    decided = 0
    total_cand = 0
    k = 0
    for a in range(T):
        for b in range(T):
            for c in range(T):
                if not flagged[k]:
                    tags[0, :] = tag_list[a]
                    tags[1, :] = tag_list[b]
                    tags[2, :] = tag_list[c]
                    _regions_for(words, tags, n, regions)
                    decided += 1
                    status, succ, cand = decide_kernel(ranks, regions, n)
                    total_cand += cand
                    if status == GUARD:
                        return best, best_succ, decided, k, total_cand
                    if status == ACCEPT and best < 0:
                        best = k
                        best_succ[:] = succ
                        if short_circuit:
                            return best, best_succ, decided, -1, total_cand
                k += 1
    return best, best_succ, decided, -1, total_cand


@njit(cache=True)
def verdicts_kernel(words, tag_list, flagged):
    """Per-tagging outcome: 1 realizable, 0 not, -1 skipped (flagged), -2 orientation guard."""
    n = words.shape[1]
    ranks = np.empty((3, n), np.int64)
    for l in range(3):
        for pos in range(n):
            ranks[l, words[l, pos]] = pos
    T = tag_list.shape[0]
    out = np.empty(T * T * T, np.int8)
    regions = np.empty(3 * n, np.int64)
    tags = np.empty((3, 2), np.int64)
    k = 0
    for a in range(T):
        for b in range(T):
            for c in range(T):
                if flagged[k]:
                    out[k] = -1
                else:
                    tags[0, :] = tag_list[a]
                    tags[1, :] = tag_list[b]
                    tags[2, :] = tag_list[c]
                    _regions_for(words, tags, n, regions)
                    status, succ, cand = decide_kernel(ranks, regions, n)
                    if status == ACCEPT:
                        out[k] = 1
                    elif status == GUARD:
                        out[k] = -2
                    else:
                        out[k] = 0
                k += 1
    return out
