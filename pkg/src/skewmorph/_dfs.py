"""Compiled depth-first search behind :mod:`skewmorph.oracle`.

State arrays (all int64, -1 = unknown): ``phi`` (images), ``pre``
(preimages) and ``pi`` (power function). ``lengths[x]`` is the orbit length
``x`` must have; the caller enumerates every admissible length profile.

Every deduction below follows from the defining identity or from the orbit
length profile, so a pruned branch never contains a skew-morphism. Leaves are
returned as raw image tables and re-checked by the caller.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FAIL = -2


@njit(cache=True)
def _set_pi(pi, notker, z, v):
    if v == 0 or (v == 1 and notker[z]):
        return False
    if pi[z] >= 0:
        return pi[z] == v
    pi[z] = v
    return True


@njit(cache=True)
def _assign(phi, pre, lengths, x, img):
    """Set ``phi(x) = img``; closes the cycle when the segment reaches full length."""
    while True:
        if phi[x] >= 0:
            return phi[x] == img
        if pre[img] >= 0:
            return False
        want = lengths[x]
        if lengths[img] != want:
            return False
        phi[x] = img
        pre[img] = x
        count, y = 1, img
        while y != x and phi[y] >= 0:
            y = phi[y]
            count += 1
        if y == x:
            return count == want
        z = x
        while pre[z] >= 0:
            z = pre[z]
            count += 1
        count += 1
        if count > want:
            return False
        if count < want:
            return True
        x, img = y, z


@njit(cache=True)
def _segments(phi, pre, N, seg, pos, seglen, closed, elems):
    """Split the partial permutation into closed cycles and open segments."""
    for y in range(N):
        seg[y] = -1
    nseg = 0
    for y0 in range(N):
        if seg[y0] >= 0:
            continue
        start = y0
        is_closed = False
        while pre[start] >= 0:
            start = pre[start]
            if start == y0:
                is_closed = True
                break
        y = start
        p = 0
        while True:
            seg[y] = nseg
            pos[y] = p
            elems[nseg, p] = y
            p += 1
            y = phi[y]
            if y < 0 or y == start:
                break
        seglen[nseg] = p
        closed[nseg] = is_closed
        nseg += 1


@njit(cache=True)
def _power_at(y, j, lengths, seg, pos, seglen, closed, elems):
    """``phi^j(y)`` if known, else -1."""
    L = lengths[y]
    jr = j % L
    s = seg[y]
    if closed[s]:
        return elems[s, (pos[y] + jr) % L]
    q = pos[y] + jr
    if q < seglen[s]:
        return elems[s, q]
    return -1


@njit(cache=True)
def _reach(y, j, w, lengths, seg, pos, seglen, closed, elems, link):
    """Status of ``phi^j(y) == w``: 0 violated, 1 holds or open, 2 needs ``phi(link[0]) = link[1]``."""
    L = lengths[y]
    if lengths[w] != L:
        return 0
    jr = j % L
    sy = seg[y]
    sw = seg[w]
    if closed[sy]:
        return 1 if elems[sy, (pos[y] + jr) % L] == w else 0
    if closed[sw]:
        return 0
    if sy == sw:
        return 1 if (pos[w] - pos[y] - jr) % L == 0 else 0
    ly = seglen[sy]
    lw = seglen[sw]
    gap = (jr - (ly - 1 - pos[y]) - pos[w] - 1) % L
    if gap > L - ly - lw:
        return 0
    if gap == 0:
        link[0] = elems[sy, ly - 1]
        link[1] = elems[sw, 0]
        return 2
    return 1


@njit(cache=True)
def _sigma(y, j, n, pi, lengths, seg, pos, seglen, closed, elems, hole):
    """Sum of ``pi`` over the first ``j`` points of the orbit of ``y``.

    Returns -1 if some point is unknown; if exactly one distinct point lacks
    ``pi`` and it occurs once, its index goes to ``hole[0]`` and the partial
    sum is returned with ``hole[1] = 1``; more gaps give ``hole[1] = 2``.
    """
    hole[0] = -1
    hole[1] = 0
    L = lengths[y]
    s = seg[y]
    if not closed[s] and pos[y] + j > seglen[s]:
        return -1
    tot = 0
    for i in range(j):
        v = elems[s, (pos[y] + i) % L] if closed[s] else elems[s, pos[y] + i]
        p = pi[v]
        if p >= 0:
            tot += p
        elif hole[1] == 0:
            hole[0] = v
            hole[1] = 1
        elif hole[0] != v:
            hole[1] = 2
        else:
            hole[1] = 3
    return tot % n


@njit(cache=True)
def _propagate(phi, pre, pi, mul, inv, lengths, notker, n, live_out, work):
    """Close the state under the deduction rules.

    Returns FAIL on contradiction, -1 if no element with a known image has an
    open ``pi``, otherwise the such element with the fewest admissible
    exponents (copied into ``live_out``; its count is ``live_out[n]``).
    """
    N = phi.shape[0]
    seg = work[0]
    pos = work[1]
    seglen = work[2]
    closed = work[3]
    link = work[4]
    hole = work[5]
    live = work[6]
    elems = np.empty((N, N), np.int64)
    while True:
        changed = False
        _segments(phi, pre, N, seg, pos, seglen, closed, elems)
        best = -1
        best_cnt = n + 1
        for x in range(N):
            px = phi[x]
            if px < 0:
                continue
            ipx = inv[px]
            j = pi[x]
            if j < 0:
                cnt = 0
                last = -1
                for jj in range(1, n):
                    live[jj] = 0
                    if jj == 1 and notker[x]:
                        continue
                    ok = True
                    for y in range(N):
                        z = mul[x, y]
                        cur = phi[z]
                        if cur >= 0:
                            if _reach(y, jj, mul[ipx, cur], lengths, seg, pos, seglen, closed, elems, link) == 0:
                                ok = False
                                break
                        else:
                            v = _power_at(y, jj, lengths, seg, pos, seglen, closed, elems)
                            if v >= 0:
                                t = mul[px, v]
                                if pre[t] >= 0 or lengths[t] != lengths[z]:
                                    ok = False
                                    break
                    if ok:
                        # equal pi values exactly on right cosets of the kernel
                        for y in range(N):
                            q = pi[mul[x, inv[y]]]
                            if pi[y] == jj and q >= 0 and q != 1:
                                ok = False
                                break
                            if q == 1 and pi[y] >= 0 and pi[y] != jj:
                                ok = False
                                break
                    live[jj] = ok
                    if ok:
                        cnt += 1
                        last = jj
                if cnt == 0:
                    return FAIL
                if cnt == 1:
                    pi[x] = last
                    changed = True
                    continue
                if cnt < best_cnt:
                    best_cnt = cnt
                    best = x
                    for jj in range(n):
                        live_out[jj] = live[jj] if jj > 0 else 0
                    live_out[n] = cnt
                continue
            for y in range(N):
                z = mul[x, y]
                cur = phi[z]
                if cur < 0:
                    v = _power_at(y, j, lengths, seg, pos, seglen, closed, elems)
                    if v >= 0:
                        if not _assign(phi, pre, lengths, z, mul[px, v]):
                            return FAIL
                        changed = True
                else:
                    st = _reach(y, j, mul[ipx, cur], lengths, seg, pos, seglen, closed, elems, link)
                    if st == 0:
                        return FAIL
                    if st == 2:
                        if not _assign(phi, pre, lengths, link[0], link[1]):
                            return FAIL
                        changed = True
                # pi(xy) = sigma(y, pi(x))
                tot = _sigma(y, j, n, pi, lengths, seg, pos, seglen, closed, elems, hole)
                if tot < 0:
                    continue
                if hole[1] == 0:
                    if pi[z] != tot:
                        if not _set_pi(pi, notker, z, tot):
                            return FAIL
                        changed = True
                elif hole[1] == 1 and pi[z] >= 0:
                    if not _set_pi(pi, notker, hole[0], (pi[z] - tot) % n):
                        return FAIL
                    changed = True
        # pi(x) == pi(y) iff x y^-1 lies in the kernel
        for x in range(N):
            if pi[x] < 0:
                continue
            for y in range(N):
                q = mul[x, inv[y]]
                if pi[y] >= 0:
                    if pi[x] == pi[y]:
                        if pi[q] != 1:
                            if not _set_pi(pi, notker, q, 1):
                                return FAIL
                            changed = True
                    elif pi[q] == 1:
                        return FAIL
                elif pi[q] == 1:
                    if not _set_pi(pi, notker, y, pi[x]):
                        return FAIL
                    changed = True
        if not changed:
            if not _orbit_sums_ok(pi, lengths, seg, seglen, closed, elems, N):
                return FAIL
            return best


@njit(cache=True)
def _orbit_sums_ok(pi, lengths, seg, seglen, closed, elems, N):
    """Along a closed orbit of length L the partial sums of pi are distinct mod L
    and the full sum vanishes mod L."""
    seen = np.zeros(N + 1, np.bool_)
    for y in range(N):
        s = seg[y]
        if elems[s, 0] != y or not closed[s]:
            continue
        L = seglen[s]
        full = True
        for i in range(L):
            if pi[elems[s, i]] < 0:
                full = False
                break
        if not full:
            continue
        for i in range(L):
            seen[i] = False
        tot = 0
        for i in range(L):
            r = tot % L
            if seen[r]:
                return False
            seen[r] = True
            tot += pi[elems[s, i]]
        if tot % L:
            return False
    return True


@njit(cache=True)
def _open_generator_end(phi, gens):
    for s in gens:
        x = s
        while True:
            y = phi[x]
            if y < 0:
                return x
            if y == s:
                break
            x = y
    return -1


@njit(cache=True)
def search(mul, inv, gens, lengths, notker, n, k, img):
    """All image tables reachable from the seed ``pi(k) = 1, phi(k) = img``."""
    N = mul.shape[0]
    depth_max = 2 * N + 4
    PHI = np.full((depth_max, N), -1, np.int64)
    PRE = np.full((depth_max, N), -1, np.int64)
    PI = np.full((depth_max, N), -1, np.int64)
    kind = np.zeros(depth_max, np.int64)
    target = np.zeros(depth_max, np.int64)
    cand = np.zeros((depth_max, N + n + 1), np.int64)
    ncand = np.zeros(depth_max, np.int64)
    ci = np.zeros(depth_max, np.int64)
    work = np.zeros((7, N + n + 1), np.int64)
    live = np.zeros(n + 1, np.int64)
    out = []
    nodes = 0

    PHI[0, 0] = 0
    PRE[0, 0] = 0
    PI[0, 0] = 1 % n
    PI[0, k] = 1
    if not _assign(PHI[0], PRE[0], lengths, k, img):
        return out, nodes
    d = 0
    fresh = True
    while d >= 0:
        if fresh:
            nodes += 1
            fresh = False
            phi = PHI[d]
            pre = PRE[d]
            pi = PI[d]
            best = _propagate(phi, pre, pi, mul, inv, lengths, notker, n, live, work)
            ncand[d] = 0
            ci[d] = 0
            if best != FAIL:
                end = _open_generator_end(phi, gens)
                if end < 0 and best < 0:
                    for x in range(N):
                        if phi[x] < 0:
                            end = x
                            break
                    if end < 0:
                        out.append(phi.copy())
                if end >= 0:
                    kind[d] = 0
                    target[d] = end
                    c = 0
                    for y in range(1, N):
                        if pre[y] < 0 and lengths[y] == lengths[end]:
                            cand[d, c] = y
                            c += 1
                    ncand[d] = c
                elif best >= 0:
                    kind[d] = 1
                    target[d] = best
                    c = 0
                    for jj in range(1, n):
                        if live[jj]:
                            cand[d, c] = jj
                            c += 1
                    ncand[d] = c
        # advance to the next viable child of depth d, or backtrack
        while d >= 0:
            if ci[d] >= ncand[d]:
                d -= 1
                continue
            v = cand[d, ci[d]]
            ci[d] += 1
            PHI[d + 1] = PHI[d]
            PRE[d + 1] = PRE[d]
            PI[d + 1] = PI[d]
            if kind[d] == 0:
                ok = _assign(PHI[d + 1], PRE[d + 1], lengths, target[d], v)
            else:
                ok = _set_pi(PI[d + 1], notker, target[d], v)
            if ok:
                d += 1
                fresh = True
                break
        if not fresh:
            break
    return out, nodes
