# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels; mirrors ``_pure`` function for function."""

from fractions import Fraction

from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil

BACKEND_NAME = "cython"


def solution_indices(int n, int d, images, relators):
    cdef int m = len(images)
    cdef int i, j, x, y, code, ok, r, k
    cdef int nrel = len(relators)
    cdef int total_len = 0
    cdef int* imgs = <int*> malloc(m * n * sizeof(int))
    cdef int* invs = <int*> malloc(m * n * sizeof(int))
    cdef int* rel_data
    cdef int* rel_off = <int*> malloc((nrel + 1) * sizeof(int))
    cdef int* combo = <int*> malloc(d * sizeof(int))
    for rel in relators:
        total_len += len(rel)
    rel_data = <int*> malloc(max(total_len, 1) * sizeof(int))
    if not imgs or not invs or not rel_data or not rel_off or not combo:
        raise MemoryError()
    out = []
    try:
        for i in range(m):
            im = images[i]
            for x in range(n):
                imgs[i * n + x] = im[x] - 1
            for x in range(n):
                invs[i * n + imgs[i * n + x]] = x
        rel_off[0] = 0
        j = 0
        for i in range(nrel):
            for code in relators[i]:
                rel_data[j] = code
                j += 1
            rel_off[i + 1] = j
        for i in range(d):
            combo[i] = 0
        while True:
            ok = 1
            for r in range(nrel):
                for x in range(n):
                    y = x
                    for k in range(rel_off[r], rel_off[r + 1]):
                        code = rel_data[k]
                        if code > 0:
                            y = imgs[combo[code - 1] * n + y]
                        else:
                            y = invs[combo[-code - 1] * n + y]
                    if y != x:
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                out.append(tuple([combo[i] for i in range(d)]))
            i = d - 1
            while i >= 0:
                combo[i] += 1
                if combo[i] < m:
                    break
                combo[i] = 0
                i -= 1
            if i < 0:
                break
        return out
    finally:
        free(imgs)
        free(invs)
        free(rel_data)
        free(rel_off)
        free(combo)


def min_distances(int n, int d, images, sol_indices):
    cdef int m = len(images)
    cdef int nsol = len(sol_indices)
    cdef int i, j, x, c, best, total, s
    cdef int* diff = <int*> malloc(m * m * sizeof(int))
    cdef int* sols = <int*> malloc(max(nsol * d, 1) * sizeof(int))
    cdef int* combo = <int*> malloc(d * sizeof(int))
    if not diff or not sols or not combo:
        raise MemoryError()
    out = []
    try:
        for i in range(m):
            diff[i * m + i] = 0
            im_i = images[i]
            for j in range(i + 1, m):
                im_j = images[j]
                c = 0
                for x in range(n):
                    if im_i[x] != im_j[x]:
                        c += 1
                diff[i * m + j] = c
                diff[j * m + i] = c
        for i in range(nsol):
            sol = sol_indices[i]
            for j in range(d):
                sols[i * d + j] = sol[j]
        for i in range(d):
            combo[i] = 0
        while True:
            best = -1
            for s in range(nsol):
                total = 0
                for j in range(d):
                    total += diff[combo[j] * m + sols[s * d + j]]
                    if best >= 0 and total >= best:
                        break
                if best < 0 or total < best:
                    best = total
                    if best == 0:
                        break
            out.append(best)
            i = d - 1
            while i >= 0:
                combo[i] += 1
                if combo[i] < m:
                    break
                combo[i] = 0
                i -= 1
            if i < 0:
                break
        return out
    finally:
        free(diff)
        free(sols)
        free(combo)


cdef void _cheeger2(int nn, int* succ1, int* succ2, int* pred1, int* pred2,
                    long long* best) nogil:
    """Two-label Gray-code scan; best[0]/best[1] receive the minimum."""
    cdef char member[64]
    cdef long long boundary = 0
    cdef long long bn = -1, bd = 1
    cdef int size = 0
    cdef int v, u, w, cand
    cdef unsigned long long i, limit
    memset(member, 0, 64)
    limit = (<unsigned long long> 1) << (nn - 1)
    i = 1
    while i < limit:
        v = 1 + __builtin_ctzll(i)
        if member[v]:
            u = succ1[v]
            if u != v and not member[u]:
                boundary -= 1
            w = pred1[v]
            if w != v and member[w]:
                boundary += 1
            u = succ2[v]
            if u != v and not member[u]:
                boundary -= 1
            w = pred2[v]
            if w != v and member[w]:
                boundary += 1
            member[v] = 0
            size -= 1
        else:
            u = succ1[v]
            if u != v and not member[u]:
                boundary += 1
            w = pred1[v]
            if w != v and member[w]:
                boundary -= 1
            u = succ2[v]
            if u != v and not member[u]:
                boundary += 1
            w = pred2[v]
            if w != v and member[w]:
                boundary -= 1
            member[v] = 1
            size += 1
        cand = size
        if cand >= 1 and 2 * cand <= nn:
            if bn < 0 or boundary * bd < bn * cand:
                bn = boundary
                bd = cand
        cand = nn - size
        if cand >= 1 and 2 * cand <= nn:
            if bn < 0 or boundary * bd < bn * cand:
                bn = boundary
                bd = cand
        i += 1
    best[0] = bn
    best[1] = bd


cdef void _cheeger_generic(int n, int d, int* sdata, int* pdata,
                           long long* best) nogil:
    cdef char member[64]
    cdef long long boundary = 0
    cdef long long bn = -1, bd = 1
    cdef int size = 0
    cdef int v, u, w, s, cand
    cdef unsigned long long i, limit
    memset(member, 0, 64)
    limit = (<unsigned long long> 1) << (n - 1)
    i = 1
    while i < limit:
        v = 1 + __builtin_ctzll(i)
        if member[v]:
            for s in range(d):
                u = sdata[s * n + v]
                if u != v and not member[u]:
                    boundary -= 1
                w = pdata[s * n + v]
                if w != v and member[w]:
                    boundary += 1
            member[v] = 0
            size -= 1
        else:
            for s in range(d):
                u = sdata[s * n + v]
                if u != v and not member[u]:
                    boundary += 1
                w = pdata[s * n + v]
                if w != v and member[w]:
                    boundary -= 1
            member[v] = 1
            size += 1
        cand = size
        if cand >= 1 and 2 * cand <= n:
            if bn < 0 or boundary * bd < bn * cand:
                bn = boundary
                bd = cand
        cand = n - size
        if cand >= 1 and 2 * cand <= n:
            if bn < 0 or boundary * bd < bn * cand:
                bn = boundary
                bd = cand
        i += 1
    best[0] = bn
    best[1] = bd


def cheeger_scan(int n, succs):
    """Exact Cheeger constant from 0-indexed successor arrays; see the
    pure twin for the algorithm notes."""
    cdef int d = len(succs)
    cdef int s, x
    cdef long long best[2]
    cdef int* sdata
    cdef int* pdata
    if n < 2:
        raise ValueError("cheeger needs n >= 2")
    if n > 62:
        raise ValueError("subset scan limited to n <= 62")
    sdata = <int*> malloc(2 * d * n * sizeof(int))
    if not sdata:
        raise MemoryError()
    pdata = sdata + d * n
    try:
        for s in range(d):
            row = succs[s]
            for x in range(n):
                sdata[s * n + x] = row[x]
            for x in range(n):
                pdata[s * n + sdata[s * n + x]] = x
        if d == 2:
            with nogil:
                _cheeger2(n, sdata, sdata + n, pdata, pdata + n, best)
        else:
            with nogil:
                _cheeger_generic(n, d, sdata, pdata, best)
        return int(best[0]), int(best[1])
    finally:
        free(sdata)


def inclusion_count(int n, succs, edges):
    return inclusion_count_batch(n, succs, [edges])[0]


def inclusion_count_batch(int n, succs, edge_lists):
    """Counts for many partial graphs against one graph, sharing the
    permutation sweep; edge condition is succ_label(pi(u)) == pi(v)."""
    cdef int d = len(succs)
    cdef int nh = len(edge_lists)
    cdef int total_e = 0
    cdef int s, x, i, j, k, tmp, lo, hi, h, ok
    cdef int* sdata = <int*> malloc(d * n * sizeof(int))
    cdef int* ed
    cdef int* off = <int*> malloc((nh + 1) * sizeof(int))
    cdef long long* counts = <long long*> malloc(max(nh, 1) * sizeof(long long))
    cdef int* pi = <int*> malloc(n * sizeof(int))
    for el in edge_lists:
        total_e += len(el)
    ed = <int*> malloc(max(3 * total_e, 1) * sizeof(int))
    if not sdata or not ed or not off or not counts or not pi:
        raise MemoryError()
    try:
        for s in range(d):
            row = succs[s]
            for x in range(n):
                sdata[s * n + x] = row[x]
        off[0] = 0
        j = 0
        for h in range(nh):
            for e in edge_lists[h]:
                ed[3 * j] = e[0]
                ed[3 * j + 1] = e[1]
                ed[3 * j + 2] = e[2]
                j += 1
            off[h + 1] = j
        for h in range(nh):
            counts[h] = 0
        for x in range(n):
            pi[x] = x
        with nogil:
            while True:
                for h in range(nh):
                    ok = 1
                    for i in range(off[h], off[h + 1]):
                        if sdata[ed[3 * i + 1] * n + pi[ed[3 * i]]] != pi[ed[3 * i + 2]]:
                            ok = 0
                            break
                    counts[h] += ok
                j = n - 2
                while j >= 0 and pi[j] >= pi[j + 1]:
                    j -= 1
                if j < 0:
                    break
                k = n - 1
                while pi[k] <= pi[j]:
                    k -= 1
                tmp = pi[j]; pi[j] = pi[k]; pi[k] = tmp
                lo = j + 1; hi = n - 1
                while lo < hi:
                    tmp = pi[lo]; pi[lo] = pi[hi]; pi[hi] = tmp
                    lo += 1; hi -= 1
        return [int(counts[h]) for h in range(nh)]
    finally:
        free(sdata)
        free(ed)
        free(off)
        free(counts)
        free(pi)


cdef long long _gcd(long long a, long long b) nogil:
    cdef long long t
    while b:
        t = a % b
        a = b
        b = t
    return a


def diagonal_suite(int n, conn_succs, prev_succs, dict alpha_memo):
    """Compiled twin of the pure diagonal suite; see there for the spec."""
    cdef int m = n - 1
    cdef int total = m * n
    cdef int ng = len(conn_succs)
    cdef int nh = len(prev_succs)
    cdef int d = 2
    cdef int gi, hi, s, x, y, v, u, cid, ncomp, top, boundary, diffs, dc, size
    cdef int head, tail, k, nb, nterms
    cdef long long lhs_num, lcm_den, g
    cdef long long pairs = 0
    cdef long long best[2]
    cdef int* gs
    cdef int* hs
    cdef int* res
    cdef int* psucc
    cdef int* ppred
    cdef int* comp
    cdef int* stack
    cdef int* sizes
    cdef int* dcount
    cdef int* droot
    cdef int* knum
    cdef int* korder
    cdef unsigned char* keybuf
    cdef int* csucc
    cdef int* cpred
    cdef long long* t_num
    cdef long long* t_den
    cdef long long* t_dc
    if total > 250:
        raise ValueError("diagonal suite limited to (n-1)*n <= 250 vertices")
    gs = <int*> malloc(max(ng * d * n, 1) * sizeof(int))
    hs = <int*> malloc(max(nh * d * m, 1) * sizeof(int))
    res = <int*> malloc(max(ng * d * m, 1) * sizeof(int))
    psucc = <int*> malloc(d * total * sizeof(int))
    ppred = <int*> malloc(d * total * sizeof(int))
    comp = <int*> malloc(total * sizeof(int))
    stack = <int*> malloc(total * sizeof(int))
    sizes = <int*> malloc(total * sizeof(int))
    dcount = <int*> malloc(total * sizeof(int))
    droot = <int*> malloc(total * sizeof(int))
    knum = <int*> malloc(total * sizeof(int))
    korder = <int*> malloc(total * sizeof(int))
    keybuf = <unsigned char*> malloc(2 * total + 1)
    csucc = <int*> malloc(2 * total * sizeof(int))
    cpred = <int*> malloc(2 * total * sizeof(int))
    t_num = <long long*> malloc(total * sizeof(long long))
    t_den = <long long*> malloc(total * sizeof(long long))
    t_dc = <long long*> malloc(total * sizeof(long long))
    if (not gs or not hs or not res or not psucc or not ppred or not comp or
            not stack or not sizes or not dcount or not droot or not knum or
            not korder or not keybuf or not csucc or not cpred or not t_num or
            not t_den or not t_dc):
        raise MemoryError()
    violations = []
    try:
        for gi in range(ng):
            pair = conn_succs[gi]
            for s in range(d):
                row = pair[s]
                for x in range(n):
                    gs[(gi * d + s) * n + x] = row[x]
        for hi in range(nh):
            pair = prev_succs[hi]
            for s in range(d):
                row = pair[s]
                for x in range(m):
                    hs[(hi * d + s) * m + x] = row[x]
        for gi in range(ng):
            for s in range(d):
                for x in range(m):
                    y = gs[(gi * d + s) * n + x]
                    if y == m:
                        y = gs[(gi * d + s) * n + m]
                    res[(gi * d + s) * m + x] = y
        for x in range(total):
            knum[x] = -1

        for gi in range(ng):
            for hi in range(nh):
                pairs += 1
                boundary = 0
                diffs = 0
                for s in range(d):
                    for x in range(m):
                        if hs[(hi * d + s) * m + x] != gs[(gi * d + s) * n + x]:
                            boundary += 1
                        if res[(gi * d + s) * m + x] != hs[(hi * d + s) * m + x]:
                            diffs += 1
                if boundary > d * (diffs + 1):
                    violations.append((gi, hi, "restriction-bound", boundary, diffs))
                for s in range(d):
                    for x in range(m):
                        for y in range(n):
                            psucc[s * total + x * n + y] = (
                                hs[(hi * d + s) * m + x] * n
                                + gs[(gi * d + s) * n + y]
                            )
                for s in range(d):
                    for v in range(total):
                        ppred[s * total + psucc[s * total + v]] = v
                for v in range(total):
                    comp[v] = -1
                ncomp = 0
                for v in range(total):
                    if comp[v] >= 0:
                        continue
                    comp[v] = ncomp
                    stack[0] = v
                    top = 1
                    size = 0
                    while top:
                        top -= 1
                        u = stack[top]
                        size += 1
                        for s in range(d):
                            nb = psucc[s * total + u]
                            if comp[nb] < 0:
                                comp[nb] = ncomp
                                stack[top] = nb
                                top += 1
                            nb = ppred[s * total + u]
                            if comp[nb] < 0:
                                comp[nb] = ncomp
                                stack[top] = nb
                                top += 1
                    sizes[ncomp] = size
                    ncomp += 1
                for cid in range(ncomp):
                    dcount[cid] = 0
                for x in range(m):
                    cid = comp[x * n + x]
                    if dcount[cid] == 0:
                        droot[cid] = x * n + x
                    dcount[cid] += 1
                nterms = 0
                for cid in range(ncomp):
                    dc = dcount[cid]
                    if dc == 0:
                        continue
                    if 2 * dc > sizes[cid]:
                        violations.append((gi, hi, "half-diagonal", dc, sizes[cid]))
                    if sizes[cid] < 2:
                        continue
                    knum[droot[cid]] = 0
                    korder[0] = droot[cid]
                    head = 0
                    tail = 1
                    while head < tail:
                        v = korder[head]
                        head += 1
                        for s in range(d):
                            nb = psucc[s * total + v]
                            if knum[nb] < 0:
                                knum[nb] = tail
                                korder[tail] = nb
                                tail += 1
                            nb = ppred[s * total + v]
                            if knum[nb] < 0:
                                knum[nb] = tail
                                korder[tail] = nb
                                tail += 1
                    size = tail
                    keybuf[0] = <unsigned char> size
                    for k in range(size):
                        v = korder[k]
                        csucc[knum[v]] = knum[psucc[0 * total + v]]
                        csucc[total + knum[v]] = knum[psucc[1 * total + v]]
                    for k in range(size):
                        keybuf[1 + k] = <unsigned char> csucc[k]
                        keybuf[1 + size + k] = <unsigned char> csucc[total + k]
                    key = (<char*> keybuf)[:2 * size + 1]
                    alpha = alpha_memo.get(key)
                    if alpha is None:
                        for k in range(size):
                            cpred[csucc[k]] = k
                            cpred[total + csucc[total + k]] = k
                        with nogil:
                            _cheeger2(size, csucc, csucc + total,
                                      cpred, cpred + total, best)
                        alpha = (int(best[0]), int(best[1]))
                        alpha_memo[key] = alpha
                    t_num[nterms] = alpha[0]
                    t_den[nterms] = alpha[1]
                    t_dc[nterms] = dc
                    nterms += 1
                    for k in range(size):
                        knum[korder[k]] = -1
                lcm_den = 1
                for k in range(nterms):
                    g = _gcd(lcm_den, t_den[k])
                    lcm_den = lcm_den // g * t_den[k]
                lhs_num = 0
                for k in range(nterms):
                    lhs_num += t_num[k] * t_dc[k] * (lcm_den // t_den[k])
                if lhs_num > boundary * lcm_den:
                    violations.append(
                        (gi, hi, "cheeger-bound",
                         Fraction(int(lhs_num), int(lcm_den)), boundary)
                    )
        return int(pairs), violations
    finally:
        free(gs); free(hs); free(res); free(psucc); free(ppred); free(comp)
        free(stack); free(sizes); free(dcount); free(droot); free(knum)
        free(korder); free(keybuf); free(csucc); free(cpred)
        free(t_num); free(t_den); free(t_dc)
