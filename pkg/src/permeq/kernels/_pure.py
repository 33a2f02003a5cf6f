"""Pure-Python kernels; reference implementations of the hot loops.

The compiled extension in ``_core.pyx`` mirrors this module function for
function. Conventions shared by both backends:

- permutations are image tuples over 1..n (as produced by
  ``itertools.permutations(range(1, n + 1))``), but graph successor
  arrays are 0-indexed;
- words arrive as lists of signed generator indices (1-based) already
  reversed into application order;
- all results are exact integers or (numerator, denominator) pairs.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

BACKEND_NAME = "pure"


def solution_indices(n, d, images, relators):
    """Indices (into ``images``) of all d-tuples on which every relator
    fixes every point, in lexicographic order."""
    inv = []
    for im in images:
        v = [0] * n
        for x, y in enumerate(im, start=1):
            v[y - 1] = x
        inv.append(tuple(v))
    out = []
    for combo in itertools.product(range(len(images)), repeat=d):
        ok = True
        for rel in relators:
            for x in range(1, n + 1):
                y = x
                for code in rel:
                    if code > 0:
                        y = images[combo[code - 1]][y - 1]
                    else:
                        y = inv[combo[-code - 1]][y - 1]
                if y != x:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(combo)
    return out


def min_distances(n, d, images, sol_indices):
    """For every tuple in lexicographic order, the least total number of
    disagreement points against the given solution tuples."""
    m = len(images)
    diff = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            c = sum(1 for a, b in zip(images[i], images[j]) if a != b)
            diff[i][j] = c
            diff[j][i] = c
    out = []
    for combo in itertools.product(range(m), repeat=d):
        best = None
        for sol in sol_indices:
            total = 0
            for a, b in zip(combo, sol):
                total += diff[a][b]
                if best is not None and total >= best:
                    break
            if best is None or total < best:
                best = total
                if best == 0:
                    break
        out.append(best)
    return out


def _preds(n, succs):
    preds = []
    for succ in succs:
        p = [0] * n
        for x, y in enumerate(succ):
            p[y] = x
        preds.append(p)
    return preds


def cheeger_scan(n, succs):
    """Exact Cheeger constant of the S-graph given by 0-indexed successor
    arrays: min over nonempty A with |A| <= n/2 of (labelled out-boundary
    of A) / |A|.

    Scans subsets not containing vertex 0 with Gray-code incremental
    boundary updates; the complement of each scanned set covers the
    subsets containing vertex 0, since boundary(A) = boundary([n] \\ A).
    """
    if n < 2:
        raise ValueError("cheeger needs n >= 2")
    preds = _preds(n, succs)
    member = [False] * n
    boundary = 0
    size = 0
    best_num, best_den = None, None
    for i in range(1, 1 << (n - 1)):
        v = 1 + ((i & -i).bit_length() - 1)
        if member[v]:
            for succ, pred in zip(succs, preds):
                u = succ[v]
                if u != v and not member[u]:
                    boundary -= 1
                w = pred[v]
                if w != v and member[w]:
                    boundary += 1
            member[v] = False
            size -= 1
        else:
            for succ, pred in zip(succs, preds):
                u = succ[v]
                if u != v and not member[u]:
                    boundary += 1
                w = pred[v]
                if w != v and member[w]:
                    boundary -= 1
            member[v] = True
            size += 1
        for candidate in (size, n - size):
            if 1 <= candidate and 2 * candidate <= n:
                if best_num is None or boundary * best_den < best_num * candidate:
                    best_num, best_den = boundary, candidate
    return best_num, best_den


def inclusion_count(n, succs, edges):
    """Number of relabelling permutations pi for which every listed edge
    (u, label, v) of the partial graph lands inside the relabelled graph;
    the edge condition is succ_label(pi(u)) == pi(v), all 0-indexed."""
    return inclusion_count_batch(n, succs, [edges])[0]


def inclusion_count_batch(n, succs, edge_lists):
    counts = [0] * len(edge_lists)
    for pi in itertools.permutations(range(n)):
        for h, edges in enumerate(edge_lists):
            ok = True
            for u, s, v in edges:
                if succs[s][pi[u]] != pi[v]:
                    ok = False
                    break
            if ok:
                counts[h] += 1
    return counts


def _component_key(size_hint, succ1, succ2, pred1, pred2, root):
    """Canonical bytes for the weakly-connected component of ``root``,
    via a deterministic traversal; equal keys imply isomorphic rooted
    components, so cached values keyed on this are sound."""
    num = {root: 0}
    order = [root]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        # per label: successor then predecessor (the compiled twin's order)
        for nb in (succ1[v], pred1[v], succ2[v], pred2[v]):
            if nb not in num:
                num[nb] = len(order)
                order.append(nb)
    size = len(order)
    csucc1 = [0] * size
    csucc2 = [0] * size
    for v, k in num.items():
        csucc1[k] = num[succ1[v]]
        csucc2[k] = num[succ2[v]]
    return bytes([size]) + bytes(csucc1) + bytes(csucc2), csucc1, csucc2


def diagonal_suite(n, conn_succs, prev_succs, alpha_memo):
    """Check the product-graph diagonal inequalities for every pair of a
    connected solution graph on [n] and a solution graph on [n-1].

    For each pair, with D the diagonal of the product graph and X_i its
    components: (a) each component holds at most half its vertices on the
    diagonal, (b) the labelled boundary of D is at least the sum of
    per-component Cheeger constants weighted by the diagonal share, and
    (c) the boundary is bounded by |S| * (differences against the vertex
    restriction of the bigger graph + 1).

    ``alpha_memo`` maps canonical component keys to (num, den) Cheeger
    values and is updated in place. Returns (pair count, violations).
    """
    if any(len(sg) != 2 for sg in conn_succs):
        raise ValueError("diagonal suite expects two labels")
    m = n - 1
    violations = []
    pairs = 0
    res_cache = []
    for sg in conn_succs:
        res = []
        for succ in sg:
            r = [succ[x] if succ[x] != m else succ[m] for x in range(m)]
            res.append(r)
        res_cache.append(res)

    for gi, sg in enumerate(conn_succs):
        res = res_cache[gi]
        for hi, sh in enumerate(prev_succs):
            pairs += 1
            # boundary of the diagonal: labels where the two actions differ
            boundary = 0
            for s in range(len(sg)):
                for x in range(m):
                    if sh[s][x] != sg[s][x]:
                        boundary += 1
            # (c) against the restriction
            diffs = 0
            for s in range(len(sg)):
                for x in range(m):
                    if res[s][x] != sh[s][x]:
                        diffs += 1
            if boundary > len(sg) * (diffs + 1):
                violations.append((gi, hi, "restriction-bound", boundary, diffs))
            # product graph on [m] x [n], vertex (x, y) -> x * n + y
            total = m * n
            psucc = []
            for s in range(len(sg)):
                row = [0] * total
                for x in range(m):
                    for y in range(n):
                        row[x * n + y] = sh[s][x] * n + sg[s][y]
                psucc.append(row)
            ppred = _preds(total, psucc)
            comp = [-1] * total
            sizes = []
            for v in range(total):
                if comp[v] >= 0:
                    continue
                cid = len(sizes)
                stack = [v]
                comp[v] = cid
                count = 0
                while stack:
                    u = stack.pop()
                    count += 1
                    for nb in (psucc[0][u], psucc[1][u], ppred[0][u], ppred[1][u]):
                        if comp[nb] < 0:
                            comp[nb] = cid
                            stack.append(nb)
                sizes.append(count)
            dcount = {}
            droot = {}
            for x in range(m):
                cid = comp[x * n + x]
                dcount[cid] = dcount.get(cid, 0) + 1
                droot.setdefault(cid, x * n + x)
            lhs = Fraction(0)
            for cid, dc in dcount.items():
                if 2 * dc > sizes[cid]:
                    violations.append((gi, hi, "half-diagonal", dc, sizes[cid]))
                if sizes[cid] < 2:
                    continue
                key, csucc1, csucc2 = _component_key(
                    sizes[cid], psucc[0], psucc[1], ppred[0], ppred[1], droot[cid]
                )
                alpha = alpha_memo.get(key)
                if alpha is None:
                    alpha = cheeger_scan(len(csucc1), [csucc1, csucc2])
                    alpha_memo[key] = alpha
                lhs += Fraction(alpha[0] * dc, alpha[1])
            if lhs > boundary:
                violations.append((gi, hi, "cheeger-bound", lhs, boundary))
    return pairs, violations
