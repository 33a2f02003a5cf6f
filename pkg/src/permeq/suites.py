"""Exact verification suites shared by the CLI and the acceptance tests.

Every suite returns a list of failure descriptions (empty = pass), so
callers can print counterexample instances directly.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import kernels
from .errors import ValidationError
from .localstats import local_distribution
from .partial import PartialSGraph, path_invariants
from .perms import (
    PermTuple,
    Permutation,
    all_perm_images,
    evaluate,
    local_defect,
    tuple_by_rank,
)
from .presets import bs, comm
from .rng import generator
from .testers import (
    DeterministicMachine,
    LsmSampler,
    census_bound,
    distinguishability,
    empirical_rate,
    far_tuple_ranks,
    lsm_params,
    sas_reject_probability_exact,
    solution_distribution_set,
    transcript_census,
)
from .transfer import (
    check_lipschitz_bound,
    check_pseudo_inverse_bound,
    check_solution_transport,
    fixture_z2,
    pullback,
    validate_correction,
)
from .words import EquationSystem, ball


def _relator_codes(system: EquationSystem):
    return [
        [gen * sign for gen, sign in reversed(w.letters)]
        for w in system.relators()
    ]


def _succs_of_indices(images, idx_pair):
    return tuple([y - 1 for y in images[i]] for i in idx_pair)


def _is_connected_succs(n, succs):
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 0
    preds = []
    for succ in succs:
        p = [0] * n
        for x, y in enumerate(succ):
            p[y] = x
        preds.append(p)
    while stack:
        v = stack.pop()
        count += 1
        for arr in list(succs) + preds:
            u = arr[v]
            if not seen[u]:
                seen[u] = True
                stack.append(u)
    return count == n


def solution_graphs(system: EquationSystem, n: int):
    """All solutions at degree n as 0-indexed successor arrays, plus the
    sublist of connected ones."""
    images = all_perm_images(n)
    sols = kernels.solution_indices(n, system.d, images, _relator_codes(system))
    succs = [_succs_of_indices(images, pair) for pair in sols]
    connected = [s for s in succs if _is_connected_succs(n, s)]
    return succs, connected


# --- partial-graph grid ----------------------------------------------------


def partial_graph_classes(max_vertices: int = 4, max_edges: int = 3, labels: int = 2):
    """Connected partial graphs with 1..max_edges edges on at most
    max_vertices vertices, one representative per relabelling class."""
    pool = range(1, max_vertices + 1)
    all_edges = [
        (u, s, v) for u in pool for s in range(1, labels + 1) for v in pool
    ]
    reps = {}
    for count in range(1, max_edges + 1):
        for combo in itertools.combinations(all_edges, count):
            out_seen = set()
            in_seen = set()
            ok = True
            for u, s, v in combo:
                if (u, s) in out_seen or (v, s) in in_seen:
                    ok = False
                    break
                out_seen.add((u, s))
                in_seen.add((v, s))
            if not ok:
                continue
            h = PartialSGraph(combo)
            if not h.is_connected():
                continue
            canon = None
            for pi in itertools.permutations(pool):
                mapping = {x: pi[x - 1] for x in pool}
                key = tuple(sorted((mapping[u], s, mapping[v]) for u, s, v in combo))
                if canon is None or key < canon:
                    canon = key
            if canon not in reps:
                reps[canon] = h
    return list(reps.values())


def inclusion_suite(n_values, graphs_per_n: int, seed: int):
    """Formula-vs-oracle grid for the relabelling inclusion probability,
    including base-vertex independence."""
    classes = partial_graph_classes()
    # per class and base vertex: the difference word set and the mask of
    # the returning part, precomputed once
    plans = []
    word_pool: dict = {}
    for h in classes:
        per_y0 = []
        for y0 in sorted(h.vertices):
            _, bp, pstab = path_invariants(h, y0)
            indices = []
            for w in bp:
                if w not in word_pool:
                    word_pool[w] = len(word_pool)
                indices.append(word_pool[w])
            per_y0.append((y0, indices, bp.encode(pstab)))
        plans.append((h, per_y0))
    words = [w for w, _ in sorted(word_pool.items(), key=lambda kv: kv[1])]
    failures = []
    for n in n_values:
        fact_ratio = {
            v: Fraction(math.factorial(n - v), math.factorial(n - 1))
            for v in range(1, 5)
        }
        edge_lists = [
            [(u - 1, s - 1, v - 1) for u, s, v in h.edges] for h, _ in plans
        ]
        for g_idx in range(graphs_per_n):
            rng = generator(seed, n, g_idx)
            t = PermTuple(
                tuple(
                    Permutation([int(x) + 1 for x in rng.permutation(n)])
                    for _ in range(2)
                )
            )
            succs = [[y - 1 for y in p.images] for p in t.perms]
            counts = kernels.inclusion_count_batch(n, succs, edge_lists)
            word_images = [evaluate(w, t).images for w in words]
            for (h, per_y0), count in zip(plans, counts):
                oracle = Fraction(count, math.factorial(n))
                for y0, indices, pstab_mask in per_y0:
                    hits = 0
                    for x in range(1, n + 1):
                        mask = 0
                        for bit, wi in enumerate(indices):
                            if word_images[wi][x - 1] == x:
                                mask |= 1 << bit
                        if mask == pstab_mask:
                            hits += 1
                    formula = fact_ratio[len(h.vertices)] * Fraction(hits, n)
                    if formula != oracle:
                        failures.append(
                            f"inclusion n={n} graph#{g_idx} H={sorted(h.edges)} "
                            f"y0={y0}: formula {formula} != oracle {oracle}"
                        )
    return failures


# --- per-point sampler rejection identity ----------------------------------


def sas_defect_suite(n_max: int, random_trials: int, seed: int):
    """Exact k=1 rejection probability equals defect/r, exhaustively for
    small degrees and on random tuples one degree up."""
    failures = []
    systems = [("comm:2", comm(2)), ("bs:2,3", bs(2, 3))]
    for label, system in systems:
        for n in range(2, min(n_max, 4) + 1):
            images = all_perm_images(n)
            for im1 in images:
                for im2 in images:
                    t = PermTuple((Permutation(im1), Permutation(im2)))
                    expected = local_defect(t, system) / system.r
                    got = sas_reject_probability_exact(t, system, 1)
                    if got != expected:
                        failures.append(
                            f"sas-defect {label} n={n} t={im1},{im2}: {got} != {expected}"
                        )
        if n_max >= 5:
            rng = generator(seed, 5)
            for _ in range(random_trials):
                t = PermTuple(
                    tuple(
                        Permutation([int(x) + 1 for x in rng.permutation(5)])
                        for _ in range(2)
                    )
                )
                expected = local_defect(t, system) / system.r
                got = sas_reject_probability_exact(t, system, 1)
                if got != expected:
                    failures.append(f"sas-defect {label} n=5 random: {got} != {expected}")
    return failures


# --- product-graph diagonal suite ------------------------------------------


EXPECTED_CONNECTED_COUNTS = {3: 8, 4: 42, 5: 144, 6: 1440}


def diagonal_product_suite(n_max: int, alpha_memo: dict | None = None):
    """The diagonal inequalities over every (connected solution at n,
    solution at n-1) pair of the two-letter commutation system."""
    if alpha_memo is None:
        alpha_memo = {}
    system = comm(2)
    failures = []
    prev_all = None
    for n in range(3, n_max + 1):
        if prev_all is None:
            prev_all, _ = solution_graphs(system, n - 1)
        cur_all, cur_conn = solution_graphs(system, n)
        expected = EXPECTED_CONNECTED_COUNTS.get(n)
        if expected is not None and len(cur_conn) != expected:
            failures.append(
                f"diagonal n={n}: expected {expected} connected solutions, found {len(cur_conn)}"
            )
        pairs, violations = kernels.diagonal_suite(n, cur_conn, prev_all, alpha_memo)
        if pairs != len(cur_conn) * len(prev_all):
            failures.append(f"diagonal n={n}: pair count {pairs} wrong")
        for v in violations:
            failures.append(f"diagonal n={n} pair=({v[0]},{v[1]}) {v[2]}: {v[3:]}")
        prev_all = cur_all
    return failures


# --- transcript census -------------------------------------------------------


def _machine_probe(n, o):
    return o.query(1, 1, 1) == 1


def _machine_follow(n, o):
    a = o.query(1, 1, 1)
    b = o.query(2, 1, a)
    return b <= 2


def _machine_adaptive(n, o):
    a = o.query(1, 1, 1)
    if a % 2 == 1:
        b = o.query(1, 1, a)
    else:
        b = o.query(2, -1, a)
    c = o.query(2, 1, b)
    return c == 1


def _machine_inverse_probe(n, o):
    a = o.query(1, -1, 1)
    b = o.query(1, -1, a)
    return b != 1


def census_machines():
    return [
        DeterministicMachine("probe", 1, _machine_probe),
        DeterministicMachine("follow", 2, _machine_follow),
        DeterministicMachine("inverse-probe", 2, _machine_inverse_probe),
        DeterministicMachine("adaptive", 3, _machine_adaptive),
    ]


def census_suite(n_max: int):
    """Distinct-transcript counts against the closed-form ceiling, and
    one verdict per transcript."""
    failures = []
    for machine in census_machines():
        for n in range(2, n_max + 1):
            buckets, verdicts = transcript_census(machine, n, 2)
            for r, transcripts in buckets.items():
                bound = census_bound(machine.q, r, n)
                if len(transcripts) > bound:
                    failures.append(
                        f"census {machine.name} n={n} r={r}: {len(transcripts)} > {bound}"
                    )
            for h, results in verdicts.items():
                if len(results) != 1:
                    failures.append(
                        f"census {machine.name} n={n}: transcript {sorted(h.edges)} "
                        f"has mixed verdicts"
                    )
    return failures


# --- presentation-transfer sweeps -------------------------------------------


def transfer_pair_sweep(fx: dict, n_max: int, random_trials: int, seed: int):
    """Bound checks for a presentation pair: round-trip identity and
    transport on all small solutions, distance bounds on random tuples."""
    failures = []
    e1 = fx["source_system"]
    e2 = fx["target_system"]
    lam1 = fx["lambda1"]
    lam2 = fx["lambda2"]
    validate_correction(lam1, lam2, fx["correction_source"], e1)
    if fx.get("correction_target") is not None:
        validate_correction(lam2, lam1, fx["correction_target"], e2)
    from .perms import enumerate_solutions, tuple_distance

    for n in range(1, n_max + 1):
        if not check_solution_transport(lam2, e1, e2, n):
            failures.append(f"transfer transport source->target fails at n={n}")
        if not check_solution_transport(lam1, e2, e1, n):
            failures.append(f"transfer transport target->source fails at n={n}")
        for f in enumerate_solutions(e1, n):
            if pullback(lam1, pullback(lam2, f)) != f:
                failures.append(f"transfer round trip moves a solution at n={n}")
                break
        for h in enumerate_solutions(e2, n):
            if pullback(lam2, pullback(lam1, h)) != h:
                failures.append(f"transfer reverse round trip moves a solution at n={n}")
                break
    # exhaustive pseudo-inverse bound, both correction directions
    for n in range(1, n_max + 1):
        for rank in range(math.factorial(n) ** e1.d):
            t = tuple_by_rank(n, e1.d, rank)
            lhs, rhs, ok = check_pseudo_inverse_bound(
                t, lam1, lam2, fx["correction_source"], e1, validate=False
            )
            if not ok:
                failures.append(
                    f"transfer pseudo-inverse fails at n={n} rank={rank}: {lhs} > {rhs}"
                )
    if fx.get("correction_target") is not None:
        for n in range(1, n_max + 1):
            for rank in range(math.factorial(n) ** e2.d):
                t = tuple_by_rank(n, e2.d, rank)
                lhs, rhs, ok = check_pseudo_inverse_bound(
                    t, lam2, lam1, fx["correction_target"], e2, validate=False
                )
                if not ok:
                    failures.append(
                        f"transfer reverse pseudo-inverse fails at n={n} rank={rank}: "
                        f"{lhs} > {rhs}"
                    )
    # random sweeps, both bounds
    rng = generator(seed, 8)
    for i in range(random_trials):
        n = int(rng.integers(2, 9))
        t = PermTuple(
            tuple(
                Permutation([int(x) + 1 for x in rng.permutation(n)])
                for _ in range(e1.d)
            )
        )
        lhs, rhs, ok = check_pseudo_inverse_bound(
            t, lam1, lam2, fx["correction_source"], e1, validate=False
        )
        if not ok:
            failures.append(f"transfer pseudo-inverse random trial {i}: {lhs} > {rhs}")
        h1 = PermTuple(
            tuple(
                Permutation([int(x) + 1 for x in rng.permutation(n)])
                for _ in range(e2.d)
            )
        )
        h2 = PermTuple(
            tuple(
                Permutation([int(x) + 1 for x in rng.permutation(n)])
                for _ in range(e2.d)
            )
        )
        lhs, rhs, ok = check_lipschitz_bound(h1, h2, lam1)
        if not ok:
            failures.append(f"transfer lipschitz random trial {i}: {lhs} > {rhs}")
    return failures


def transfer_suite(n_max: int, random_trials: int, seed: int):
    """The shipped rank-2 abelian pair, both correction directions."""
    fx = fixture_z2()
    failures = transfer_pair_sweep(fx, n_max, random_trials, seed)
    # the target-side correction gives a nontrivial bound; sweep it too
    e2 = fx["target_system"]
    rng = generator(seed, 88)
    for i in range(random_trials):
        n = int(rng.integers(2, 9))
        t = PermTuple(
            tuple(
                Permutation([int(x) + 1 for x in rng.permutation(n)])
                for _ in range(e2.d)
            )
        )
        lhs, rhs, ok = check_pseudo_inverse_bound(
            t, fx["lambda2"], fx["lambda1"], fx["correction_target"], e2, validate=False
        )
        if not ok:
            failures.append(f"transfer target-side pseudo-inverse trial {i}: {lhs} > {rhs}")
    return failures


# --- fixed-degree matcher soundness/completeness -----------------------------


def lsm_fixed_n_suite(
    n_values,
    eps: Fraction,
    trials: int,
    tuples_per_side: int,
    seed: int,
    required_rate: float = 0.99,
):
    """At each degree: compute the exact separation, parameterize the
    matcher from it, and check empirically that solutions are accepted
    and far tuples rejected at the required rate (exact binomial CI must
    not exclude it from below).

    Returns (failures, summary rows)."""
    system = comm(2)
    P = ball(2, 2).union(system.relators())
    failures = []
    summary = []
    for n in n_values:
        delta_star = distinguishability(system, n, P, eps)
        if delta_star is None or delta_star <= 0:
            failures.append(f"lsm n={n}: no positive separation (got {delta_star})")
            continue
        k = lsm_params(P, delta_star)
        delta = delta_star / 2
        ctx = solution_distribution_set(system, n, P)
        from .perms import enumerate_solutions

        sols = list(enumerate_solutions(system, n))
        far_ranks = far_tuple_ranks(system, n, eps)
        rng = generator(seed, n)
        sol_picks = [sols[int(i)] for i in rng.integers(0, len(sols), tuples_per_side)]
        far_picks = [
            tuple_by_rank(n, 2, far_ranks[int(i)])
            for i in rng.integers(0, len(far_ranks), tuples_per_side)
        ]
        summary.append((n, delta_star, k, len(sols), len(far_ranks)))
        for idx, t in enumerate(sol_picks):
            sampler = LsmSampler(t, ctx, k, delta)
            rate, (lo, hi) = empirical_rate(sampler.trial, trials, seed + 1000 * n + idx)
            if hi < required_rate:
                failures.append(
                    f"lsm n={n} solution#{idx}: acceptance {rate} CI ({lo:.5f},{hi:.5f}) "
                    f"excludes {required_rate}"
                )
        for idx, t in enumerate(far_picks):
            sampler = LsmSampler(t, ctx, k, delta)
            rate, (lo, hi) = empirical_rate(
                sampler.trial, trials, seed + 2000 * n + idx
            )
            # rejection rate CI is (1 - hi, 1 - lo)
            if 1 - lo < required_rate:
                failures.append(
                    f"lsm n={n} far#{idx}: rejection {1 - rate} CI "
                    f"({1 - hi:.5f},{1 - lo:.5f}) excludes {required_rate}"
                )
    return failures, summary
