"""Acceptance suite: one test per criterion, exact tolerances, one
printed pass/fail line each. Run with ``pytest tests/test_acceptance.py -v -s``.
"""

import itertools
import math
from fractions import Fraction

from permeq.localstats import local_distribution, tv_distance
from permeq.perms import (
    PermTuple,
    Permutation,
    all_perm_images,
    evaluate,
    flexible_distance,
    hamming,
    local_defect,
    tuple_distance,
)
from permeq.presets import bs, comm
from permeq.rng import generator
from permeq.suites import (
    census_suite,
    diagonal_product_suite,
    inclusion_suite,
    lsm_fixed_n_suite,
    sas_defect_suite,
    transfer_suite,
)
from permeq.testers import (
    OracleTuple,
    lsm,
    sas,
    sas_reject_probability_exact,
    solution_distribution_set,
)
from permeq.words import ball, to_inverseless, word

from conftest import random_permutation, random_tuple


def report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"criterion {num:02d} {name}: {status}{suffix}")
    assert ok, f"criterion {num} {name} failed: {detail}"


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_criterion_01_word_evaluation_ground_truth():
    t = PermTuple((cyc(3, (1, 2, 3)), cyc(3, (1, 2))))
    got = evaluate(word(1, 2, -1, -2), t)
    report(1, "word evaluation", got == cyc(3, (1, 3, 2)), f"value {got.images}")


def test_criterion_02_sas_defect_identity():
    failures = sas_defect_suite(n_max=5, random_trials=10_000, seed=20)
    # also pin the k-composition form on a sample
    rng = generator(202)
    for _ in range(100):
        t = random_tuple(rng, 4, 2)
        p1 = sas_reject_probability_exact(t, comm(2), 1)
        if sas_reject_probability_exact(t, comm(2), 3) != 1 - (1 - p1) ** 3:
            failures.append("k-composition mismatch")
    report(2, "per-point rejection identity", not failures, f"{len(failures)} failures")


def test_criterion_03_query_accounting():
    E = comm(2)
    rng = generator(303)
    bad = 0
    for run in range(1000):
        k = int(rng.integers(1, 12))
        t = random_tuple(rng, int(rng.integers(2, 7)), 2)
        if sas(t, E, k, seed=run).queries_used != 4 * k:
            bad += 1
    P = ball(2, 2).union(E.relators())
    budget = P.total_size()
    ctx = solution_distribution_set(E, 4, P)
    for run in range(1000):
        k = int(rng.integers(1, 6))
        t = random_tuple(rng, 4, 2)
        if lsm(t, ctx, k, Fraction(1, 2), seed=run).queries_used > k * budget:
            bad += 1
    report(3, "query accounting", bad == 0, f"{bad} bad runs of 2000")


def test_criterion_04_inclusion_probability_lemma():
    failures = inclusion_suite(n_values=range(4, 8), graphs_per_n=50, seed=404)
    report(4, "inclusion probability", not failures, f"{len(failures)} mismatches")


def test_criterion_05_transcript_census():
    failures = census_suite(n_max=4)
    report(5, "transcript census", not failures, f"{len(failures)} violations")


def test_criterion_06_product_graph_diagonal():
    failures = diagonal_product_suite(n_max=6)
    report(6, "product-graph diagonal", not failures, f"{len(failures)} violations")


def test_criterion_07_lsm_fixed_n():
    failures, summary = lsm_fixed_n_suite(
        n_values=(3, 4, 5),
        eps=Fraction(2, 3),
        trials=2000,
        tuples_per_side=20,
        seed=707,
    )
    detail = "; ".join(
        f"n={n} sep={sep} k={k} |SOL|={ns} |far|={nf}" for n, sep, k, ns, nf in summary
    )
    positive = all(sep > 0 for _, sep, _, _, _ in summary) and len(summary) == 3
    report(7, "matcher soundness/completeness", not failures and positive, detail)


def test_criterion_08_transfer_suite():
    failures = transfer_suite(n_max=4, random_trials=1000, seed=808)
    report(8, "presentation transfer", not failures, f"{len(failures)} violations")


def test_criterion_09_presets_golden():
    from pathlib import Path

    from permeq.dsl import parse_system, render
    from permeq.presets import abels, preset, sl
    from permeq.words import concat, invert

    golden_dir = Path(__file__).parent / "golden"
    cases = {
        "comm2.eq": "comm:2",
        "comm3.eq": "comm:3",
        "bs_2_3.eq": "bs:2,3",
        "surface_2.eq": "surface:2",
        "heisenberg.eq": "heisenberg",
        "sl_3.eq": "sl:3",
        "abels_2.eq": "abels:2",
        "abels_3.eq": "abels:3",
    }
    problems = []
    for fname, spec in cases.items():
        system = preset(spec)
        golden = (golden_dir / fname).read_text()
        if render(system) != golden:
            problems.append(f"{spec} render drifted from {fname}")
        if parse_system(golden) != system:
            problems.append(f"{spec} does not round-trip through {fname}")
    core = concat(concat(word(1), invert(word(3))), word(1))
    if core**4 not in sl(3).relators():
        problems.append("sl:3 lacks the fourth-power relator")
    if abels(2).r != 15:
        problems.append("abels equation list changed size")
    report(9, "presets fidelity", not problems, "; ".join(problems) or "8 golden files")


def test_criterion_10_inverseless_model():
    E = comm(2)
    E4 = to_inverseless(E)
    problems = []
    for n in (1, 2, 3, 4):
        from permeq.perms import enumerate_solutions

        got = {
            tuple(p.images for p in s.perms) for s in enumerate_solutions(E4, n)
        }
        expected = set()
        for s in enumerate_solutions(E, n):
            s1, s2 = s.perms
            expected.add(
                (s1.images, s2.images, s1.inverse().images, s2.inverse().images)
            )
        if got != expected:
            problems.append(f"solution sets differ at n={n}")
    rng = generator(1010)
    for run in range(200):
        t = random_tuple(rng, 4, 4)
        o = OracleTuple(t)
        sas(o, E4, 8, seed=run)
        if o.inverse_queries:
            problems.append("inverse query issued")
            break
    report(10, "inverseless model", not problems, "; ".join(problems) or "n <= 4 exact")


def test_criterion_11_metric_and_distribution_properties():
    rng = generator(1111)
    problems = 0

    # permutation metric axioms
    for _ in range(10_000):
        n = int(rng.integers(2, 7))
        a, b, c = (random_permutation(rng, n) for _ in range(3))
        if hamming(a, b) != hamming(b, a):
            problems += 1
        if (hamming(a, b) == 0) != (a == b):
            problems += 1
        if hamming(a, c) > hamming(a, b) + hamming(b, c):
            problems += 1

    # summed tuple metric
    for _ in range(10_000):
        n = int(rng.integers(2, 6))
        s, t, u = (random_tuple(rng, n, 2) for _ in range(3))
        if tuple_distance(s, t) != tuple_distance(t, s):
            problems += 1
        if tuple_distance(s, u) > tuple_distance(s, t) + tuple_distance(t, u):
            problems += 1

    # cross-degree metric
    for _ in range(10_000):
        degs = [int(rng.integers(1, 7)) for _ in range(3)]
        a, b, c = (random_permutation(rng, m) for m in degs)
        if flexible_distance(a, b) != flexible_distance(b, a):
            problems += 1
        if flexible_distance(a, c) > flexible_distance(a, b) + flexible_distance(b, c):
            problems += 1
        if degs[0] == degs[1] and flexible_distance(a, b) != hamming(a, b):
            problems += 1

    # local distributions: normalization and 1/n granularity
    P = ball(2, 1)
    pool = []
    for _ in range(400):
        n = int(rng.integers(2, 7))
        t = random_tuple(rng, n, 2)
        dist = local_distribution(t, P)
        pool.append((n, dist))
    for _ in range(10_000):
        n, dist = pool[int(rng.integers(0, len(pool)))]
        if sum(dist.masses.values()) != 1:
            problems += 1
        if any((mass * n).denominator != 1 for mass in dist.masses.values()):
            problems += 1

    # total variation axioms over a shared word set
    big = ball(2, 2)
    sub = ball(2, 1)
    big_pool = []
    for _ in range(300):
        n = int(rng.integers(2, 7))
        big_pool.append(local_distribution(random_tuple(rng, n, 2), big))
    for _ in range(10_000):
        i, j, k = (int(x) for x in rng.integers(0, len(big_pool), 3))
        a, b, c = big_pool[i], big_pool[j], big_pool[k]
        if tv_distance(a, b) != tv_distance(b, a):
            problems += 1
        if not 0 <= tv_distance(a, b) <= 1:
            problems += 1
        if tv_distance(a, c) > tv_distance(a, b) + tv_distance(b, c):
            problems += 1

    # monotonicity under restriction of the word set
    for _ in range(10_000):
        i, j = (int(x) for x in rng.integers(0, len(big_pool), 2))
        a, b = big_pool[i], big_pool[j]
        if tv_distance(a.marginal(sub), b.marginal(sub)) > tv_distance(a, b):
            problems += 1

    report(11, "metric/distribution properties", problems == 0, f"{problems} failures")
