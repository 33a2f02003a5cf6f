#!/usr/bin/env python3
"""Timing comparison of the compiled kernels against the pure-Python
fallback. Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import time

from permeq.graphs import from_tuple
from permeq.kernels import backends
from permeq.perms import PermTuple, Permutation, all_perm_images
from permeq.presets import comm
from permeq.rng import generator
from permeq.suites import _relator_codes, solution_graphs


def bench(label, fn, repeat=3):
    best = None
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, value


def random_succs(n, seed, d=2):
    rng = generator(seed)
    return [[int(x) for x in rng.permutation(n)] for _ in range(d)]


def main():
    mods = backends()
    if len(mods) < 2:
        print("compiled backend unavailable; building the extension enables it")
    cases = []

    images5 = all_perm_images(5)
    rel = _relator_codes(comm(2))
    cases.append(
        ("solution_indices n=5 comm:2", lambda m: lambda: m.solution_indices(5, 2, images5, rel))
    )

    images4 = all_perm_images(4)
    sols4 = mods["pure"].solution_indices(4, 2, images4, rel)
    cases.append(
        ("min_distances n=4", lambda m: lambda: m.min_distances(4, 2, images4, sols4))
    )

    succs16 = random_succs(16, seed=5)
    cases.append(("cheeger_scan n=16", lambda m: lambda: m.cheeger_scan(16, succs16)))

    succs20 = random_succs(20, seed=6)
    cases.append(("cheeger_scan n=20", lambda m: lambda: m.cheeger_scan(20, succs20)))

    succs7 = random_succs(7, seed=7)
    edges = [(0, 0, 1), (1, 1, 2), (2, 0, 3)]
    cases.append(
        ("inclusion_count n=7", lambda m: lambda: m.inclusion_count(7, succs7, edges))
    )

    prev4, _ = solution_graphs(comm(2), 3)
    _, conn4 = solution_graphs(comm(2), 4)
    cases.append(
        (
            "diagonal_suite n=4",
            lambda m: lambda: m.diagonal_suite(4, conn4, prev4, {}),
        )
    )

    header = f"{'kernel':30s}" + "".join(f"{name:>12s}" for name in mods) + f"{'speedup':>10s}"
    print(header)
    print("-" * len(header))
    for label, make in cases:
        times = {}
        values = {}
        for name, mod in mods.items():
            times[name], values[name] = bench(label, make(mod))
        firsts = list(values.values())
        assert all(v == firsts[0] for v in firsts), f"backends disagree on {label}"
        row = f"{label:30s}" + "".join(f"{times[name]:>11.4f}s" for name in mods)
        if "pure" in times and "cython" in times:
            row += f"{times['pure'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
