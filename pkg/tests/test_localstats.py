from fractions import Fraction

import pytest

from permeq.errors import ValidationError
from permeq.localstats import (
    LocalDistribution,
    dedup_distributions,
    distribution_from_counts,
    local_distribution,
    point_mass,
    stab_fragment,
    tv_distance,
)
from permeq.perms import PermTuple, Permutation, enumerate_solutions
from permeq.presets import comm
from permeq.rng import generator
from permeq.words import WordSet, ball, word

from conftest import random_tuple


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_stab_fragment_identity_tuple():
    P = ball(2, 1)
    t = PermTuple.identity(3, 2)
    assert stab_fragment(t, 2, P) == (1 << len(P)) - 1


def test_stab_fragment_example():
    # at ((1 2 3), (1 2)) and the point 3: X moves it, Y fixes it, the
    # commutator sends it to 2
    t = PermTuple((cyc(3, (1, 2, 3)), cyc(3, (1, 2))))
    P = WordSet([word(1), word(2), word(1, 2, -1, -2)])
    mask = stab_fragment(t, 3, P)
    assert P.decode(mask) == (word(2),)


def test_empty_word_always_in_fragment():
    rng = generator(21)
    P = ball(2, 1)
    for _ in range(20):
        t = random_tuple(rng, 5, 2)
        for x in range(1, 6):
            assert stab_fragment(t, x, P) & 1


def test_local_distribution_solution_point_mass():
    E = comm(2)
    P = E.relators()
    for s in enumerate_solutions(E, 3):
        dist = local_distribution(s, P)
        assert dist.masses == {P.encode(P.words): Fraction(1)}


def test_local_distribution_example():
    t = PermTuple((cyc(3, (1, 2, 3)), cyc(3, (1, 2))))
    P = WordSet([word(2)])
    dist = local_distribution(t, P)
    assert dist.masses == {0: Fraction(2, 3), 1: Fraction(1, 3)}


def test_local_distribution_empty_word_set():
    t = PermTuple((cyc(3, (1, 2)),))
    dist = local_distribution(t, WordSet())
    assert dist.masses == {0: Fraction(1)}


def test_local_distribution_masses_are_multiples_of_one_over_n():
    rng = generator(22)
    P = ball(2, 2)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        t = random_tuple(rng, n, 2)
        dist = local_distribution(t, P)
        assert sum(dist.masses.values()) == 1
        for mass in dist.masses.values():
            assert (mass * n).denominator == 1


def test_distribution_validation():
    P = ball(2, 1)
    with pytest.raises(ValidationError):
        LocalDistribution(P, {0: Fraction(1, 2)})
    with pytest.raises(ValidationError):
        LocalDistribution(P, {1 << len(P): Fraction(1)})
    with pytest.raises(ValidationError):
        LocalDistribution(P, {0: Fraction(-1), 1: Fraction(2)})


def test_tv_examples():
    P = ball(2, 1)
    a = point_mass(P, 0)
    b = point_mass(P, 3)
    assert tv_distance(a, a) == 0
    assert tv_distance(a, b) == 1
    c = LocalDistribution(P, {0: Fraction(1, 2), 1: Fraction(1, 2)})
    assert tv_distance(c, a) == Fraction(1, 2)


def test_tv_mismatched_word_sets():
    with pytest.raises(ValidationError):
        tv_distance(point_mass(ball(2, 1), 0), point_mass(ball(2, 0), 0))


def test_tv_metric_axioms_random():
    rng = generator(23)
    P = ball(2, 1)
    dists = []
    for _ in range(30):
        t = random_tuple(rng, int(rng.integers(2, 7)), 2)
        dists.append(local_distribution(t, P))
    for i in range(0, 27, 3):
        a, b, c = dists[i], dists[i + 1], dists[i + 2]
        assert tv_distance(a, b) == tv_distance(b, a)
        assert 0 <= tv_distance(a, b) <= 1
        assert (tv_distance(a, b) == 0) == (a.masses == b.masses)
        assert tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c)


def test_tv_monotone_under_restriction():
    rng = generator(24)
    P = ball(2, 2)
    sub = ball(2, 1)
    for _ in range(40):
        n = int(rng.integers(2, 7))
        a = local_distribution(random_tuple(rng, n, 2), P)
        b = local_distribution(random_tuple(rng, n, 2), P)
        assert tv_distance(a.marginal(sub), b.marginal(sub)) <= tv_distance(a, b)


def test_marginal_consistency():
    rng = generator(25)
    P = ball(2, 2)
    sub = ball(2, 1)
    t = random_tuple(rng, 5, 2)
    direct = local_distribution(t, sub)
    via_marginal = local_distribution(t, P).marginal(sub)
    assert direct == via_marginal


def test_marginal_requires_subset():
    P = ball(2, 1)
    other = WordSet([word(1, 1)])
    dist = point_mass(P, 0)
    with pytest.raises(ValidationError):
        dist.marginal(other)


def test_distribution_from_counts():
    P = ball(2, 0)
    dist = distribution_from_counts(P, {0: 3, 1: 1}, 4)
    assert dist.masses == {0: Fraction(3, 4), 1: Fraction(1, 4)}


def test_dedup():
    P = ball(2, 0)
    a = point_mass(P, 1)
    b = point_mass(P, 1)
    c = point_mass(P, 0)
    assert dedup_distributions([a, b, c]) == (a, c)
