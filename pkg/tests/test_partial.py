from fractions import Fraction

import pytest

from permeq.errors import InfeasibleError, ValidationError
from permeq.graphs import from_tuple, relabel
from permeq.partial import (
    PartialSGraph,
    includes,
    inclusion_probability,
    inclusion_probability_exact,
    inclusion_probability_exact_reference,
    inclusion_probability_general,
    path_invariants,
    walk_partial,
)
from permeq.perms import PermTuple, Permutation
from permeq.rng import generator
from permeq.suites import partial_graph_classes
from permeq.words import EMPTY_WORD, word

from conftest import random_tuple


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_partial_graph_validation():
    with pytest.raises(ValidationError):
        PartialSGraph([(1, 1, 2), (1, 1, 3)])  # two outgoing with one label
    with pytest.raises(ValidationError):
        PartialSGraph([(1, 1, 3), (2, 1, 3)])  # two incoming with one label
    h = PartialSGraph([(1, 1, 2), (2, 1, 3), (1, 2, 3)])
    assert h.vertices == frozenset({1, 2, 3})
    assert h.r() == 2 and h.is_connected()


def test_empty_partial_graph():
    h = PartialSGraph([])
    assert h.r() == 0
    assert h.vertices == frozenset()


def test_components_and_r():
    h = PartialSGraph([(1, 1, 2), (4, 2, 5)])
    assert h.components() == [frozenset({1, 2}), frozenset({4, 5})]
    assert h.r() == 2


def test_path_invariants_single_edge():
    h = PartialSGraph([(1, 1, 2)])
    spaths, bp, pstab = path_invariants(h, 1)
    assert set(spaths) == {EMPTY_WORD, word(1)}
    assert set(bp) == {EMPTY_WORD, word(1), word(-1)}
    assert set(pstab) == {EMPTY_WORD}


def test_path_invariants_loop():
    h = PartialSGraph([(1, 1, 1)])
    spaths, bp, pstab = path_invariants(h, 1)
    assert word(1) in pstab
    assert EMPTY_WORD in pstab


def test_pstab_always_contains_empty_word():
    rng = generator(41)
    for h in partial_graph_classes(max_vertices=3, max_edges=2)[:20]:
        for y0 in h.vertices:
            _, _, pstab = path_invariants(h, y0)
            assert EMPTY_WORD in pstab


def test_path_invariants_base_vertex_must_exist():
    with pytest.raises(ValidationError):
        path_invariants(PartialSGraph([(1, 1, 2)]), 9)


def test_walk_partial():
    h = PartialSGraph([(1, 1, 2), (2, 2, 1)])
    assert walk_partial(h, word(2, 1), 1) == 1
    assert walk_partial(h, word(1), 2) is None
    assert walk_partial(h, word(-1), 2) == 1


def test_includes():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)), cyc(3, (1, 2)))))
    assert includes(g, PartialSGraph([(1, 1, 2)]))
    assert not includes(g, PartialSGraph([(1, 1, 3)]))
    assert includes(g, PartialSGraph([]))
    with pytest.raises(ValidationError):
        includes(g, PartialSGraph([(3, 1, 8)]))


def test_includes_vertex_identity_matters():
    # same shape, different labels: edge 2 -> 3 present, 3 -> 2 absent
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    assert includes(g, PartialSGraph([(2, 1, 3)]))
    assert not includes(g, PartialSGraph([(3, 1, 2)]))


def test_inclusion_probability_edge_into_cycle():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    h = PartialSGraph([(1, 1, 2)])
    assert inclusion_probability(g, h, 1) == Fraction(1, 2)
    assert inclusion_probability_exact(g, h) == Fraction(1, 2)


def test_inclusion_probability_loop_against_cycle():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    h = PartialSGraph([(1, 1, 1)])
    assert inclusion_probability(g, h, 1) == 0
    assert inclusion_probability_exact(g, h) == 0


def test_inclusion_probability_base_vertex_invariance():
    rng = generator(42)
    classes = partial_graph_classes(max_vertices=4, max_edges=3)
    for h in classes[::7]:
        t = random_tuple(rng, 6, 2)
        g = from_tuple(t)
        values = {inclusion_probability(g, h, y0) for y0 in h.vertices}
        assert len(values) == 1


def test_inclusion_probability_invariant_under_h_relabelling():
    rng = generator(43)
    g = from_tuple(random_tuple(rng, 7, 2))
    h = PartialSGraph([(1, 1, 2), (2, 2, 3)])
    mapping = {1: 5, 2: 2, 3: 7}
    h2 = h.relabelled(mapping)
    assert inclusion_probability(g, h, 1) == inclusion_probability(g, h2, 5)
    assert inclusion_probability_exact(g, h) == inclusion_probability_exact(g, h2)


def test_inclusion_probability_needs_connected():
    g = from_tuple(PermTuple.identity(5, 2))
    with pytest.raises(ValidationError):
        inclusion_probability(g, PartialSGraph([(1, 1, 2), (3, 1, 4)]), 1)
    with pytest.raises(ValidationError):
        inclusion_probability(g, PartialSGraph([]), 1)


def test_inclusion_probability_general_disconnected():
    rng = generator(44)
    g = from_tuple(random_tuple(rng, 6, 2))
    h = PartialSGraph([(1, 1, 2), (3, 2, 4)])
    value = inclusion_probability_general(g, h)
    # leading term: n^-r times the product of per-component masses
    left = inclusion_probability_general(g, PartialSGraph([(1, 1, 2)]))
    right = inclusion_probability_general(g, PartialSGraph([(3, 2, 4)]))
    assert value == left * right * 36 / 36  # r = 2, each factor carries n^-1


def test_inclusion_probability_general_matches_formula_scaling_connected():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    h = PartialSGraph([(1, 1, 2)])
    # connected case: the general product form is the n^-r leading term
    assert inclusion_probability_general(g, h) == Fraction(1, 3)


def test_transcript_is_included():
    from permeq.testers import OracleTuple

    rng = generator(45)
    for _ in range(10):
        t = random_tuple(rng, 5, 2)
        o = OracleTuple(t)
        o.query(1, 1, 1)
        o.query(2, -1, 3)
        o.query(1, 1, o.query(2, 1, 2))
        assert includes(from_tuple(t), o.transcript())


def test_exact_oracle_matches_reference():
    rng = generator(46)
    for _ in range(5):
        t = random_tuple(rng, 4, 2)
        g = from_tuple(t)
        h = PartialSGraph([(1, 1, 2), (2, 2, 1)])
        assert inclusion_probability_exact(g, h) == inclusion_probability_exact_reference(g, h)


def test_exact_oracle_cap():
    g = from_tuple(PermTuple.identity(10, 1))
    with pytest.raises(InfeasibleError):
        inclusion_probability_exact(g, PartialSGraph([(1, 1, 2)]), cap=1000)


def test_full_graph_inclusion_at_least_identity():
    rng = generator(47)
    t = random_tuple(rng, 4, 2)
    g = from_tuple(t)
    h = PartialSGraph(list(g.edges()))
    import math

    assert inclusion_probability_exact(g, h) >= Fraction(1, math.factorial(4))


def test_unembeddable_partial_graph_probability_zero():
    # a 2-cycle under label 1 cannot land in a 4-cycle however relabelled
    g = from_tuple(PermTuple((cyc(4, (1, 2, 3, 4)), cyc(4, (1, 3)))))
    h = PartialSGraph([(1, 1, 2), (2, 1, 1)])
    assert inclusion_probability_exact(g, h) == 0
    assert inclusion_probability(g, h, 1) == 0
