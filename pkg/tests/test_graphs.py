from fractions import Fraction

import pytest

from permeq.errors import InfeasibleError, ValidationError
from permeq.graphs import (
    SGraph,
    cheeger,
    cheeger_reference,
    components,
    export_edge_list,
    from_tuple,
    is_connected,
    product_graph,
    quotient_graph,
    relabel,
    restrict,
    subgraph_on,
    to_tuple,
    walk,
)
from permeq.localstats import stab_fragment
from permeq.perms import PermTuple, Permutation, evaluate_point, is_solution
from permeq.presets import comm
from permeq.rng import generator
from permeq.words import WordSet, ball, word

from conftest import random_permutation, random_tuple


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


def test_round_trip():
    rng = generator(31)
    for _ in range(20):
        t = random_tuple(rng, 5, 2)
        assert to_tuple(from_tuple(t)) == t


def test_three_cycle_edges():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    assert sorted(g.edges()) == [(1, 1, 2), (2, 1, 3), (3, 1, 1)]


def test_walk_matches_evaluate():
    rng = generator(32)
    from conftest import random_word

    for seed in range(60):
        t = random_tuple(rng, 5, 2)
        g = from_tuple(t)
        w = random_word(seed, d=2, max_len=8)
        for x in range(1, 6):
            assert walk(g, w, x) == evaluate_point(w, t, x)


def test_walk_examples():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    assert walk(g, word(1), 1) == 2
    assert walk(g, WordSet().words[0] if False else word(1, 1), 1) == 3


def test_stab_fragment_via_graph_walks():
    rng = generator(33)
    P = ball(2, 2)
    for _ in range(10):
        t = random_tuple(rng, 5, 2)
        g = from_tuple(t)
        for x in range(1, 6):
            mask = 0
            for i, w in enumerate(P):
                if walk(g, w, x) == x:
                    mask |= 1 << i
            assert mask == stab_fragment(t, x, P)


def test_components_examples():
    assert components(from_tuple(PermTuple.identity(4, 2))) == [
        frozenset({1}),
        frozenset({2}),
        frozenset({3}),
        frozenset({4}),
    ]
    assert components(from_tuple(PermTuple((cyc(4, (1, 2, 3, 4)),)))) == [
        frozenset({1, 2, 3, 4})
    ]
    g = from_tuple(PermTuple((cyc(4, (1, 2)), cyc(4, (3, 4)))))
    assert components(g) == [frozenset({1, 2}), frozenset({3, 4})]


def test_cheeger_identity_graph():
    g = from_tuple(PermTuple.identity(4, 2))
    assert cheeger(g) == 0


def test_cheeger_four_cycle():
    g = from_tuple(PermTuple((cyc(4, (1, 2, 3, 4)),)))
    assert cheeger(g) == Fraction(1, 2)
    assert cheeger_reference(g) == Fraction(1, 2)


def test_cheeger_disconnected_is_zero():
    g = from_tuple(PermTuple((cyc(5, (1, 2)), cyc(5, (3, 4, 5)))))
    assert cheeger(g) == 0


def test_cheeger_matches_reference_random():
    rng = generator(34)
    for _ in range(25):
        n = int(rng.integers(2, 9))
        g = from_tuple(random_tuple(rng, n, 2))
        assert cheeger(g) == cheeger_reference(g)


def test_cheeger_cap_and_degree():
    g = from_tuple(PermTuple.identity(30, 1))
    with pytest.raises(InfeasibleError):
        cheeger(g)
    with pytest.raises(ValidationError):
        cheeger(from_tuple(PermTuple.identity(1, 1)))


def test_quotient_cyclic_three():
    table = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    g = quotient_graph(table, [1])
    assert is_connected(g)
    assert sorted(g.edges()) == [(1, 1, 2), (2, 1, 3), (3, 1, 1)]


def test_quotient_sym3_connected():
    import itertools

    elements = list(itertools.permutations(range(3)))
    index = {e: i for i, e in enumerate(elements)}

    def mul(a, b):  # left action composition: (a * b)(x) = a(b(x))
        return tuple(a[b[x]] for x in range(3))

    table = [[index[mul(a, b)] for b in elements] for a in elements]
    gens = [index[(1, 0, 2)], index[(1, 2, 0)]]
    g = quotient_graph(table, gens)
    assert g.n == 6 and is_connected(g)


def test_quotient_klein_four_solves_commutation():
    # Z/2 x Z/2 with both coordinate generators
    elements = [(0, 0), (0, 1), (1, 0), (1, 1)]
    index = {e: i for i, e in enumerate(elements)}
    table = [
        [index[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)] for b in elements]
        for a in elements
    ]
    g = quotient_graph(table, [index[(1, 0)], index[(0, 1)]])
    assert is_connected(g)
    assert is_solution(to_tuple(g), comm(2))


def test_quotient_invalid_tables():
    with pytest.raises(ValidationError):
        quotient_graph([[0, 1], [0, 1]], [0])  # column repeats
    with pytest.raises(ValidationError):
        quotient_graph([[1, 0, 2], [2, 1, 0], [0, 2, 1]], [0])  # no identity
    # latin square that is not associative
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValidationError):
        quotient_graph(table, [1])


def test_relabel_identity():
    g = from_tuple(PermTuple((cyc(4, (1, 2, 3)), cyc(4, (2, 4)))))
    assert relabel(g, Permutation.identity(4)) == g


def test_relabel_walk_identity():
    rng = generator(35)
    from conftest import random_word

    for seed in range(40):
        t = random_tuple(rng, 5, 2)
        g = from_tuple(t)
        pi = random_permutation(rng, 5)
        gp = relabel(g, pi)
        w = random_word(seed + 500, d=2, max_len=6)
        for x in range(1, 6):
            assert walk(gp, w, x) == pi.inv(walk(g, w, pi(x)))


def test_relabel_right_action():
    rng = generator(36)
    for _ in range(30):
        g = from_tuple(random_tuple(rng, 5, 2))
        pi = random_permutation(rng, 5)
        rho = random_permutation(rng, 5)
        composed = Permutation([pi(rho(x)) for x in range(1, 6)])
        assert relabel(relabel(g, pi), rho) == relabel(g, composed)


def test_relabel_preserves_solutions_exhaustively():
    import itertools

    E = comm(2)
    for n in (2, 3, 4):
        from permeq.perms import enumerate_solutions

        sols = {
            tuple(p.images for p in s.perms) for s in enumerate_solutions(E, n)
        }
        for images in itertools.permutations(range(1, n + 1)):
            pi = Permutation(images)
            for key in sols:
                g = from_tuple(PermTuple(tuple(Permutation(im) for im in key)))
                assert is_solution(to_tuple(relabel(g, pi)), E)


def test_restrict_short_circuits():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)),)))
    assert to_tuple(restrict(g)).perms[0] == cyc(2, (1, 2))


def test_restrict_drops_fixed_last_vertex():
    g = from_tuple(PermTuple((cyc(3, (1, 2)),)))
    assert to_tuple(restrict(g)).perms[0] == cyc(2, (1, 2))
    g2 = from_tuple(PermTuple((cyc(4, (1, 2)), cyc(4, (2, 3)))))
    r = restrict(g2)
    assert to_tuple(r) == PermTuple((cyc(3, (1, 2)), cyc(3, (2, 3))))


def test_restrict_changes_at_most_one_point_per_label():
    rng = generator(37)
    for _ in range(50):
        n = int(rng.integers(2, 8))
        g = from_tuple(random_tuple(rng, n, 2))
        r = restrict(g)
        for label in (1, 2):
            diffs = sum(
                1
                for x in range(1, n)
                if r.succ(label, x) != g.succ(label, x)
            )
            assert diffs <= 1


def test_product_with_point_graph():
    g = from_tuple(PermTuple((cyc(3, (1, 2, 3)), cyc(3, (1, 2)))))
    one = from_tuple(PermTuple.identity(1, 2))
    assert to_tuple(product_graph(one, g)) == to_tuple(g)


def test_product_projections_refine_components():
    rng = generator(38)
    for _ in range(10):
        g1 = from_tuple(random_tuple(rng, 3, 2))
        g2 = from_tuple(random_tuple(rng, 4, 2))
        prod = product_graph(g1, g2)
        comps1 = {min(c) for c in components(g1)}
        for comp in components(prod):
            # first-coordinate projection lands inside one component of g1
            firsts = {(v - 1) // 4 + 1 for v in comp}
            roots = set()
            for c in components(g1):
                if firsts & c:
                    roots.add(min(c))
            assert len(roots) == 1


def test_product_shape_mismatch():
    g1 = from_tuple(PermTuple.identity(2, 1))
    g2 = from_tuple(PermTuple.identity(2, 2))
    with pytest.raises(ValidationError):
        product_graph(g1, g2)


def test_subgraph_on_component():
    g = from_tuple(PermTuple((cyc(4, (1, 2)), cyc(4, (3, 4)))))
    sub = subgraph_on(g, frozenset({3, 4}))
    assert sub.n == 2
    assert to_tuple(sub).perms[1] == cyc(2, (1, 2))
    with pytest.raises(ValidationError):
        subgraph_on(g, frozenset({1, 3}))


def test_export_edge_list():
    g = from_tuple(PermTuple((cyc(2, (1, 2)),)))
    text = export_edge_list(g, ("X",))
    assert text == "1 X 2\n2 X 1\n"
