"""Partial S-graphs: machine transcripts, simple-path word sets, and
exact inclusion probabilities under uniform vertex relabelling.

A partial S-graph has, per label, at most one outgoing and one incoming
edge at each vertex; vertices exist only as edge endpoints. Edge
membership is on labelled directed edges with vertex identity: if H has
the edge 3 -s-> 8 then a containing graph must have exactly that edge.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from . import kernels
from .errors import InfeasibleError, ValidationError
from .graphs import SGraph
from .localstats import local_distribution
from .words import EMPTY_WORD, Letter, Word, WordSet, concat, invert

DEFAULT_FACTORIAL_CAP = math.factorial(9)
DEFAULT_BP_CAP = 10**5


class PartialSGraph:
    """An edge set {(u, label, v)} with the degree-at-most-one invariant."""

    __slots__ = ("edges", "vertices")

    def __init__(self, edges):
        edges = frozenset((int(u), int(s), int(v)) for u, s, v in edges)
        out_seen = set()
        in_seen = set()
        verts = set()
        for u, s, v in edges:
            if u < 1 or v < 1 or s < 1:
                raise ValidationError("edge endpoints and labels are 1-based")
            if (u, s) in out_seen:
                raise ValidationError(f"vertex {u} has two outgoing edges labelled {s}")
            if (v, s) in in_seen:
                raise ValidationError(f"vertex {v} has two incoming edges labelled {s}")
            out_seen.add((u, s))
            in_seen.add((v, s))
            verts.add(u)
            verts.add(v)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "vertices", frozenset(verts))

    def __setattr__(self, name, value):
        raise AttributeError("PartialSGraph is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, PartialSGraph) and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def out_edge(self, x: int, s: int):
        for u, label, v in self.edges:
            if u == x and label == s:
                return v
        return None

    def in_edge(self, x: int, s: int):
        for u, label, v in self.edges:
            if v == x and label == s:
                return u
        return None

    def components(self) -> list[frozenset[int]]:
        parent = {v: v for v in self.vertices}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for u, _, v in self.edges:
            ra, rb = find(u), find(v)
            if ra != rb:
                parent[rb] = ra
        groups: dict[int, set[int]] = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def r(self) -> int:
        """Vertex count minus component count; 0 for the empty graph."""
        return len(self.vertices) - len(self.components())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def relabelled(self, mapping: dict[int, int]) -> "PartialSGraph":
        return PartialSGraph(
            (mapping[u], s, mapping[v]) for u, s, v in self.edges
        )

    def __repr__(self) -> str:
        return f"PartialSGraph({sorted(self.edges)})"


def walk_partial(h: PartialSGraph, w: Word, x: int):
    """Follow the word along the partial graph's edges, rightmost letter
    first; None when some step has no edge."""
    y = x
    for gen, sign in reversed(w.letters):
        y = h.out_edge(y, gen) if sign > 0 else h.in_edge(y, gen)
        if y is None:
            return None
    return y


def path_invariants(h: PartialSGraph, x: int) -> tuple[WordSet, WordSet, WordSet]:
    """Simple-path words from x, their difference set, and the part of it
    that returns to x.

    spaths: reduced words tracing paths from x whose vertices are
    distinct up to the final step; the last step may close back onto any
    visited vertex (so cycle, loop, and lasso closures all contribute
    one word). bp: all w'^-1 w over spath pairs. pstab: words of bp that
    are walkable from x and fix it.
    """
    if x not in h.vertices:
        raise ValidationError(f"{x} is not a vertex of the partial graph")
    found: set[Word] = set()

    def steps(v: int):
        for u, s, w_ in h.edges:
            if u == v:
                yield Letter(s, 1), w_
            if w_ == v:
                yield Letter(s, -1), u

    def dfs(v: int, visited: set[int], applied: list[Letter]):
        found.add(Word(tuple(reversed(applied)), _reduced=True))
        for letter, target in steps(v):
            if applied and applied[-1] == Letter(letter.gen, -letter.sign):
                continue
            if target in visited:
                found.add(Word(tuple(reversed(applied + [letter])), _reduced=True))
                continue
            visited.add(target)
            applied.append(letter)
            dfs(target, visited, applied)
            applied.pop()
            visited.remove(target)

    dfs(x, {x}, [])
    spaths = WordSet(found)
    if len(spaths) ** 2 > DEFAULT_BP_CAP:
        raise InfeasibleError(
            f"difference set would need {len(spaths) ** 2} products",
            required=len(spaths) ** 2,
            cap=DEFAULT_BP_CAP,
        )
    bp = WordSet(
        concat(invert(w2), w1) for w1 in spaths for w2 in spaths
    )
    pstab = WordSet(w for w in bp if walk_partial(h, w, x) == x)
    return spaths, bp, pstab


def includes(g: SGraph, h: PartialSGraph) -> bool:
    """True iff every labelled edge of the partial graph is an edge of g."""
    if h.vertices and max(h.vertices) > g.n:
        raise ValidationError("partial graph has vertices outside [1..n]")
    return all(g.succ(s, u) == v for u, s, v in h.edges)


def inclusion_probability(g: SGraph, h: PartialSGraph, y0: int) -> Fraction:
    """Exact probability over a uniform relabelling pi that h sits inside
    g pi, for connected h with at least one edge:

        (n - |V(h)|)! / (n - 1)!  *  mass that g's local distribution
        over bp(y0) puts on the fragment pstab(y0).

    The value does not depend on the base vertex.
    """
    if not h.edges:
        raise ValidationError("inclusion probability needs at least one edge")
    if not h.is_connected():
        raise ValidationError(
            "partial graph is disconnected; use inclusion_probability_general"
        )
    if y0 not in h.vertices:
        raise ValidationError(f"{y0} is not a vertex of the partial graph")
    n = g.n
    if len(h.vertices) > n:
        raise ValidationError("partial graph has more vertices than the host")
    _, bp, pstab = path_invariants(h, y0)
    dist = local_distribution(g.tuple, bp)
    mass = dist.mass(bp.encode(pstab))
    return Fraction(
        math.factorial(n - len(h.vertices)), math.factorial(n - 1)
    ) * mass


def inclusion_probability_general(g: SGraph, h: PartialSGraph) -> Fraction:
    """Leading-order inclusion probability for a partial graph whose
    components each carry an edge: n^(-r(h)) times the product of the
    per-component fragment masses. Exact for connected h; off by
    O(n^(-r-1/4)) in general, so cross-check against the enumeration
    oracle when exactness matters."""
    if not h.edges:
        return Fraction(1)
    n = g.n
    value = Fraction(1, n ** h.r())
    for comp in h.components():
        y0 = min(comp)
        sub = PartialSGraph(e for e in h.edges if e[0] in comp or e[2] in comp)
        _, bp, pstab = path_invariants(sub, y0)
        dist = local_distribution(g.tuple, bp)
        value *= dist.mass(bp.encode(pstab))
    return value


def inclusion_probability_exact(
    g: SGraph, h: PartialSGraph, cap: int = DEFAULT_FACTORIAL_CAP
) -> Fraction:
    """Oracle: |{pi : h inside g pi}| / n! by full enumeration."""
    n = g.n
    if math.factorial(n) > cap:
        raise InfeasibleError(
            f"relabelling oracle needs {math.factorial(n)} permutations, cap {cap}",
            required=math.factorial(n),
            cap=cap,
        )
    if h.vertices and max(h.vertices) > n:
        raise ValidationError("partial graph has vertices outside [1..n]")
    edges0 = [(u - 1, s - 1, v - 1) for u, s, v in h.edges]
    count = kernels.inclusion_count(n, g.succ_arrays(), edges0)
    return Fraction(count, math.factorial(n))


def inclusion_probability_exact_reference(g: SGraph, h: PartialSGraph) -> Fraction:
    """Pure-Python twin of the oracle, for kernel equivalence tests."""
    from .graphs import relabel
    from .perms import Permutation

    n = g.n
    count = 0
    for images in itertools.permutations(range(1, n + 1)):
        if includes(relabel(g, Permutation(images)), h):
            count += 1
    return Fraction(count, math.factorial(n))
