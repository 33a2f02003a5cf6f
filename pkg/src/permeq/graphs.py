"""The edge-labelled graph view of permutation tuples.

An S-graph on [1..n] has, per label, exactly one outgoing and one
incoming edge at every vertex; it carries the same payload as a
PermTuple and the two views convert losslessly. Connectivity always
disregards orientation and labels.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import kernels
from .errors import InfeasibleError, ValidationError
from .perms import PermTuple, Permutation, evaluate_point
from .words import Word

DEFAULT_SUBSET_CAP = 2**22


class SGraph:
    """Graph-facing API over a tuple of permutations."""

    __slots__ = ("tuple",)

    def __init__(self, t: PermTuple):
        object.__setattr__(self, "tuple", t)

    def __setattr__(self, name, value):
        raise AttributeError("SGraph is immutable")

    @property
    def n(self) -> int:
        return self.tuple.n

    @property
    def d(self) -> int:
        return self.tuple.d

    def succ(self, label: int, x: int) -> int:
        """Endpoint of the outgoing edge at x with the given 1-based label."""
        return self.tuple.perms[label - 1].images[x - 1]

    def pred(self, label: int, x: int) -> int:
        return self.tuple.perms[label - 1].inv_images[x - 1]

    def succ_arrays(self) -> list[list[int]]:
        """0-indexed successor arrays, one per label (kernel format)."""
        return [[y - 1 for y in p.images] for p in self.tuple.perms]

    def edges(self):
        for label in range(1, self.d + 1):
            for x in range(1, self.n + 1):
                yield (x, label, self.succ(label, x))

    def __eq__(self, other) -> bool:
        return isinstance(other, SGraph) and self.tuple == other.tuple

    def __hash__(self) -> int:
        return hash(self.tuple)

    def __repr__(self) -> str:
        return f"SGraph(n={self.n}, d={self.d})"


def from_tuple(t: PermTuple) -> SGraph:
    return SGraph(t)


def to_tuple(g: SGraph) -> PermTuple:
    return g.tuple


def walk(g: SGraph, w: Word, x: int) -> int:
    """Follow the word's letters right to left; inverse letters traverse
    edges backwards."""
    return evaluate_point(w, g.tuple, x)


def components(g: SGraph) -> list[frozenset[int]]:
    """Undirected connected components, each a frozenset of vertices,
    ordered by smallest member."""
    n = g.n
    parent = list(range(n + 1))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for x, _, y in g.edges():
        ra, rb = find(x), find(y)
        if ra != rb:
            parent[rb] = ra
    groups: dict[int, set[int]] = {}
    for x in range(1, n + 1):
        groups.setdefault(find(x), set()).add(x)
    return sorted((frozenset(v) for v in groups.values()), key=min)


def is_connected(g: SGraph) -> bool:
    return len(components(g)) == 1


def cheeger(g: SGraph, cap: int = DEFAULT_SUBSET_CAP) -> Fraction:
    """Exact Cheeger constant: min over nonempty A, |A| <= n/2, of the
    labelled out-boundary size divided by |A|."""
    if g.n < 2:
        raise ValidationError("cheeger needs at least two vertices")
    if 2**g.n > cap:
        raise InfeasibleError(
            f"cheeger subset scan needs 2^{g.n} states, cap is {cap}",
            required=2**g.n,
            cap=cap,
        )
    num, den = kernels.cheeger_scan(g.n, g.succ_arrays())
    return Fraction(num, den)


def subgraph_on(g: SGraph, vertices: frozenset[int]) -> SGraph:
    """The induced S-graph on a union of components, renumbered 1..k by
    ascending original vertex."""
    order = sorted(vertices)
    pos = {v: i + 1 for i, v in enumerate(order)}
    perms = []
    for label in range(1, g.d + 1):
        images = []
        for v in order:
            w = g.succ(label, v)
            if w not in pos:
                raise ValidationError("vertex set is not closed under the edges")
            images.append(pos[w])
        perms.append(Permutation(images))
    return SGraph(PermTuple(tuple(perms)))


def quotient_graph(mult_table: list[list[int]], gen_images: list[int]) -> SGraph:
    """The left-multiplication graph of a finite group on itself.

    ``mult_table[a][b]`` is the 0-indexed product a*b; vertices are the
    group elements numbered 1..|table|; the edge with label i at vertex x
    points to gen_images[i] * x. The result is connected iff the chosen
    elements generate the group, and it solves any equation system whose
    relators the images satisfy.
    """
    k = len(mult_table)
    if k == 0 or any(len(row) != k for row in mult_table):
        raise ValidationError("multiplication table must be square and nonempty")
    for row in mult_table:
        for v in row:
            if not 0 <= v < k:
                raise ValidationError("table entries must be element indices")
    for row in mult_table:
        if len(set(row)) != k:
            raise ValidationError("table rows must be permutations (left cancellation)")
    for col in range(k):
        if len({mult_table[r][col] for r in range(k)}) != k:
            raise ValidationError("table columns must be permutations (right cancellation)")
    identity = None
    for e in range(k):
        if all(mult_table[e][b] == b for b in range(k)) and all(
            mult_table[a][e] == a for a in range(k)
        ):
            identity = e
            break
    if identity is None:
        raise ValidationError("table has no identity element")
    for a in range(k):
        if not any(
            mult_table[a][b] == identity and mult_table[b][a] == identity
            for b in range(k)
        ):
            raise ValidationError(f"element {a} has no inverse")
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if mult_table[mult_table[a][b]][c] != mult_table[a][mult_table[b][c]]:
                    raise ValidationError("table is not associative")
    for gidx in gen_images:
        if not 0 <= gidx < k:
            raise ValidationError("generator image outside the group")
    perms = [
        Permutation([mult_table[gidx][x] + 1 for x in range(k)])
        for gidx in gen_images
    ]
    return SGraph(PermTuple(tuple(perms)))


def relabel(g: SGraph, pi: Permutation) -> SGraph:
    """The right action of a relabelling permutation: the new successor
    of y is pi^-1(s(pi(y))), so walks satisfy
    walk(G pi, w, x) == pi^-1(walk(G, w, pi(x)))."""
    if pi.n != g.n:
        raise ValidationError("relabelling degree mismatch")
    perms = []
    for label in range(1, g.d + 1):
        perms.append(
            Permutation([pi.inv(g.succ(label, pi(y))) for y in range(1, g.n + 1)])
        )
    return SGraph(PermTuple(tuple(perms)))


def restrict(g: SGraph) -> SGraph:
    """Drop the last vertex, short-circuiting edges through it: the new
    successor of x is s(x) unless s(x) = n, in which case it is s(s(x))."""
    n = g.n
    if n < 2:
        raise ValidationError("restriction needs at least two vertices")
    perms = []
    for label in range(1, g.d + 1):
        images = []
        for x in range(1, n):
            y = g.succ(label, x)
            if y == n:
                y = g.succ(label, n)
            images.append(y)
        perms.append(Permutation(images))
    return SGraph(PermTuple(tuple(perms)))


def product_graph(g1: SGraph, g2: SGraph) -> SGraph:
    """Componentwise product on [m] x [n], flattened row-major:
    (x, y) -> (x - 1) * n + y."""
    if g1.d != g2.d:
        raise ValidationError("product needs equal label counts")
    m, n = g1.n, g2.n
    perms = []
    for label in range(1, g1.d + 1):
        images = [0] * (m * n)
        for x in range(1, m + 1):
            sx = g1.succ(label, x)
            for y in range(1, n + 1):
                images[(x - 1) * n + y - 1] = (sx - 1) * n + g2.succ(label, y)
        perms.append(Permutation(images))
    return SGraph(PermTuple(tuple(perms)))


def boundary_size(g: SGraph, subset: set[int]) -> int:
    """Number of labelled edges from the subset to its complement."""
    return sum(
        1
        for label in range(1, g.d + 1)
        for x in subset
        if g.succ(label, x) not in subset
    )


def cheeger_reference(g: SGraph) -> Fraction:
    """Brute-force Cheeger by explicit subset iteration; the independent
    check for the incremental kernel scan."""
    n = g.n
    best = None
    for size in range(1, n // 2 + 1):
        for subset in itertools.combinations(range(1, n + 1), size):
            ratio = Fraction(boundary_size(g, set(subset)), size)
            if best is None or ratio < best:
                best = ratio
    if best is None:
        raise ValidationError("cheeger needs at least two vertices")
    return best


def export_edge_list(g: SGraph, names: tuple[str, ...] | None = None) -> str:
    """Text export, one ``u label v`` line per edge."""
    if names is None:
        names = tuple(f"s{i}" for i in range(1, g.d + 1))
    lines = [f"{x} {names[label - 1]} {y}" for x, label, y in g.edges()]
    return "\n".join(lines) + "\n"
