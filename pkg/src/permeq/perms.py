"""Permutations, tuples, word evaluation, metrics, and solution spaces.

Points are 1-indexed throughout; all distances and probabilities are
exact fractions. Anything that would enumerate more candidate tuples
than the configured cap fails loudly with InfeasibleError instead of
sampling.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import kernels
from .errors import InfeasibleError, ValidationError
from .words import EquationSystem, Word

DEFAULT_STATE_CAP = 10**7


class Permutation:
    """A bijection on [1..n] stored as a 1-indexed image tuple."""

    __slots__ = ("images", "inv_images")

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if n == 0:
            raise ValidationError("permutation degree must be >= 1")
        inv = [0] * n
        for x, y in enumerate(images, start=1):
            if not 1 <= y <= n:
                raise ValidationError(f"image {y} out of range [1..{n}]")
            if inv[y - 1]:
                raise ValidationError(f"value {y} repeated; not a bijection")
            inv[y - 1] = x
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "inv_images", tuple(inv))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def inv(self, x: int) -> int:
        return self.inv_images[x - 1]

    def inverse(self) -> "Permutation":
        return Permutation(self.inv_images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x - 1] = cycle[(i + 1) % len(cycle)]
        return cls(images)


@dataclass(frozen=True)
class PermTuple:
    """d permutations of a common degree; the object under test."""

    perms: tuple[Permutation, ...]

    def __post_init__(self):
        if not self.perms:
            raise ValidationError("tuple needs at least one permutation")
        degrees = {p.n for p in self.perms}
        if len(degrees) != 1:
            raise ValidationError(f"mixed degrees in tuple: {sorted(degrees)}")
        object.__setattr__(self, "perms", tuple(self.perms))

    @property
    def n(self) -> int:
        return self.perms[0].n

    @property
    def d(self) -> int:
        return len(self.perms)

    @classmethod
    def identity(cls, n: int, d: int) -> "PermTuple":
        return cls(tuple(Permutation.identity(n) for _ in range(d)))


def evaluate_point(w: Word, t: PermTuple, x: int) -> int:
    """Apply the word to a point, rightmost letter first."""
    if w.max_generator() > t.d:
        raise ValidationError("word uses a generator outside the tuple's alphabet")
    if not 1 <= x <= t.n:
        raise ValidationError(f"point {x} out of range [1..{t.n}]")
    y = x
    for gen, sign in reversed(w.letters):
        p = t.perms[gen - 1]
        y = p.images[y - 1] if sign > 0 else p.inv_images[y - 1]
    return y


def evaluate(w: Word, t: PermTuple) -> Permutation:
    return Permutation(tuple(evaluate_point(w, t, x) for x in range(1, t.n + 1)))


def hamming(a: Permutation, b: Permutation) -> Fraction:
    """Fraction of points where the two permutations disagree."""
    if a.n != b.n:
        raise ValidationError(f"degree mismatch: {a.n} vs {b.n}")
    moved = sum(1 for x, y in zip(a.images, b.images) if x != y)
    return Fraction(moved, a.n)


def tuple_distance(s: PermTuple, t: PermTuple) -> Fraction:
    if (s.n, s.d) != (t.n, t.d):
        raise ValidationError("tuple shape mismatch")
    return sum(
        (hamming(a, b) for a, b in zip(s.perms, t.perms)),
        start=Fraction(0),
    )


def flexible_distance(a: Permutation, b: Permutation) -> Fraction:
    """Hamming metric on the disjoint union of all symmetric groups.

    With degrees n <= N this is (disagreements on [n] + (N - n)) / N,
    which coincides with ``hamming`` when n == N.
    """
    if a.n > b.n:
        a, b = b, a
    moved = sum(1 for x in range(1, a.n + 1) if a.images[x - 1] != b.images[x - 1])
    return Fraction(moved + (b.n - a.n), b.n)


def flexible_tuple_distance(s: PermTuple, t: PermTuple) -> Fraction:
    if s.d != t.d:
        raise ValidationError("tuple arity mismatch")
    return sum(
        (flexible_distance(a, b) for a, b in zip(s.perms, t.perms)),
        start=Fraction(0),
    )


def is_solution(t: PermTuple, system: EquationSystem) -> bool:
    """True iff both sides of every equation agree at every point."""
    if t.d != system.d:
        raise ValidationError(f"tuple has {t.d} coordinates, system needs {system.d}")
    for lhs, rhs in system.equations:
        for x in range(1, t.n + 1):
            if evaluate_point(lhs, t, x) != evaluate_point(rhs, t, x):
                return False
    return True


def local_defect(t: PermTuple, system: EquationSystem) -> Fraction:
    """Summed Hamming disagreement of the equation sides; 0 iff solution."""
    if t.d != system.d:
        raise ValidationError(f"tuple has {t.d} coordinates, system needs {system.d}")
    total = Fraction(0)
    for lhs, rhs in system.equations:
        moved = sum(
            1
            for x in range(1, t.n + 1)
            if evaluate_point(lhs, t, x) != evaluate_point(rhs, t, x)
        )
        total += Fraction(moved, t.n)
    return total


def _relator_codes(system: EquationSystem) -> list[list[int]]:
    """Relators as signed-generator lists in application order."""
    return [
        [gen * sign for gen, sign in reversed(w.letters)]
        for w in system.relators()
    ]


def check_state_cap(n: int, d: int, cap: int) -> None:
    states = math.factorial(n) ** d
    if states > cap:
        raise InfeasibleError(
            f"enumerating (|Sym({n})|)^{d} = {states} candidate tuples exceeds cap {cap}",
            required=states,
            cap=cap,
        )


def all_perm_images(n: int) -> list[tuple[int, ...]]:
    """All n! image tuples of [1..n] in lexicographic order."""
    return list(itertools.permutations(range(1, n + 1)))


def enumerate_solutions(
    system: EquationSystem, n: int, cap: int = DEFAULT_STATE_CAP
) -> Iterator[PermTuple]:
    """Yield the full solution set at degree n, lexicographic on images."""
    check_state_cap(n, system.d, cap)
    images = all_perm_images(n)
    perms = [Permutation(im) for im in images]
    for idx in kernels.solution_indices(n, system.d, images, _relator_codes(system)):
        yield PermTuple(tuple(perms[i] for i in idx))


def solution_count(system: EquationSystem, n: int, cap: int = DEFAULT_STATE_CAP) -> int:
    return sum(1 for _ in enumerate_solutions(system, n, cap))


def nearest_solution(
    t: PermTuple, system: EquationSystem, cap: int = DEFAULT_STATE_CAP
) -> tuple[Fraction, PermTuple]:
    """Exact distance to the solution set and the first minimizing witness.

    Ties break by the deterministic enumeration order of the solutions.
    """
    best = None
    witness = None
    for s in enumerate_solutions(system, t.n, cap):
        dist = tuple_distance(t, s)
        if best is None or dist < best:
            best, witness = dist, s
            if best == 0:
                break
    if best is None:
        raise ValidationError("solution set is empty, which cannot happen")
    return best, witness


def flexible_nearest_solution(
    t: PermTuple, system: EquationSystem, cap: int = DEFAULT_STATE_CAP
) -> tuple[Fraction, int]:
    """Exact flexible distance to any solution of any degree.

    The search over degrees m is finite: a witness of degree m costs at
    least d * |m - n| / max(m, n) in the summed cross-degree metric, so
    once an incumbent value D is known, only degrees with
    n * (1 - D/d) < m < n / (1 - D/d) (all m when D >= d) can improve
    it. The incumbent starts at the strict distance for m = n, which
    always exists because the identity tuple solves every system.
    """
    n, d = t.n, t.d
    best, _ = nearest_solution(t, system, cap)
    best_m = n

    def lower_bound(m: int) -> Fraction:
        return Fraction(d * abs(m - n), max(m, n))

    def scan(m: int) -> None:
        nonlocal best, best_m
        for s in enumerate_solutions(system, m, cap):
            dist = flexible_tuple_distance(t, s)
            if dist < best:
                best, best_m = dist, m

    m = n - 1
    while m >= 1 and lower_bound(m) < best:
        scan(m)
        m -= 1
    m = n + 1
    while lower_bound(m) < best:
        scan(m)
        m += 1
    return best, best_m


def min_distance_counts(
    system: EquationSystem, n: int, cap: int = DEFAULT_STATE_CAP
) -> list[int]:
    """For every tuple in lexicographic order, the number of disagreement
    points to its nearest solution (distance = count / n)."""
    check_state_cap(n, system.d, cap)
    images = all_perm_images(n)
    sol = kernels.solution_indices(n, system.d, images, _relator_codes(system))
    return kernels.min_distances(n, system.d, images, sol)


def tuple_by_rank(n: int, d: int, rank: int) -> PermTuple:
    """The tuple at a given position in the lexicographic enumeration."""
    images = all_perm_images(n)
    total = len(images)
    coords = [rank // total**j % total for j in range(d - 1, -1, -1)]
    return PermTuple(tuple(Permutation(images[i]) for i in coords))


def load_tuple(text: str) -> PermTuple:
    """Parse the JSON tuple format {"n": int, "perms": [[...], ...]}."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}")
    if not isinstance(data, dict) or "n" not in data or "perms" not in data:
        raise ValidationError('tuple file must be {"n": int, "perms": [[...], ...]}')
    n = data["n"]
    perms = data["perms"]
    if not isinstance(n, int) or not isinstance(perms, list) or not perms:
        raise ValidationError("tuple file has malformed fields")
    out = []
    for images in perms:
        if not isinstance(images, list) or len(images) != n:
            raise ValidationError(f"each permutation must list {n} images")
        out.append(Permutation(images))
    return PermTuple(tuple(out))


def dump_tuple(t: PermTuple) -> str:
    return json.dumps({"n": t.n, "perms": [list(p.images) for p in t.perms]})


def random_tuple(n: int, d: int, rng) -> PermTuple:
    """Uniform tuple from (Sym(n))^d using a numpy Generator."""
    return PermTuple(
        tuple(
            Permutation([int(v) + 1 for v in rng.permutation(n)])
            for _ in range(d)
        )
    )
