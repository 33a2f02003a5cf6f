"""Local views of permutation tuples: stabilizer fragments and their
exact distributions, plus the total-variation metric.

A fragment is the subset of a finite word set P fixing a given point,
encoded as a bit mask over P's canonical order. The local distribution
of a tuple is the exact law of the fragment at a uniform point; all
masses are multiples of 1/n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ValidationError
from .perms import PermTuple, evaluate_point
from .words import WordSet


class LocalDistribution:
    """Exact probability distribution over subsets of a word set."""

    __slots__ = ("word_set", "masses")

    def __init__(self, word_set: WordSet, masses: Mapping[int, Fraction]):
        cleaned: dict[int, Fraction] = {}
        limit = 1 << len(word_set)
        total = Fraction(0)
        for mask, mass in masses.items():
            mass = Fraction(mass)
            if mass < 0:
                raise ValidationError("negative probability mass")
            if mass == 0:
                continue
            if not 0 <= mask < limit:
                raise ValidationError(f"subset encoding {mask} outside the word set")
            cleaned[mask] = cleaned.get(mask, Fraction(0)) + mass
            total += mass
        if total != 1:
            raise ValidationError(f"masses sum to {total}, expected 1")
        object.__setattr__(self, "word_set", word_set)
        object.__setattr__(self, "masses", dict(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LocalDistribution is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LocalDistribution)
            and self.word_set == other.word_set
            and self.masses == other.masses
        )

    def __hash__(self) -> int:
        return hash((self.word_set, tuple(self.masses.items())))

    def mass(self, mask: int) -> Fraction:
        return self.masses.get(mask, Fraction(0))

    def support(self) -> tuple[int, ...]:
        return tuple(self.masses)

    def marginal(self, sub: WordSet) -> "LocalDistribution":
        """Project onto a subset of the word set (intersect fragments)."""
        positions = []
        for w in sub:
            if w not in self.word_set:
                raise ValidationError("marginal target is not a subset of the word set")
            positions.append(self.word_set.index(w))
        out: dict[int, Fraction] = {}
        for mask, mass in self.masses.items():
            sub_mask = 0
            for bit, pos in enumerate(positions):
                if mask >> pos & 1:
                    sub_mask |= 1 << bit
            out[sub_mask] = out.get(sub_mask, Fraction(0)) + mass
        return LocalDistribution(sub, out)

    def __repr__(self) -> str:
        return f"LocalDistribution(|P|={len(self.word_set)}, masses={self.masses})"


def point_mass(word_set: WordSet, mask: int) -> LocalDistribution:
    return LocalDistribution(word_set, {mask: Fraction(1)})


def stab_fragment(t: PermTuple, x: int, P: WordSet) -> int:
    """Bit i set iff word i of P fixes the point x under the tuple."""
    mask = 0
    for i, w in enumerate(P):
        if evaluate_point(w, t, x) == x:
            mask |= 1 << i
    return mask


def local_distribution(t: PermTuple, P: WordSet) -> LocalDistribution:
    """Law of the stabilizer fragment at a uniform point of [1..n]."""
    counts: dict[int, int] = {}
    for x in range(1, t.n + 1):
        mask = stab_fragment(t, x, P)
        counts[mask] = counts.get(mask, 0) + 1
    return LocalDistribution(
        P, {mask: Fraction(c, t.n) for mask, c in counts.items()}
    )


def distribution_from_counts(
    P: WordSet, counts: Mapping[int, int], total: int
) -> LocalDistribution:
    if total < 1:
        raise ValidationError("empirical distribution needs at least one sample")
    return LocalDistribution(
        P, {mask: Fraction(c, total) for mask, c in counts.items() if c}
    )


def tv_distance(a: LocalDistribution, b: LocalDistribution) -> Fraction:
    """Half the l1 distance between the mass functions, exact."""
    if a.word_set != b.word_set:
        raise ValidationError("total-variation distance needs a common word set")
    keys = set(a.masses) | set(b.masses)
    return sum((abs(a.mass(k) - b.mass(k)) for k in keys), start=Fraction(0)) / 2


def dedup_distributions(dists: Iterable[LocalDistribution]) -> tuple[LocalDistribution, ...]:
    """Drop exact duplicates, preserving first-seen order."""
    seen = set()
    out = []
    for dist in dists:
        key = (dist.word_set, tuple(dist.masses.items()))
        if key not in seen:
            seen.add(key)
            out.append(dist)
    return tuple(out)
