"""The oracle model and the two testers.

Machines reach the input only through an OracleTuple, which charges one
query per letter application and records every answered edge into a
transcript. The per-point sampler checks sampled equations at sampled
points and has perfect completeness; the statistics matcher compares an
empirical local distribution against the local views of the full
solution set and can also be driven analytically for large repetition
counts (the verdict is a function of the empirical distribution alone).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from scipy.stats import beta

from .errors import InfeasibleError, ValidationError
from .localstats import (
    LocalDistribution,
    dedup_distributions,
    distribution_from_counts,
    local_distribution,
    stab_fragment,
    tv_distance,
)
from .partial import PartialSGraph
from .perms import (
    DEFAULT_STATE_CAP,
    PermTuple,
    check_state_cap,
    enumerate_solutions,
    min_distance_counts,
    tuple_by_rank,
)
from .rng import generator, rng_descriptor
from .words import EquationSystem, Word, WordSet


class OracleTuple:
    """Query-counting access to a tuple, with transcript recording.

    A query is (x, letter): the image of x under one permutation or its
    inverse. Either orientation records the same positively-oriented
    edge, so every answer grows the transcript by at most one edge.
    """

    def __init__(self, t: PermTuple):
        self.tuple = t
        self.query_count = 0
        self.inverse_queries = 0
        self._edges: set[tuple[int, int, int]] = set()

    @property
    def n(self) -> int:
        return self.tuple.n

    @property
    def d(self) -> int:
        return self.tuple.d

    def query(self, gen: int, sign: int, x: int) -> int:
        if not 1 <= gen <= self.d:
            raise ValidationError(f"no permutation {gen} in the tuple")
        if not 1 <= x <= self.n:
            raise ValidationError(f"point {x} out of range")
        p = self.tuple.perms[gen - 1]
        self.query_count += 1
        if sign > 0:
            y = p.images[x - 1]
            self._edges.add((x, gen, y))
        else:
            self.inverse_queries += 1
            y = p.inv_images[x - 1]
            self._edges.add((y, gen, x))
        return y

    def walk(self, w: Word, x: int) -> int:
        """Apply a word through the oracle, one query per letter."""
        y = x
        for gen, sign in reversed(w.letters):
            y = self.query(gen, sign, y)
        return y

    def transcript(self) -> PartialSGraph:
        return PartialSGraph(self._edges)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    queries_used: int
    transcript: PartialSGraph
    seed: int
    rng: str = field(default_factory=rng_descriptor)
    empirical: Optional[LocalDistribution] = None


def sas(
    o: OracleTuple | PermTuple,
    system: EquationSystem,
    k: int,
    seed: int,
) -> Verdict:
    """Check k uniformly sampled (equation, point) pairs via the oracle.

    Accepts iff both sides agree at the sampled point for every sample;
    uses exactly sum(|lhs| + |rhs|) queries over the sampled equations.
    An empty system accepts immediately (everything solves it).
    """
    if k < 1:
        raise ValidationError("repetition factor must be >= 1")
    if isinstance(o, PermTuple):
        o = OracleTuple(o)
    if o.d != system.d:
        raise ValidationError("oracle arity does not match the system")
    gen = generator(seed)
    accepted = True
    if system.r >= 1:
        for _ in range(k):
            i = int(gen.integers(0, system.r))
            x = int(gen.integers(1, o.n + 1))
            lhs, rhs = system.equations[i]
            if o.walk(lhs, x) != o.walk(rhs, x):
                accepted = False
    return Verdict(
        accepted=accepted,
        queries_used=o.query_count,
        transcript=o.transcript(),
        seed=seed,
    )


def sas_reject_probability_exact(
    t: PermTuple, system: EquationSystem, k: int = 1
) -> Fraction:
    """Exact rejection probability by enumerating the (equation, point)
    sample space; k repetitions compose independently."""
    if t.d != system.d:
        raise ValidationError("tuple arity does not match the system")
    if system.r == 0:
        return Fraction(0)
    from .perms import evaluate_point

    bad = 0
    for lhs, rhs in system.equations:
        for x in range(1, t.n + 1):
            if evaluate_point(lhs, t, x) != evaluate_point(rhs, t, x):
                bad += 1
    p1 = Fraction(bad, system.r * t.n)
    return 1 - (1 - p1) ** k


@dataclass(frozen=True)
class LsmContext:
    """The solution side of the matcher: every distinct local view that a
    solution of the given degree can have over the word set."""

    system: EquationSystem
    n: int
    word_set: WordSet
    solution_distributions: tuple[LocalDistribution, ...]

    def __post_init__(self):
        if not self.solution_distributions:
            raise ValidationError("solution distribution set cannot be empty")


@lru_cache(maxsize=64)
def solution_distribution_set(
    system: EquationSystem, n: int, P: WordSet, cap: int = DEFAULT_STATE_CAP
) -> LsmContext:
    """Enumerate the solutions at degree n and collect their local
    distributions over P, deduplicated; cached on (system, n, P, cap)."""
    dists = dedup_distributions(
        local_distribution(s, P) for s in enumerate_solutions(system, n, cap)
    )
    return LsmContext(
        system=system, n=n, word_set=P, solution_distributions=dists
    )


def lsm_decision(emp: LocalDistribution, ctx: LsmContext, delta: Fraction) -> bool:
    """Accept iff some solution's local view is within delta of the
    empirical one; this is the whole verdict logic."""
    return any(
        tv_distance(emp, dist) <= delta for dist in ctx.solution_distributions
    )


def lsm(
    o: OracleTuple | PermTuple,
    ctx: LsmContext,
    k: int,
    delta: Fraction,
    seed: int,
) -> Verdict:
    """Sample k points, read each one's fragment over the word set
    through the oracle, and match the empirical distribution against the
    solution set's local views."""
    if k < 1:
        raise ValidationError("sample count must be >= 1")
    if delta < 0:
        raise ValidationError("proximity must be >= 0")
    if isinstance(o, PermTuple):
        o = OracleTuple(o)
    if o.n != ctx.n:
        raise ValidationError("oracle degree does not match the context")
    gen = generator(seed)
    counts: dict[int, int] = {}
    for _ in range(k):
        x = int(gen.integers(1, o.n + 1))
        mask = 0
        for i, w in enumerate(ctx.word_set):
            if o.walk(w, x) == x:
                mask |= 1 << i
        counts[mask] = counts.get(mask, 0) + 1
    budget = k * ctx.word_set.total_size()
    if o.query_count > budget:
        raise AssertionError(
            f"query accounting broke: {o.query_count} > {budget}"
        )
    emp = distribution_from_counts(ctx.word_set, counts, k)
    return Verdict(
        accepted=lsm_decision(emp, ctx, delta),
        queries_used=o.query_count,
        transcript=o.transcript(),
        seed=seed,
        empirical=emp,
    )


def lsm_params(P: WordSet, delta: Fraction) -> int:
    """Repetition count ceil(100 * 2^|P| / delta^2); pair it with
    proximity delta / 2."""
    if delta <= 0:
        raise ValidationError("proximity scale must be positive")
    return math.ceil(Fraction(100 * 2 ** len(P)) / (Fraction(delta) ** 2))


class LsmSampler:
    """Large-k trial driver for a fixed input tuple.

    A trial's verdict depends on the sampled points only through the
    per-fragment counts, which are multinomial over the n point slots;
    sampling the counts directly gives the same verdict distribution as
    walking k individual samples, at O(n) cost per trial. Comparisons
    stay exact: integer cross-multiplication against delta = p/q.
    """

    def __init__(self, t: PermTuple, ctx: LsmContext, k: int, delta: Fraction):
        if t.n != ctx.n:
            raise ValidationError("tuple degree does not match the context")
        self.n = t.n
        self.k = k
        delta = Fraction(delta)
        self.delta_num = delta.numerator
        self.delta_den = delta.denominator
        self.point_fragments = [
            stab_fragment(t, x, ctx.word_set) for x in range(1, t.n + 1)
        ]
        # solution views as integer masses over denominator n
        self.solution_numerators = []
        for dist in ctx.solution_distributions:
            table = {}
            for mask, mass in dist.masses.items():
                table[mask] = mass.numerator * (self.n // mass.denominator)
            self.solution_numerators.append(table)

    def trial(self, gen) -> bool:
        counts = gen.multinomial(self.k, [1.0 / self.n] * self.n)
        by_fragment: dict[int, int] = {}
        for frag, c in zip(self.point_fragments, counts):
            if c:
                by_fragment[frag] = by_fragment.get(frag, 0) + int(c)
        n, k = self.n, self.k
        for table in self.solution_numerators:
            # 2 * n * k * d_TV(emp, dist), exactly
            l1 = 0
            for mask in by_fragment.keys() | table.keys():
                l1 += abs(by_fragment.get(mask, 0) * n - table.get(mask, 0) * k)
            if l1 * self.delta_den <= 2 * n * k * self.delta_num:
                return True
        return False


def clopper_pearson(successes: int, trials: int, confidence: float = 0.99):
    """Exact binomial confidence interval from beta quantiles."""
    if trials < 1:
        raise ValidationError("need at least one trial")
    alpha = 1.0 - confidence
    lo = 0.0 if successes == 0 else float(
        beta.ppf(alpha / 2, successes, trials - successes + 1)
    )
    hi = 1.0 if successes == trials else float(
        beta.ppf(1 - alpha / 2, successes + 1, trials - successes)
    )
    return lo, hi


def empirical_rate(
    runner: Callable[[object], bool],
    trials: int,
    master_seed: int,
    confidence: float = 0.99,
):
    """Acceptance fraction over derived-seed trials with an exact
    binomial confidence interval."""
    if trials < 1:
        raise ValidationError("need at least one trial")
    successes = sum(
        1 for i in range(trials) if runner(generator(master_seed, i))
    )
    return successes / trials, clopper_pearson(successes, trials, confidence)


def distinguishability(
    system: EquationSystem,
    n: int,
    P: WordSet,
    eps: Fraction,
    cap: int = DEFAULT_STATE_CAP,
) -> Optional[Fraction]:
    """Least local distance between a solution's view and the view of any
    tuple at global distance >= eps, by full enumeration; None when no
    tuple is that far out."""
    counts = min_distance_counts(system, n, cap)
    far_ranks = [i for i, c in enumerate(counts) if Fraction(c, n) >= eps]
    if not far_ranks:
        return None
    sol_dists = dedup_distributions(
        local_distribution(s, P) for s in enumerate_solutions(system, n, cap)
    )
    far_dists = dedup_distributions(
        local_distribution(tuple_by_rank(n, system.d, rank), P)
        for rank in far_ranks
    )
    return min(
        tv_distance(a, b) for a in sol_dists for b in far_dists
    )


def far_tuple_ranks(
    system: EquationSystem,
    n: int,
    eps: Fraction,
    cap: int = DEFAULT_STATE_CAP,
) -> list[int]:
    """Lexicographic ranks of all tuples at global distance >= eps from
    every solution."""
    counts = min_distance_counts(system, n, cap)
    return [i for i, c in enumerate(counts) if Fraction(c, n) >= eps]


@dataclass(frozen=True)
class DeterministicMachine:
    """A scripted oracle machine: a name, a query budget, and a run
    function (n, oracle) -> accept."""

    name: str
    q: int
    run: Callable[[int, OracleTuple], bool]


def transcript_census(
    machine: DeterministicMachine,
    n: int,
    d: int,
    cap: int = DEFAULT_STATE_CAP,
):
    """Run the machine on every graph of the given shape and bucket the
    transcripts by r = |V| - #components.

    Returns (buckets, verdicts): buckets maps r to the set of distinct
    transcripts, verdicts maps each transcript to the set of verdicts
    seen for it (a singleton when the machine is honestly deterministic).
    """
    check_state_cap(n, d, cap)
    import itertools

    from .perms import Permutation, all_perm_images

    images = all_perm_images(n)
    buckets: dict[int, set[PartialSGraph]] = {}
    verdicts: dict[PartialSGraph, set[bool]] = {}
    for combo in itertools.product(images, repeat=d):
        t = PermTuple(tuple(Permutation(im) for im in combo))
        o = OracleTuple(t)
        accepted = machine.run(n, o)
        if o.query_count > machine.q:
            raise AssertionError(
                f"machine {machine.name} used {o.query_count} queries, budget {machine.q}"
            )
        h = o.transcript()
        buckets.setdefault(h.r(), set()).add(h)
        verdicts.setdefault(h, set()).add(accepted)
    return buckets, verdicts


def census_bound(q: int, r: int, n: int) -> int:
    """Ceiling on the number of distinct transcripts with a given rank:
    C(q, r) * n^r * (2q)^(q - r)."""
    return math.comb(q, r) * n**r * (2 * q) ** (q - r)
