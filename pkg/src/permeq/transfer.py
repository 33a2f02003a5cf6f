"""Presentation-change machinery: substitution maps between free groups,
their pullbacks on permutation tuples, and the per-instance bounds they
satisfy.

A map lambda sends each source letter to a word over the target
alphabet; its pullback turns a tuple over the target alphabet into one
over the source alphabet by evaluating the images. Correction data
witnesses, purely in the free group, that a round trip
lambda2(lambda1(s_i)) differs from s_i by a product of conjugated
relators; the machine validates it by word reduction and never touches
permutations for that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .dsl import render_word
from .errors import ValidationError
from .perms import (
    DEFAULT_STATE_CAP,
    PermTuple,
    enumerate_solutions,
    evaluate,
    evaluate_point,
    is_solution,
    tuple_distance,
)
from .words import (
    EMPTY_WORD,
    EquationSystem,
    Word,
    WordSet,
    concat,
    invert,
)


@dataclass(frozen=True)
class PresentationMap:
    """Letter substitution from a source alphabet into words over a
    target alphabet."""

    source_d: int
    target_d: int
    images: tuple[Word, ...]
    source_names: tuple[str, ...] = ()
    target_names: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.images) != self.source_d:
            raise ValidationError("need one image per source letter")
        for w in self.images:
            if w.max_generator() > self.target_d:
                raise ValidationError("image uses a letter outside the target alphabet")
        if not self.source_names:
            object.__setattr__(
                self, "source_names", tuple(f"s{i}" for i in range(1, self.source_d + 1))
            )
        if not self.target_names:
            object.__setattr__(
                self, "target_names", tuple(f"t{i}" for i in range(1, self.target_d + 1))
            )

    def apply(self, w: Word) -> Word:
        """Homomorphic extension to arbitrary source words."""
        out = EMPTY_WORD
        for gen, sign in w.letters:
            image = self.images[gen - 1]
            out = concat(out, image if sign > 0 else invert(image))
        return out

    def apply_set(self, ws: WordSet) -> WordSet:
        return WordSet(self.apply(w) for w in ws)

    def length_sum(self) -> int:
        """The Lipschitz constant of the pullback: total image length."""
        return sum(len(w) for w in self.images)


def pullback(lam: PresentationMap, t: PermTuple) -> PermTuple:
    """Tuple over the source alphabet whose i-th coordinate is the image
    word evaluated on t."""
    if t.d != lam.target_d:
        raise ValidationError("tuple does not match the map's target alphabet")
    return PermTuple(tuple(evaluate(w, t) for w in lam.images))


@dataclass(frozen=True)
class CorrectionTerm:
    v: Word
    r: Word
    eps: int

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValidationError("exponent must be +1 or -1")


@dataclass(frozen=True)
class CorrectionData:
    """Per source letter, the factorization terms v r^eps v^-1 whose
    product carries s_i to lambda2(lambda1(s_i))."""

    terms: tuple[tuple[CorrectionTerm, ...], ...]

    def conjugator_count(self) -> int:
        return sum(len(ts) for ts in self.terms)


def validate_correction(
    lam1: PresentationMap,
    lam2: PresentationMap,
    corr: CorrectionData,
    source_system: EquationSystem,
) -> None:
    """Check the factorization identity verbatim in the free group:
    lambda2(lambda1(s_i)) equals s_i times the listed product, and every
    r term is a relator of the source system."""
    if len(corr.terms) != lam1.source_d:
        raise ValidationError("need correction terms for every source letter")
    rel = source_system.relators()
    for i in range(1, lam1.source_d + 1):
        round_trip = lam2.apply(lam1.images[i - 1])
        prod = EMPTY_WORD
        for term in corr.terms[i - 1]:
            if term.r not in rel:
                raise ValidationError(
                    f"correction term for letter {i} uses a non-relator"
                )
            piece = concat(concat(term.v, term.r if term.eps > 0 else invert(term.r)), invert(term.v))
            prod = concat(prod, piece)
        expected = concat(Word([(i, 1)]), prod)
        if round_trip != expected:
            raise ValidationError(
                f"factorization identity fails for source letter {i}: "
                f"round trip {round_trip!r} != {expected!r}"
            )


def bad_set(t: PermTuple, system: EquationSystem) -> frozenset[int]:
    """Points moved by at least one relator; empty iff t is a solution."""
    if t.d != system.d:
        raise ValidationError("tuple arity does not match the system")
    rel = system.relators()
    return frozenset(
        x
        for x in range(1, t.n + 1)
        if any(evaluate_point(w, t, x) != x for w in rel)
    )


def check_pseudo_inverse_bound(
    t: PermTuple,
    lam1: PresentationMap,
    lam2: PresentationMap,
    corr: CorrectionData,
    source_system: EquationSystem,
    validate: bool = True,
) -> tuple[Fraction, Fraction, bool]:
    """Distance moved by the round trip against the correction-size bound:
    d(t, pull(lam1, pull(lam2, t))) <= (total conjugators) * |bad| / n.

    Sweeps that validated the correction once can pass validate=False.
    """
    if validate:
        validate_correction(lam1, lam2, corr, source_system)
    round_trip = pullback(lam1, pullback(lam2, t))
    lhs = tuple_distance(t, round_trip)
    rhs = Fraction(
        corr.conjugator_count() * len(bad_set(t, source_system)), t.n
    )
    return lhs, rhs, lhs <= rhs


def check_lipschitz_bound(
    h: PermTuple, h2: PermTuple, lam1: PresentationMap
) -> tuple[Fraction, Fraction, bool]:
    """Pullback contraction: d(pull(h), pull(h2)) <= C d(h, h2) with C
    the total image length."""
    lhs = tuple_distance(pullback(lam1, h), pullback(lam1, h2))
    rhs = lam1.length_sum() * tuple_distance(h, h2)
    return lhs, rhs, lhs <= rhs


def check_solution_transport(
    lam: PresentationMap,
    source_system: EquationSystem,
    target_system: EquationSystem,
    n: int,
    cap: int = DEFAULT_STATE_CAP,
) -> bool:
    """Every solution of the source system (over the map's target
    alphabet) pulls back to a solution of the target system (over the
    map's source alphabet), checked exhaustively at degree n."""
    if source_system.d != lam.target_d or target_system.d != lam.source_d:
        raise ValidationError("system alphabets do not match the map")
    return all(
        is_solution(pullback(lam, f), target_system)
        for f in enumerate_solutions(source_system, n, cap)
    )


def transfer_params(
    lam1: PresentationMap,
    lam2: PresentationMap,
    corr: CorrectionData,
    source_system: EquationSystem,
    P2: WordSet,
    delta2: Callable[[Fraction], Fraction],
    eps: Fraction,
) -> tuple[WordSet, Fraction]:
    """Word set and separation transferred through the presentation pair:
    P1 = lambda2(P2) union the source relators, and
    delta1 = min(delta2(eps / 2 C1), eps / 2 C2), where C1 is the image
    length sum of lambda1 and C2 the conjugator count. No correction
    terms (C2 = 0) leave only the first branch."""
    c1 = lam1.length_sum()
    if c1 == 0:
        raise ValidationError("lambda1 must use at least one letter")
    p1 = lam2.apply_set(P2).union(source_system.relators())
    candidates = [Fraction(delta2(Fraction(eps) / (2 * c1)))]
    c2 = corr.conjugator_count()
    if c2 > 0:
        candidates.append(Fraction(eps) / (2 * c2))
    return p1, min(candidates)


# --- file formats ---------------------------------------------------------


def _parse_term_tokens(src: str, index: dict[str, int]) -> Word:
    tokens = src.split()
    if tokens == ["1"]:
        return EMPTY_WORD
    letters = []
    for tok in tokens:
        name, sign = tok, 1
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        if name not in index:
            raise ValidationError(f"unknown letter {name!r} in word {src!r}")
        letters.append((index[name], sign))
    return Word(letters)


def load_presentation_map(text: str) -> PresentationMap:
    """JSON format: {"source_letters": [...], "target_letters": [...],
    "images": {"X": "a b^-1", ...}} with words in term syntax."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}")
    for key in ("source_letters", "target_letters", "images"):
        if key not in data:
            raise ValidationError(f"presentation map needs {key!r}")
    source = tuple(data["source_letters"])
    target = tuple(data["target_letters"])
    tindex = {name: i + 1 for i, name in enumerate(target)}
    images = []
    for name in source:
        if name not in data["images"]:
            raise ValidationError(f"missing image for letter {name!r}")
        images.append(_parse_term_tokens(data["images"][name], tindex))
    return PresentationMap(
        source_d=len(source),
        target_d=len(target),
        images=tuple(images),
        source_names=source,
        target_names=target,
    )


def dump_presentation_map(lam: PresentationMap) -> str:
    return json.dumps(
        {
            "source_letters": list(lam.source_names),
            "target_letters": list(lam.target_names),
            "images": {
                name: render_word(w, lam.target_names)
                for name, w in zip(lam.source_names, lam.images)
            },
        },
        indent=2,
    )


def load_correction(text: str, lam1: PresentationMap) -> CorrectionData:
    """JSON format: {"corrections": {"X": [{"v": ..., "r": ..., "eps": 1},
    ...], ...}} with words over the source alphabet in term syntax."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}")
    if "corrections" not in data:
        raise ValidationError("correction data needs 'corrections'")
    sindex = {name: i + 1 for i, name in enumerate(lam1.source_names)}
    terms = []
    for name in lam1.source_names:
        entry = data["corrections"].get(name, [])
        parsed = []
        for item in entry:
            parsed.append(
                CorrectionTerm(
                    v=_parse_term_tokens(item["v"], sindex),
                    r=_parse_term_tokens(item["r"], sindex),
                    eps=int(item["eps"]),
                )
            )
        terms.append(tuple(parsed))
    return CorrectionData(terms=tuple(terms))


# --- the shipped fixture --------------------------------------------------


def fixture_z2():
    """The two-presentation pair for the rank-2 free abelian group:

    source: letters X Y with the single commutation equation;
    target: letters a b c with ab = ba and c = ab;
    lambda1: X -> a, Y -> b;  lambda2: a -> X, b -> Y, c -> X Y.

    The round trip on the source side is the identity (no correction
    terms); on the target side, c travels to ab = c * (c^-1 (c b^-1 a^-1)^-1 c)
    so its correction list is the single conjugator c^-1 against the
    relator c b^-1 a^-1 with exponent -1.
    """
    from .presets import comm
    from .words import word

    e1 = comm(2)
    e2 = EquationSystem(
        d=3,
        equations=(
            (word(1, 2), word(2, 1)),
            (word(3), word(1, 2)),
        ),
        names=("a", "b", "c"),
    )
    lam1 = PresentationMap(
        source_d=2,
        target_d=3,
        images=(word(1), word(2)),
        source_names=("X", "Y"),
        target_names=("a", "b", "c"),
    )
    lam2 = PresentationMap(
        source_d=3,
        target_d=2,
        images=(word(1), word(2), word(1, 2)),
        source_names=("a", "b", "c"),
        target_names=("X", "Y"),
    )
    corr_source = CorrectionData(terms=((), ()))
    corr_target = CorrectionData(
        terms=(
            (),
            (),
            (CorrectionTerm(v=word(-3), r=word(3, -2, -1), eps=-1),),
        )
    )
    return {
        "source_system": e1,
        "target_system": e2,
        "lambda1": lam1,
        "lambda2": lam2,
        "correction_source": corr_source,
        "correction_target": corr_target,
    }
