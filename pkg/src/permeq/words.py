"""Reduced words over a signed alphabet, equation systems, and word sets.

Letters are pairs (gen, sign) with gen a 1-based generator index and sign
in {+1, -1}. Words are always stored reduced: no adjacent pair cancels.
The canonical order on words (length first, then letterwise with positive
sign before negative) fixes bit positions in all subset encodings
downstream, with the empty word always at index 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InfeasibleError, ValidationError

DEFAULT_BALL_CAP = 10**6


class Letter(NamedTuple):
    gen: int
    sign: int


def _letter_key(letter: Letter) -> tuple[int, int]:
    # positive sign sorts before negative
    return (letter.gen, 0 if letter.sign > 0 else 1)


class Word:
    """A reduced word in the free group over {s_1, ..., s_d}."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = (), _reduced: bool = False):
        items = tuple(Letter(g, s) for g, s in letters)
        for g, s in items:
            if g < 1:
                raise ValidationError(f"generator index must be >= 1, got {g}")
            if s not in (1, -1):
                raise ValidationError(f"letter sign must be +1 or -1, got {s}")
        if not _reduced:
            items = _reduce_letters(items)
        object.__setattr__(self, "letters", items)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** (-n)
        out = EMPTY_WORD
        for _ in range(n):
            out = concat(out, self)
        return out

    def sort_key(self):
        return (len(self.letters), tuple(_letter_key(l) for l in self.letters))

    def max_generator(self) -> int:
        return max((l.gen for l in self.letters), default=0)

    def is_positive(self) -> bool:
        """True when every letter carries sign +1."""
        return all(l.sign == 1 for l in self.letters)

    def __repr__(self) -> str:
        if not self.letters:
            return "Word()"
        body = " ".join(f"s{g}" + ("" if s > 0 else "^-1") for g, s in self.letters)
        return f"Word({body})"


def _reduce_letters(items: Sequence[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in items:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


EMPTY_WORD = Word(())


def word(*signed_gens: int) -> Word:
    """Build a word from signed generator indices, e.g. word(1, 2, -1, -2)."""
    return Word(Letter(abs(g), 1 if g > 0 else -1) for g in signed_gens)


def reduce(letters: Iterable[Letter]) -> Word:
    """Collapse all adjacent cancelling pairs; the result is unique."""
    return Word(letters)


def concat(w1: Word, w2: Word) -> Word:
    return Word(w1.letters + w2.letters)


def invert(w: Word) -> Word:
    return Word(
        tuple(Letter(g, -s) for g, s in reversed(w.letters)),
        _reduced=True,
    )


class WordSet:
    """A duplicate-free set of reduced words in canonical order.

    The order is total: by length, then letterwise by (generator, sign)
    with the positive sign first. Subset encodings are integers whose
    bit i refers to ``self.words[i]``.
    """

    __slots__ = ("words", "_index")

    def __init__(self, words: Iterable[Word] = ()):
        ordered = sorted(set(words), key=Word.sort_key)
        object.__setattr__(self, "words", tuple(ordered))
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(ordered)})

    def __setattr__(self, name, value):
        raise AttributeError("WordSet is immutable")

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self._index

    def __getitem__(self, i: int) -> Word:
        return self.words[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, WordSet) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def index(self, w: Word) -> int:
        return self._index[w]

    def encode(self, subset: Iterable[Word]) -> int:
        """Bit mask of a subset of this word set."""
        mask = 0
        for w in subset:
            mask |= 1 << self._index[w]
        return mask

    def decode(self, mask: int) -> tuple[Word, ...]:
        return tuple(w for i, w in enumerate(self.words) if mask >> i & 1)

    def union(self, other: "WordSet") -> "WordSet":
        return WordSet(self.words + other.words)

    def total_size(self) -> int:
        return sum(len(w) for w in self.words)

    def __repr__(self) -> str:
        return f"WordSet({list(self.words)!r})"


def ball(d: int, radius: int, cap: int = DEFAULT_BALL_CAP) -> WordSet:
    """All reduced words of length <= radius over d generators.

    The size is 1 + sum_{i=1..radius} 2d (2d-1)^(i-1); exceeding ``cap``
    raises InfeasibleError before any enumeration happens.
    """
    if d < 1:
        raise ValidationError("alphabet size must be >= 1")
    if radius < 0:
        raise ValidationError("radius must be >= 0")
    size = 1
    layer = 2 * d
    for _ in range(radius):
        size += layer
        layer *= 2 * d - 1
    if size > cap:
        raise InfeasibleError(
            f"ball(d={d}, radius={radius}) has {size} words, cap is {cap}",
            required=size,
            cap=cap,
        )
    alphabet = [Letter(g, s) for g in range(1, d + 1) for s in (1, -1)]
    out = [EMPTY_WORD]
    frontier = [EMPTY_WORD]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for letter in alphabet:
                if w.letters and w.letters[-1] == Letter(letter.gen, -letter.sign):
                    continue
                nxt.append(Word(w.letters + (letter,), _reduced=True))
        out.extend(nxt)
        frontier = nxt
    return WordSet(out)


def _default_names(d: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(1, d + 1))


@dataclass(frozen=True)
class EquationSystem:
    """An alphabet size, letter names, and a list of (lhs, rhs) word pairs.

    ``r`` keeps the original equation count with multiplicity: testers
    sample equations by index, so duplicates must keep their slots even
    though ``relators()`` deduplicates.
    """

    d: int
    equations: tuple[tuple[Word, Word], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.d < 1:
            raise ValidationError("alphabet size must be >= 1")
        names = self.names or _default_names(self.d)
        if len(names) != self.d:
            raise ValidationError(f"expected {self.d} letter names, got {len(names)}")
        if len(set(names)) != self.d:
            raise ValidationError("letter names must be distinct")
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "equations", tuple((lhs, rhs) for lhs, rhs in self.equations))
        for lhs, rhs in self.equations:
            for side in (lhs, rhs):
                if side.max_generator() > self.d:
                    raise ValidationError(
                        f"equation uses generator {side.max_generator()}, alphabet has {self.d}"
                    )

    @property
    def r(self) -> int:
        return len(self.equations)

    def relators(self) -> WordSet:
        """R_E = {reduce(lhs * rhs^-1)}, deduplicated, canonically ordered."""
        return WordSet(concat(lhs, invert(rhs)) for lhs, rhs in self.equations)

    def is_inverseless(self) -> bool:
        return all(
            lhs.is_positive() and rhs.is_positive() for lhs, rhs in self.equations
        )


def relators(system: EquationSystem) -> WordSet:
    return system.relators()


def to_inverseless(system: EquationSystem) -> EquationSystem:
    """Double the alphabet, rewrite s_i^-1 as the new letter s_{d+i}, and
    append the equations s_i s_{d+i} = 1. Exact duplicate equations are
    collapsed. The rewrite is reversible: new letter d+i stands for s_i^-1.
    """
    d = system.d

    def rewrite(w: Word) -> Word:
        return Word(
            tuple(Letter(g if s > 0 else d + g, 1) for g, s in w.letters),
            _reduced=True,
        )

    equations: list[tuple[Word, Word]] = []
    seen = set()
    for lhs, rhs in system.equations:
        pair = (rewrite(lhs), rewrite(rhs))
        if pair not in seen:
            seen.add(pair)
            equations.append(pair)
    for i in range(1, d + 1):
        pair = (word(i, d + i), EMPTY_WORD)
        if pair not in seen:
            seen.add(pair)
            equations.append(pair)
    names = tuple(system.names) + tuple(f"{name}_bar" for name in system.names)
    return EquationSystem(d=2 * d, equations=tuple(equations), names=names)


def all_reduced_words_of_length(d: int, length: int) -> Iterator[Word]:
    """Reduced words of exactly the given length, in canonical order."""
    if length == 0:
        yield EMPTY_WORD
        return
    alphabet = sorted(
        (Letter(g, s) for g in range(1, d + 1) for s in (1, -1)),
        key=_letter_key,
    )
    for prefix in itertools.product(alphabet, repeat=length):
        if any(
            prefix[i].gen == prefix[i + 1].gen and prefix[i].sign == -prefix[i + 1].sign
            for i in range(length - 1)
        ):
            continue
        yield Word(prefix, _reduced=True)
