import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from permeq.perms import PermTuple, Permutation
from permeq.rng import generator
from permeq.words import Letter, Word


def random_word(seed: int, d: int = 2, max_len: int = 12) -> Word:
    rng = generator(424242, seed)
    length = int(rng.integers(0, max_len + 1))
    return Word(
        Letter(int(rng.integers(1, d + 1)), 1 if rng.integers(0, 2) else -1)
        for _ in range(length)
    )


def random_permutation(rng, n: int) -> Permutation:
    return Permutation([int(x) + 1 for x in rng.permutation(n)])


def random_tuple(rng, n: int, d: int) -> PermTuple:
    return PermTuple(tuple(random_permutation(rng, n) for _ in range(d)))
