"""Named equation systems transcribed from standard presentations.

Supported presets:

    comm:d       pairwise commutation of d letters (free abelian group)
    bs:m,n       X Y^m = Y^n X (Baumslag-Solitar family, m, n integers)
    surface:g    single long relation [s1,s2]...[s_{2g-1},s_{2g}] = 1
    heisenberg   XY = YXZ, XZ = ZX, YZ = ZY (integral Heisenberg group)
    sl:m         Steinberg-style presentation of SL_m(Z), m >= 2
    abels:p      Abels' group over Z[1/p], p prime (7 letters, 15 equations)
"""

from __future__ import annotations

from .errors import ValidationError
from .words import EMPTY_WORD, EquationSystem, Word, concat, invert, word


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def commutator(a: Word, b: Word) -> Word:
    return concat(concat(a, b), concat(invert(a), invert(b)))


def comm(d: int) -> EquationSystem:
    """One commutation equation per unordered pair of letters."""
    if d < 1:
        raise ValidationError("comm preset needs d >= 1")
    equations = tuple(
        (word(i, j), word(j, i)) for i in range(1, d + 1) for j in range(i + 1, d + 1)
    )
    names = ("X", "Y") if d == 2 else tuple(f"s{i}" for i in range(1, d + 1))
    return EquationSystem(d=d, equations=equations, names=names)


def bs(m: int, n: int) -> EquationSystem:
    """X Y^m = Y^n X over letters X, Y."""
    x, y = word(1), word(2)
    return EquationSystem(
        d=2,
        equations=((concat(x, y**m), concat(y**n, x)),),
        names=("X", "Y"),
    )


def surface(g: int) -> EquationSystem:
    """Product of g commutators of consecutive letter pairs, set to 1."""
    if g < 1:
        raise ValidationError("surface preset needs genus g >= 1")
    lhs = EMPTY_WORD
    for i in range(g):
        lhs = concat(lhs, commutator(word(2 * i + 1), word(2 * i + 2)))
    return EquationSystem(
        d=2 * g,
        equations=((lhs, EMPTY_WORD),),
        names=tuple(f"s{i}" for i in range(1, 2 * g + 1)),
    )


def heisenberg() -> EquationSystem:
    x, y, z = word(1), word(2), word(3)
    return EquationSystem(
        d=3,
        equations=(
            (concat(x, y), concat(concat(y, x), z)),
            (concat(x, z), concat(z, x)),
            (concat(y, z), concat(z, y)),
        ),
        names=("X", "Y", "Z"),
    )


def sl(m: int) -> EquationSystem:
    """Elementary-matrix presentation of SL_m(Z).

    Letters s_ij, i != j, in lexicographic order. Commutation equations
    for distinct letter pairs with j != k and i != l (one per unordered
    pair), the relations s_ij s_jk = s_ik s_jk s_ij for all ordered
    triples of distinct indices, and (s_12 s_21^-1 s_12)^4 = 1.
    """
    if m < 2:
        raise ValidationError("sl preset needs m >= 2")
    pairs = [(i, j) for i in range(1, m + 1) for j in range(1, m + 1) if i != j]
    idx = {pair: pos + 1 for pos, pair in enumerate(pairs)}

    def s(i: int, j: int) -> Word:
        return word(idx[(i, j)])

    equations = []
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            (i, j), (k, l) = pairs[a], pairs[b]
            if j != k and i != l:
                equations.append((concat(s(i, j), s(k, l)), concat(s(k, l), s(i, j))))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            for k in range(1, m + 1):
                if len({i, j, k}) == 3:
                    equations.append(
                        (
                            concat(s(i, j), s(j, k)),
                            concat(concat(s(i, k), s(j, k)), s(i, j)),
                        )
                    )
    core = concat(concat(s(1, 2), invert(s(2, 1))), s(1, 2))
    equations.append((core**4, EMPTY_WORD))
    names = tuple(f"s{i}{j}" for i, j in pairs)
    return EquationSystem(d=m * (m - 1), equations=tuple(equations), names=names)


def abels(p: int) -> EquationSystem:
    """Abels' group over Z[1/p] on the letters d2 d3 s12 s13 s23 s24 s34."""
    if not _is_prime(p):
        raise ValidationError(f"abels preset needs a prime, got {p}")
    names = ("d2", "d3", "s12", "s13", "s23", "s24", "s34")
    d2, d3, s12, s13, s23, s24, s34 = (word(i) for i in range(1, 8))
    equations = (
        (concat(d2, d3), concat(d3, d2)),
        (concat(s12, s34), concat(s34, s12)),
        (concat(s23, s12), concat(concat(s12, s23), s13)),
        (concat(s34, s23), concat(concat(s23, s34), s24)),
        (concat(s13, s12), concat(s12, s13)),
        (concat(s13, s23), concat(s23, s13)),
        (concat(s24, s23), concat(s23, s24)),
        (concat(s24, s34), concat(s34, s24)),
        (concat(s13, s24), concat(s24, s13)),
        (concat(s12, d2), concat(d2, s12**p)),
        (concat(s12, d3), concat(d3, s12)),
        (concat(d2, s23), concat(s23**p, d2)),
        (concat(s23, d3), concat(d3, s23**p)),
        (concat(s34, d2), concat(d2, s34)),
        (concat(d3, s34), concat(s34**p, d3)),
    )
    return EquationSystem(d=7, equations=equations, names=names)


_PRESETS = {
    "comm": (comm, 1),
    "bs": (bs, 2),
    "surface": (surface, 1),
    "heisenberg": (heisenberg, 0),
    "sl": (sl, 1),
    "abels": (abels, 1),
}


def preset(spec: str) -> EquationSystem:
    """Build a preset from a spec string like 'comm:2' or 'bs:2,3'."""
    name, _, arg_src = spec.partition(":")
    name = name.strip()
    if name not in _PRESETS:
        raise ValidationError(f"unknown preset {name!r}; known: {sorted(_PRESETS)}")
    builder, arity = _PRESETS[name]
    args: list[int] = []
    if arg_src.strip():
        try:
            args = [int(a) for a in arg_src.split(",")]
        except ValueError:
            raise ValidationError(f"preset parameters must be integers: {arg_src!r}")
    if len(args) != arity:
        raise ValidationError(f"preset {name!r} takes {arity} integer parameter(s)")
    return builder(*args)


def preset_names() -> list[str]:
    return sorted(_PRESETS)
