"""Text format for equation systems.

Grammar (UTF-8, one declaration per line):

    letters <name>+
    <term> = <term>

where <term> is a whitespace-separated sequence of <name> or <name>^-1,
or the literal ``1`` for the empty word. ``#`` starts a comment. The
first significant line must be the ``letters`` declaration. The
canonical printer emits this same grammar, so parse(render(E)) == E.
"""

from __future__ import annotations

import re

from .errors import DslError
from .words import EMPTY_WORD, EquationSystem, Letter, Word

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _parse_term(tokens: list[str], index: dict[str, int], lineno: int, col0: int) -> Word:
    if tokens == ["1"]:
        return EMPTY_WORD
    letters = []
    for tok in tokens:
        name, sign = tok, 1
        if tok.endswith("^-1"):
            name, sign = tok[:-3], -1
        if tok == "1":
            raise DslError("literal 1 must stand alone in a term", lineno, col0)
        if name not in index:
            raise DslError(f"unknown letter {name!r}", lineno, col0)
        letters.append(Letter(index[name], sign))
    return Word(letters)


def parse_system(text: str) -> EquationSystem:
    """Parse DSL source into an EquationSystem; sides are stored reduced."""
    names: list[str] = []
    index: dict[str, int] = {}
    equations = []
    seen_letters = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if not seen_letters:
            parts = line.split()
            if parts[0] != "letters":
                raise DslError("first declaration must be 'letters <name>+'", lineno, 1)
            if len(parts) == 1:
                raise DslError("empty alphabet", lineno, len(raw))
            for name in parts[1:]:
                if not _NAME_RE.match(name):
                    raise DslError(f"invalid letter name {name!r}", lineno, raw.find(name) + 1)
                if name in index:
                    raise DslError(f"duplicate letter name {name!r}", lineno, raw.find(name) + 1)
                index[name] = len(names) + 1
                names.append(name)
            seen_letters = True
            continue
        if "=" not in line:
            raise DslError("expected '<term> = <term>'", lineno, 1)
        lhs_src, _, rhs_src = line.partition("=")
        if "=" in rhs_src:
            raise DslError("more than one '=' in equation", lineno, raw.find("=", raw.find("=") + 1) + 1)
        lhs_tokens = lhs_src.split()
        rhs_tokens = rhs_src.split()
        if not lhs_tokens or not rhs_tokens:
            raise DslError("empty equation side", lineno, raw.find("=") + 1)
        lhs = _parse_term(lhs_tokens, index, lineno, 1)
        rhs = _parse_term(rhs_tokens, index, lineno, raw.find("=") + 2)
        equations.append((lhs, rhs))
    if not seen_letters:
        raise DslError("missing 'letters' declaration", 1, 1)
    return EquationSystem(d=len(names), equations=tuple(equations), names=tuple(names))


def render_word(w: Word, names: tuple[str, ...]) -> str:
    if not len(w):
        return "1"
    return " ".join(
        names[g - 1] + ("" if s > 0 else "^-1") for g, s in w.letters
    )


def render(system: EquationSystem) -> str:
    """Canonical printer; inverse of parse_system."""
    lines = ["letters " + " ".join(system.names)]
    for lhs, rhs in system.equations:
        lines.append(f"{render_word(lhs, system.names)} = {render_word(rhs, system.names)}")
    return "\n".join(lines) + "\n"
