import pytest

from permeq.dsl import parse_system, render, render_word
from permeq.errors import DslError
from permeq.presets import preset
from permeq.words import EMPTY_WORD, word


def test_parse_commutator():
    system = parse_system("letters X Y\nX Y = Y X\n")
    assert system == preset("comm:2")
    assert system.d == 2 and system.r == 1


def test_parse_baumslag_solitar():
    system = parse_system("letters X Y\nX Y Y = Y Y Y X\n")
    assert system == preset("bs:2,3")


def test_parse_relator_form():
    system = parse_system("letters X\nX X X = 1\n")
    assert system.d == 1 and system.r == 1
    assert system.equations[0] == (word(1, 1, 1), EMPTY_WORD)


def test_parse_reduces_sides():
    system = parse_system("letters X Y\nX Y Y^-1 = X\n")
    assert system.equations[0] == (word(1), word(1))


def test_parse_comments_and_blanks():
    text = "# header\n\nletters X Y  # alphabet\n\nX Y = Y X # the equation\n"
    assert parse_system(text) == preset("comm:2")


def test_parse_unknown_letter():
    with pytest.raises(DslError) as exc:
        parse_system("letters X\nX Z = X\n")
    assert "Z" in str(exc.value) and "line 2" in str(exc.value)


def test_parse_empty_alphabet():
    with pytest.raises(DslError, match="empty alphabet"):
        parse_system("letters\nX = X\n")


def test_parse_missing_letters_line():
    with pytest.raises(DslError):
        parse_system("X Y = Y X\n")


def test_parse_bad_equation():
    with pytest.raises(DslError, match="line 2"):
        parse_system("letters X\nX X\n")
    with pytest.raises(DslError):
        parse_system("letters X\nX = X = X\n")
    with pytest.raises(DslError):
        parse_system("letters X\n = X\n")


def test_parse_literal_one_alone():
    with pytest.raises(DslError):
        parse_system("letters X\nX 1 = X\n")


def test_render_word_forms():
    assert render_word(EMPTY_WORD, ("X",)) == "1"
    assert render_word(word(1, -2), ("X", "Y")) == "X Y^-1"


@pytest.mark.parametrize(
    "spec",
    ["comm:1", "comm:2", "comm:4", "bs:2,3", "bs:-2,2", "surface:1", "surface:3",
     "heisenberg", "sl:2", "sl:3", "abels:2", "abels:5"],
)
def test_parse_render_round_trip(spec):
    system = preset(spec)
    assert parse_system(render(system)) == system


def test_render_parse_render_fixed_point():
    text = render(preset("heisenberg"))
    assert render(parse_system(text)) == text
