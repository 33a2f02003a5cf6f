import pytest

from permeq.errors import ValidationError
from permeq.presets import abels, bs, comm, heisenberg, preset, sl, surface
from permeq.words import EMPTY_WORD, concat, invert, word


def test_comm_two_is_single_equation():
    system = comm(2)
    assert system.d == 2 and system.r == 1
    assert system.equations == ((word(1, 2), word(2, 1)),)
    assert system.names == ("X", "Y")


def test_comm_counts():
    assert comm(1).r == 0
    assert comm(3).r == 3
    assert comm(4).r == 6
    assert len(comm(3).relators()) == 3


def test_bs_shape():
    system = bs(2, 3)
    assert system.equations == ((word(1, 2, 2), word(2, 2, 2, 1)),)


def test_bs_negative_exponents():
    system = bs(-1, 2)
    lhs, rhs = system.equations[0]
    assert lhs == word(1, -2)
    assert rhs == word(2, 2, 1)


def test_bs_zero():
    assert bs(0, 2).equations[0][0] == word(1)


def test_surface_genus_one_matches_commutator_relator():
    assert surface(1).relators() == comm(2).relators()


def test_surface_genus_two():
    system = surface(2)
    assert system.d == 4 and system.r == 1
    lhs, rhs = system.equations[0]
    assert rhs == EMPTY_WORD
    expected = concat(
        concat(concat(word(1), word(2)), concat(invert(word(1)), invert(word(2)))),
        concat(concat(word(3), word(4)), concat(invert(word(3)), invert(word(4)))),
    )
    assert lhs == expected


def test_heisenberg():
    system = heisenberg()
    assert system.d == 3 and system.r == 3
    assert system.equations[0] == (word(1, 2), concat(word(2, 1), word(3)))


def test_sl3_letters_and_fourth_power_relator():
    system = sl(3)
    assert system.d == 6
    assert system.names == ("s12", "s13", "s21", "s23", "s31", "s32")
    # s12 s21^-1 s12 raised to the fourth, as a relator
    core = concat(concat(word(1), invert(word(3))), word(1))
    assert core**4 in system.relators()


def test_sl3_steinberg_relations():
    system = sl(3)
    # s12 s23 = s13 s23 s12
    assert (word(1, 4), word(2, 4, 1)) in system.equations


def test_sl2_minimal():
    system = sl(2)
    assert system.d == 2
    core = concat(concat(word(1), invert(word(2))), word(1))
    assert (core**4, EMPTY_WORD) in system.equations


def test_abels_equation_list():
    system = abels(2)
    assert system.d == 7 and system.r == 15
    names = system.names
    assert names == ("d2", "d3", "s12", "s13", "s23", "s24", "s34")
    d2, d3, s12 = word(1), word(2), word(3)
    assert system.equations[0] == (concat(d2, d3), concat(d3, d2))
    # s12 d2 = d2 s12^p at p = 2
    assert (concat(s12, d2), concat(d2, s12**2)) in system.equations


def test_abels_prime_powers():
    system = abels(3)
    s23, d3 = word(5), word(2)
    assert (concat(s23, d3), concat(d3, s23**3)) in system.equations


def test_preset_parameter_validation():
    with pytest.raises(ValidationError):
        preset("comm:0")
    with pytest.raises(ValidationError):
        preset("sl:1")
    with pytest.raises(ValidationError):
        preset("abels:4")
    with pytest.raises(ValidationError):
        preset("abels:1")
    with pytest.raises(ValidationError):
        preset("surface:0")
    with pytest.raises(ValidationError):
        preset("bs:2")
    with pytest.raises(ValidationError):
        preset("nonsense:1")
    with pytest.raises(ValidationError):
        preset("comm:x")


def test_preset_spec_parsing():
    assert preset("comm:2") == comm(2)
    assert preset("bs:2,3") == bs(2, 3)
    assert preset("heisenberg") == heisenberg()
