from fractions import Fraction

import pytest

from infoshare.core import (
    BOTTOM,
    ConfigurationError,
    SetInstance,
    StructuralError,
    Universe,
    first_k,
    information_benefit,
    popcount,
    social_welfare,
    submasks,
    utility_vector,
    validate_profile,
)


def test_benefit_counts_new_elements():
    inst = SetInstance.from_lists("abc", ["a"])
    e = inst.universe.encode
    assert information_benefit(inst, [e("a")], [e("abc")]) == (2,)
    assert information_benefit(inst, [e("a")], [e("a")]) == (0,)
    assert information_benefit(inst, [0], [0]) == (0,)


def test_benefit_true_basis_ignores_hidden_elements_returned():
    inst = SetInstance.from_lists("abc", ["ab"])
    e = inst.universe.encode
    assert information_benefit(inst, [e("a")], [e("abc")]) == (2,)
    assert information_benefit(inst, [e("a")], [e("abc")], basis="true") == (1,)


def test_benefit_dimension_mismatch():
    inst = SetInstance.from_lists("ab", ["a", "b"])
    with pytest.raises(StructuralError):
        information_benefit(inst, [1], [1, 2])
    with pytest.raises(ConfigurationError):
        information_benefit(inst, [1, 2], [1, 2], basis="other")


def test_utility_examples():
    assert utility_vector((4, 4, 3)) == (0, 0, -1)
    assert utility_vector((5, 5, 5, 5)) == (0, 0, 0, 0)
    assert utility_vector((1, 0, 1)) == (0, -1, 0)
    assert utility_vector((3, 1)) == (2, -2)
    assert utility_vector((7,)) == (7,)
    with pytest.raises(StructuralError):
        utility_vector(())


def test_welfare_examples():
    assert social_welfare((4, 4, 3)) == 11
    assert social_welfare((0, 0)) == 0
    assert social_welfare((2, 2, 2)) == 6
    assert social_welfare((Fraction(1, 2), Fraction(1, 3))) == Fraction(5, 6)


def test_first_k_takes_lowest_ranks():
    assert first_k(0b10110, 2) == 0b00110
    assert first_k(0b10110, 0) == 0
    with pytest.raises(StructuralError):
        first_k(0b11, 3)


def test_submasks_enumerates_all():
    subs = list(submasks(0b1011))
    assert subs[0] == 0b1011 and subs[-1] == 0
    assert sorted(subs) == sorted({s for s in range(16) if s & ~0b1011 == 0})
    assert popcount(0b1011) == 3


def test_universe_rejects_duplicates_and_unknowns():
    with pytest.raises(StructuralError):
        Universe(("a", "b", "a"))
    u = Universe(("x", "y", "z"))
    assert u.decode(u.encode(["z", "x"])) == ["x", "z"]
    with pytest.raises(StructuralError):
        u.encode(["w"])
    with pytest.raises(StructuralError):
        u.decode(1 << 3)


def test_validate_profile():
    inst = SetInstance.from_lists("abc", ["ab", "c"])
    e = inst.universe.encode
    validate_profile(inst, [e("a"), e("c")])
    with pytest.raises(StructuralError):
        validate_profile(inst, [e("c"), e("c")])
    with pytest.raises(StructuralError):
        validate_profile(inst, [e("a"), e("c")], aon=True)
    validate_profile(inst, [0, e("c")], aon=True)
    assert inst.aon_profile((False, True)) == (0, e("c"))


def test_bottom_is_below_everything():
    assert BOTTOM < -10**9
    assert BOTTOM < Fraction(-1, 3)
    assert not BOTTOM < BOTTOM
    assert BOTTOM == BOTTOM
