import random
from fractions import Fraction as F

import pytest

from infoshare.core import CapacityError, StructuralError, Universe
from infoshare.general_mechanism import (
    SubgroupValueFn,
    coverage_allocate,
    general_mechanism,
    make_coverage_value,
    phi,
    phi_vector,
)
from infoshare.generators import random_monotone_value

import oracles

U = Universe(tuple("abcd"))
e = U.encode


def test_coverage_table_two_players():
    V = make_coverage_value([e("ab"), e("bc")])
    assert V.table == (0, 2, 2, 3)
    assert phi_vector(V, 0b11) == (1, 1)


def test_coverage_three_players():
    V = make_coverage_value([e("ab"), e("bc"), e("c")])
    # bitmask order: {}, {1}, {2}, {1,2}, {3}, {1,3}, {2,3}, {1,2,3}
    assert V.table == (0, 2, 2, 3, 1, 3, 2, 3)
    assert phi_vector(V, 0b111) == (1, 1, 1)
    assert general_mechanism(V, (False, True, True)) == (0, 0, 0)


def test_coverage_special_shapes():
    V = make_coverage_value([e("a"), e("b"), e("c")])
    assert all(V(S) == bin(S).count("1") for S in range(8))
    V = make_coverage_value([e("a"), e("ab")])
    assert V(0b11) == V(0b10)


def test_singleton_coalition_gets_zero():
    V = make_coverage_value([e("ab"), e("bc")])
    assert phi(V, 0b01, 0) == 0
    with pytest.raises(StructuralError):
        phi(V, 0b01, 1)


def test_nobody_cooperates():
    V = make_coverage_value([e("ab"), e("bc")])
    assert general_mechanism(V, (False, False)) == (0, 0)


def test_table_validation():
    with pytest.raises(StructuralError):
        SubgroupValueFn(2, (0, 1, 1))
    with pytest.raises(StructuralError):
        SubgroupValueFn(2, (1, 1, 1, 1))
    with pytest.raises(StructuralError):
        SubgroupValueFn(2, (0, 2, 1, 1))
    with pytest.raises(CapacityError):
        make_coverage_value([0] * 17)


def test_coverage_allocate():
    reports = [e("ab"), e("bc")]
    assert coverage_allocate(reports, (1, 1)) == (e("abc"), e("abc"))
    assert coverage_allocate(reports, (0, 0)) == tuple(reports)
    three = [e("ab"), e("bc"), e("c")]
    out = coverage_allocate(three, (1, 1, 1))
    assert out == (e("abc"), e("abc"), e("ac"))
    with pytest.raises(StructuralError):
        coverage_allocate(reports, (F(1, 2), 0))
    with pytest.raises(StructuralError):
        coverage_allocate(reports, (2, 0))


def test_phi_matches_second_enumeration():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 4)
        V = random_monotone_value(rng, n)
        for S in range(1, 1 << n):
            members = [m for m in range(n) if S >> m & 1]
            for i in members:
                assert phi(V, S, i) == oracles.phi_by_combinations(V.table, n, members, i)


def test_phi_bounds():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(1, 4)
        V = random_monotone_value(rng, n)
        S = V.everyone
        for i in range(n):
            f = phi(V, S, i)
            own = max(V(T) - V(T & ~(1 << i)) for T in range(1 << n) if T >> i & 1)
            assert 0 <= f <= own
