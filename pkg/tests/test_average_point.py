import random
from fractions import Fraction as F

import pytest

from infoshare.average_point import PointInstance, average_mechanism, point_value
from infoshare.core import BOTTOM, ConfigurationError, utility_vector

import oracles


def test_point_value_examples():
    assert point_value(F(1), F(1)) == 0
    assert point_value(F(0), F(1), 2) == -1
    assert point_value(F(0), F(3), 1) == -3
    assert point_value(None, F(1)) is BOTTOM
    with pytest.raises(ConfigurationError):
        point_value(F(0), F(1), 3)


def test_worked_example_full_participation():
    inst = PointInstance((0, 1, 2))
    out = average_mechanism(inst, (True,) * 3)
    assert out.outputs == (1, 1, 1)
    assert out.benefits == (1, 0, 1)
    assert utility_vector(out.benefits) == (0, -1, 0)


def test_player_one_drops():
    # the drop leaves the true average at 1, so player 2's own point is already exact
    inst = PointInstance((0, 1, 2))
    out = average_mechanism(inst, (False, True, True))
    assert out.outputs == (None, F(3, 2), F(3, 2))
    assert out.benefits == (0, F(-1, 4), F(3, 4))


def test_single_participant_learns_own_point():
    inst = PointInstance((F(1, 2),))
    out = average_mechanism(inst, (True,))
    assert out.outputs == (F(1, 2),) and out.benefits == (0,)


def test_unsupported_exponent():
    with pytest.raises(ConfigurationError):
        PointInstance((0, 1), p=3)


def test_true_average_cached_exactly():
    inst = PointInstance((F(1, 3), F(1, 6), 0))
    assert inst.true_average == F(1, 6)


def test_benefits_match_oracle():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 6)
        p = rng.choice((1, 2))
        pts = tuple(F(rng.randint(-20, 20), 4) for _ in range(n))
        flags = tuple(rng.random() < 0.7 for _ in range(n))
        if not any(flags):
            continue
        got = average_mechanism(PointInstance(pts, p), flags).benefits
        assert list(got) == oracles.average_benefits(pts, flags, p)
