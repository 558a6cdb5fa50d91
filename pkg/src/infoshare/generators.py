"""Seeded instance generators and exhaustive enumerations for sweeps.

Distributions (stable across versions):

* set union: each element joins each player's set independently with
  probability 1/2;
* intervals: target ``k/2`` with ``k`` uniform in ``[-10, 10]``, left and
  right radii independently uniform over ``{0, 1/2, ..., 5}``;
* points: ``k/4`` with ``k`` uniform in ``[-20, 20]``;
* monotone tables: ``V(S) = sum of w_T over non-empty T within S`` with
  ``w_T = a/b``, ``a`` uniform in ``[0, 4]`` and ``b`` uniform in ``[1, 3]``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Iterator

from .average_point import PointInstance
from .core import CapacityError, Mask, SetInstance, Universe
from .general_mechanism import MAX_PLAYERS, SubgroupValueFn
from .interval_search import Interval, IntervalInstance

MAX_SET_PLAYERS = 16
MAX_UNIVERSE = 64


def element_names(m: int) -> tuple[str, ...]:
    return tuple(f"e{r + 1}" for r in range(m))


def random_sets(rng: random.Random, n: int, m: int) -> tuple[Mask, ...]:
    return tuple(rng.getrandbits(m) if m else 0 for _ in range(n))


def random_set_instance(rng: random.Random, n: int, m: int) -> SetInstance:
    if n < 1 or n > MAX_SET_PLAYERS or m < 0 or m > MAX_UNIVERSE:
        raise CapacityError(f"set-union generator supports 1..{MAX_SET_PLAYERS} players and <= {MAX_UNIVERSE} elements")
    return SetInstance(Universe(element_names(m)), random_sets(rng, n, m))


def random_interval_instance(rng: random.Random, n: int) -> IntervalInstance:
    if n < 1 or n > 64:
        raise CapacityError("interval generator supports 1..64 players")
    t = Fraction(rng.randint(-10, 10), 2)
    intervals = []
    for _ in range(n):
        left = Fraction(rng.randint(0, 10), 2)
        right = Fraction(rng.randint(0, 10), 2)
        intervals.append(Interval(t - left, t + right))
    return IntervalInstance(t, tuple(intervals))


def random_point_instance(rng: random.Random, n: int, p: int = 2) -> PointInstance:
    if n < 1 or n > 64:
        raise CapacityError("point generator supports 1..64 players")
    return PointInstance(tuple(Fraction(rng.randint(-20, 20), 4) for _ in range(n)), p)


def random_monotone_value(rng: random.Random, n: int) -> SubgroupValueFn:
    if n < 1 or n > MAX_PLAYERS:
        raise CapacityError(f"value-table generator supports 1..{MAX_PLAYERS} players")
    weights = [Fraction(0)] + [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(1, 1 << n)]
    table = []
    for S in range(1 << n):
        total = Fraction(0)
        T = S
        while T:
            total += weights[T]
            T = (T - 1) & S
        table.append(total)
    return SubgroupValueFn(n, tuple(table))


def all_set_profiles(n: int, m: int) -> Iterator[tuple[Mask, ...]]:
    """Every assignment of subsets of an ``m``-element universe to ``n`` players."""
    return itertools.product(range(1 << m), repeat=n)


def canonical_set_profiles(n: int, m: int) -> Iterator[tuple[Mask, ...]]:
    """One representative per class of profiles equal up to renaming elements.

    A profile is determined up to renaming by how many elements carry each
    membership pattern (which players own them). Elements are laid out in
    pattern order; universes with at most ``m`` used elements are covered.
    """
    patterns = list(range(1, 1 << n))

    def counts(idx: int, left: int) -> Iterator[tuple[int, ...]]:
        if idx == len(patterns):
            yield ()
            return
        for c in range(left + 1):
            for rest in counts(idx + 1, left - c):
                yield (c,) + rest

    for combo in counts(0, m):
        sets = [0] * n
        rank = 0
        for pattern, c in zip(patterns, combo):
            for _ in range(c):
                for i in range(n):
                    if pattern >> i & 1:
                        sets[i] |= 1 << rank
                rank += 1
        yield tuple(sets)
