"""One-dimensional search: players holding intervals around a hidden target.

A non-participant is represented by ``None`` (it submits, and receives, the
whole real line) and always has benefit 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import BOTTOM, Rational, StructuralError


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise StructuralError(f"interval [{self.lo}, {self.hi}] has lo > hi")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, t) -> bool:
        return self.lo <= t <= self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class IntervalInstance:
    target: Fraction
    intervals: tuple[Interval, ...]

    def __post_init__(self):
        object.__setattr__(self, "target", Fraction(self.target))
        object.__setattr__(self, "intervals", tuple(self.intervals))
        if not self.intervals:
            raise StructuralError("an instance needs at least one player")
        for i, iv in enumerate(self.intervals):
            if self.target not in iv:
                raise StructuralError(f"interval {iv} of player {i + 1} does not contain the target {self.target}")

    @property
    def n(self) -> int:
        return len(self.intervals)

    def radius(self, i: int) -> Fraction:
        iv = self.intervals[i]
        return max(self.target - iv.lo, iv.hi - self.target)


@dataclass(frozen=True)
class ValueFunction:
    """Strictly decreasing value of an interval length, with its exact inverse."""

    name: str
    of_length: Callable[[Fraction], Fraction]
    inverse: Callable[[Fraction], Fraction]

    def shrink_for_gain(self, length: Fraction, gain: Fraction) -> Fraction:
        """How much ``length`` must shrink to raise the value by ``gain``."""
        return length - self.inverse(self.of_length(length) + gain)


LINEAR = ValueFunction("linear", lambda ell: -ell, lambda val: -val)
RECIPROCAL = ValueFunction("reciprocal", lambda ell: 1 / (1 + ell), lambda val: 1 / val - 1)


def interval_value(iv: Optional[Interval], t: Rational, value: ValueFunction = LINEAR):
    if iv is None or t not in iv:
        return BOTTOM
    return value.of_length(iv.length)


def _select(reports: Sequence[Optional[Interval]]) -> tuple[Optional[int], Optional[int]]:
    j = k = None
    for i, iv in enumerate(reports):
        if iv is None:
            continue
        if j is None:
            j = k = i
            continue
        a = reports[j]
        if a.lo < iv.lo or (a.lo == iv.lo and a.hi > iv.hi):
            j = i
        b = reports[k]
        if b.hi > iv.hi or (b.hi == iv.hi and b.lo < iv.lo):
            k = i
    return j, k


def one_dim_search(
    instance: IntervalInstance,
    participating: Sequence[bool],
    value: ValueFunction = LINEAR,
) -> tuple[Optional[Interval], ...]:
    """Reward the owners of the tightest left and right endpoints equally.

    ``j`` holds the largest left endpoint and ``k`` the smallest right one;
    when they differ, ``j`` trims its right end and ``k`` its left end by
    amounts worth the same value to each. Players reporting exactly the same
    interval as ``j`` (or ``k``) receive the same output.
    """
    if len(participating) != instance.n:
        raise StructuralError(f"expected {instance.n} participation flags, got {len(participating)}")
    reports = [iv if p else None for iv, p in zip(instance.intervals, participating)]
    out = list(reports)
    j, k = _select(reports)
    if j is None or j == k:
        return tuple(out)
    xj, xk = reports[j], reports[k]
    max_j = xj.hi - xk.hi
    max_k = xj.lo - xk.lo
    gain = min(
        value.of_length(xj.length - max_j) - value.of_length(xj.length),
        value.of_length(xk.length - max_k) - value.of_length(xk.length),
    )
    yj = Interval(xj.lo, xj.hi - value.shrink_for_gain(xj.length, gain))
    yk = Interval(xk.lo + value.shrink_for_gain(xk.length, gain), xk.hi)
    for i, iv in enumerate(reports):
        if iv == xj:
            out[i] = yj
        elif iv == xk:
            out[i] = yk
    return tuple(out)


def interval_benefits(
    instance: IntervalInstance,
    participating: Sequence[bool],
    outputs: Sequence[Optional[Interval]],
    value: ValueFunction = LINEAR,
) -> tuple[Fraction, ...]:
    v = []
    for iv, p, y in zip(instance.intervals, participating, outputs):
        if not p:
            v.append(Fraction(0))
            continue
        gained = interval_value(y, instance.target, value)
        if gained is BOTTOM:
            raise StructuralError(f"output {y} no longer contains the target")
        v.append(gained - value.of_length(iv.length))
    return tuple(v)
