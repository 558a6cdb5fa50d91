"""Shared domain model: universes, set instances, profiles, benefits and utilities.

Element sets are stored as ``int`` bitmasks in which bit ``r`` stands for the
element at rank ``r`` of the universe order. "The first k elements" of a set is
then simply its k lowest set bits, which makes every selection step in the
mechanisms deterministic.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]
Mask = int


class StructuralError(ValueError):
    """Inputs violate a structural precondition (sizes, containment, ...)."""


class CapacityError(ValueError):
    """Instance is too large for an exhaustive routine."""


class ConfigurationError(ValueError):
    """Unsupported parameter value."""


@functools.total_ordering
class _Bottom:
    """The value of an infeasible output; compares below every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("bottom")

    def __repr__(self):
        return "BOTTOM"


BOTTOM = _Bottom()


def popcount(mask: Mask) -> int:
    return mask.bit_count()


def first_k(mask: Mask, k: int) -> Mask:
    """Return the ``k`` lowest-ranked elements of ``mask``."""
    if k < 0 or k > popcount(mask):
        raise StructuralError(f"cannot select {k} elements from a set of {popcount(mask)}")
    out = 0
    while k:
        low = mask & -mask
        out |= low
        mask ^= low
        k -= 1
    return out


def submasks(mask: Mask) -> Iterable[Mask]:
    """Yield every subset of ``mask``, ``mask`` itself first and 0 last."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def union_all(masks: Iterable[Mask]) -> Mask:
    out = 0
    for m in masks:
        out |= m
    return out


@dataclass(frozen=True)
class Universe:
    """Ordered list of distinct element identifiers; list order is the tie-break order."""

    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        if len(set(self.elements)) != len(self.elements):
            seen: set[str] = set()
            dups = [e for e in self.elements if e in seen or seen.add(e)]
            raise StructuralError(f"duplicate universe elements: {sorted(set(dups))}")

    def __len__(self) -> int:
        return len(self.elements)

    @functools.cached_property
    def _rank(self) -> dict[str, int]:
        return {e: r for r, e in enumerate(self.elements)}

    @property
    def full(self) -> Mask:
        return (1 << len(self.elements)) - 1

    def rank(self, element: str) -> int:
        try:
            return self._rank[element]
        except KeyError:
            raise StructuralError(f"element {element!r} is not in the universe") from None

    def encode(self, items: Iterable[str]) -> Mask:
        mask = 0
        for e in items:
            mask |= 1 << self.rank(e)
        return mask

    def decode(self, mask: Mask) -> list[str]:
        """Elements of ``mask`` listed in universe order."""
        if mask >> len(self.elements):
            raise StructuralError("mask has bits outside the universe")
        return [e for r, e in enumerate(self.elements) if mask >> r & 1]


@dataclass(frozen=True)
class SetInstance:
    universe: Universe
    true_sets: tuple[Mask, ...]

    def __post_init__(self):
        object.__setattr__(self, "true_sets", tuple(self.true_sets))
        if not self.true_sets:
            raise StructuralError("an instance needs at least one player")
        full = self.universe.full
        for i, s in enumerate(self.true_sets):
            if s < 0 or s & ~full:
                raise StructuralError(f"set of player {i + 1} is not a subset of the universe")

    @property
    def n(self) -> int:
        return len(self.true_sets)

    @classmethod
    def from_lists(cls, elements: Sequence[str], sets: Sequence[Iterable[str]]) -> "SetInstance":
        universe = Universe(tuple(elements))
        return cls(universe, tuple(universe.encode(s) for s in sets))

    def aon_profile(self, participating: Sequence[bool]) -> tuple[Mask, ...]:
        """Reports where each player submits either its whole set or nothing."""
        if len(participating) != self.n:
            raise StructuralError(f"expected {self.n} participation flags, got {len(participating)}")
        return tuple(s if p else 0 for s, p in zip(self.true_sets, participating))


def validate_profile(instance: SetInstance, reports: Sequence[Mask], *, aon: bool = False) -> None:
    """Raise unless every report is a subset of the true set (and whole-or-empty for ``aon``)."""
    if len(reports) != instance.n:
        raise StructuralError(f"expected {instance.n} reports, got {len(reports)}")
    for i, (x, s) in enumerate(zip(reports, instance.true_sets)):
        if x & ~s:
            raise StructuralError(f"player {i + 1} reports elements it does not own")
        if aon and x not in (0, s):
            raise StructuralError(f"player {i + 1} report is neither its whole set nor empty")


def information_benefit(
    instance: SetInstance,
    reports: Sequence[Mask],
    outputs: Sequence[Mask],
    *,
    basis: str = "report",
) -> tuple[int, ...]:
    """Number of new elements each player receives.

    With ``basis="report"`` this is ``|y_i \\ x_i|``; with ``basis="true"`` the
    output is compared with the player's true set instead, so a player who hid
    elements gets no credit for receiving them back.
    """
    if not (len(reports) == len(outputs) == instance.n):
        raise StructuralError(
            f"dimension mismatch: {instance.n} players, {len(reports)} reports, {len(outputs)} outputs"
        )
    if basis == "report":
        base = reports
    elif basis == "true":
        base = instance.true_sets
    else:
        raise ConfigurationError(f"unknown benefit basis {basis!r}")
    return tuple(popcount(y & ~b) for y, b in zip(outputs, base))


def utility_vector(v: Sequence[Rational]) -> tuple[Rational, ...]:
    """``u_i = v_i - max_{j != i} v_j``; a lone player's utility is its benefit."""
    n = len(v)
    if n == 0:
        raise StructuralError("empty benefit vector")
    if n == 1:
        return (v[0],)
    top = max(range(n), key=lambda i: v[i])
    second = max(v[i] for i in range(n) if i != top)
    return tuple(vi - (second if i == top else v[top]) for i, vi in enumerate(v))


def social_welfare(v: Sequence[Rational]) -> Rational:
    return sum(v, 0)
