"""Rewardable-contribution mechanism over a monotone coalition value table.

Coalitions are bitmasks over player indices: bit ``i`` set means player ``i``
belongs to the coalition. ``table[S]`` is the value of coalition ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import CapacityError, Mask, Rational, StructuralError, first_k, popcount, submasks, union_all

MAX_PLAYERS = 16


@dataclass(frozen=True)
class SubgroupValueFn:
    n: int
    table: tuple[Rational, ...]

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError("need at least one player")
        if self.n > MAX_PLAYERS:
            raise CapacityError(f"{self.n} players exceeds the table limit of {MAX_PLAYERS}")
        table = tuple(self.table)
        if len(table) != 1 << self.n:
            raise StructuralError(f"table has {len(table)} entries, expected {1 << self.n}")
        if table[0] != 0:
            raise StructuralError("the empty coalition must have value 0")
        for s in range(1, len(table)):
            for i in range(self.n):
                if s >> i & 1 and table[s ^ (1 << i)] > table[s]:
                    raise StructuralError(
                        f"value table is not monotone: V({_fmt(s ^ (1 << i))}) > V({_fmt(s)})"
                    )
        object.__setattr__(self, "table", table)

    def __call__(self, coalition: Mask) -> Rational:
        return self.table[coalition]

    @property
    def everyone(self) -> Mask:
        return (1 << self.n) - 1


def _fmt(s: Mask) -> str:
    return "{" + ",".join(str(i + 1) for i in range(s.bit_length()) if s >> i & 1) + "}"


def phi(V: SubgroupValueFn, S: Mask, i: int) -> Rational:
    """Best over coalitions ``T`` within ``S`` containing ``i`` of the smaller of
    ``V(T) - V({i})`` and ``V(T) - V(T - {i})``."""
    bit = 1 << i
    if not S & bit:
        raise StructuralError(f"player {i + 1} is not in coalition {_fmt(S)}")
    alone = V(bit)
    best = None
    for rest in submasks(S & ~bit):
        T = rest | bit
        term = min(V(T) - alone, V(T) - V(rest))
        if best is None or term > best:
            best = term
    return best


def phi_vector(V: SubgroupValueFn, S: Mask) -> tuple[Rational, ...]:
    """Per-player rewardable contribution; 0 for players outside ``S``."""
    return tuple(phi(V, S, i) if S >> i & 1 else 0 for i in range(V.n))


def coalition_of(participating: Sequence[bool]) -> Mask:
    return sum(1 << i for i, p in enumerate(participating) if p)


def general_mechanism(V: SubgroupValueFn, participating: Sequence[bool]) -> tuple[Rational, ...]:
    if len(participating) != V.n:
        raise StructuralError(f"expected {V.n} participation flags, got {len(participating)}")
    return phi_vector(V, coalition_of(participating))


def make_coverage_value(sets: Sequence[Mask]) -> SubgroupValueFn:
    """``V(S) = |union of the sets of players in S|``."""
    n = len(sets)
    if n > MAX_PLAYERS:
        raise CapacityError(f"{n} players exceeds the table limit of {MAX_PLAYERS}")
    unions = [0] * (1 << n)
    for s in range(1, 1 << n):
        low = (s & -s).bit_length() - 1
        unions[s] = unions[s & (s - 1)] | sets[low]
    return SubgroupValueFn(n, tuple(popcount(u) for u in unions))


def coverage_allocate(reports: Sequence[Mask], phis: Sequence[Rational]) -> tuple[Mask, ...]:
    """Give each player its ``phi_i`` lowest-ranked elements from the others' union."""
    if len(reports) != len(phis):
        raise StructuralError("reports and phi vector differ in length")
    union = union_all(reports)
    out = []
    for i, (x, f) in enumerate(zip(reports, phis)):
        if Fraction(f).denominator != 1:
            raise StructuralError(f"phi of player {i + 1} is not integral: {f}")
        spare = union & ~x
        if f > popcount(spare):
            raise StructuralError(f"phi of player {i + 1} ({f}) exceeds the {popcount(spare)} available elements")
        out.append(x | first_k(spare, int(f)))
    return tuple(out)
