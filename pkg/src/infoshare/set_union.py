"""Set union mechanisms for two, three and any number of players.

All functions take reports as bitmasks (see :mod:`infoshare.core`) and return
one output mask per player, in the original player order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .core import Mask, StructuralError, first_k, popcount, union_all

Allocation = tuple[Mask, ...]


def two_party(x1: Mask, x2: Mask) -> Allocation:
    """Exchange exclusive elements one-for-one until the smaller side runs out.

    The player with the smaller report (player 1 on ties) receives as many of
    the other's exclusive elements as it has exclusive elements of its own;
    the other player receives everything.
    """
    if popcount(x1) <= popcount(x2):
        return x1 | first_k(x2 & ~x1, popcount(x1 & ~x2)), x1 | x2
    return x1 | x2, x2 | first_k(x1 & ~x2, popcount(x2 & ~x1))


def three_party_disjoint(x1: Mask, x2: Mask, x3: Mask) -> Allocation:
    if x1 & x2 or x2 & x3 or x1 & x3:
        raise StructuralError("three_party_disjoint needs pairwise disjoint inputs")
    xs = (x1, x2, x3)
    m = min(popcount(x) for x in xs)
    shared = [first_k(x, m) for x in xs]
    pool = union_all(shared)
    y = [x | pool for x in xs]
    rest = [x & ~c for x, c in zip(xs, shared)]
    alive = [i for i in range(3) if rest[i]]
    if len(alive) == 2:
        a, b = alive
        ya, yb = two_party(rest[a], rest[b])
        y[a] |= ya
        y[b] |= yb
    return tuple(y)


class ThreePartyCase(Enum):
    CASE1 = 1
    CASE2 = 2
    CASE3 = 3


@dataclass(frozen=True)
class ThreePartyTrace:
    """Intermediate quantities of one three-party run, in relabelled roles.

    ``roles[r]`` is the original index of the player acting as player ``r + 1``.
    """

    roles: tuple[int, int, int]
    case: ThreePartyCase
    common: Mask
    s: int
    x2_shared: Mask
    x2_own: Mask
    x3_shared: Mask
    x3_own: Mask
    outputs: Allocation


def _three_party(x1: Mask, x2: Mask, x3: Mask) -> ThreePartyTrace:
    y = [x1, x2, x3]
    common = x1 & x2 & x3
    x = [xi & ~common for xi in y]

    # Each player receives s elements from the intersection of the other two;
    # the smallest pairwise intersection is used up.
    inter = [x[(i + 1) % 3] & x[(i + 2) % 3] for i in range(3)]
    s = min(popcount(m) for m in inter)
    outside = next(i for i in range(3) if popcount(inter[i]) == s)
    traded = 0
    for i in range(3):
        given = first_k(inter[i], s)
        y[i] |= given
        traded |= given
    x = [xi & ~traded for xi in x]

    a, b = sorted(j for j in range(3) if j != outside)
    p1 = outside
    p2, p3 = (a, b) if popcount(x[a]) >= popcount(x[b]) else (b, a)
    assert not x[p2] & x[p3]

    x2s, x2o = x[p2] & x[p1], x[p2] & ~x[p1]
    x3s, x3o = x[p3] & x[p1], x[p3] & ~x[p1]
    n2s, n2o, n3s, n3o = popcount(x2s), popcount(x2o), popcount(x3s), popcount(x3o)

    if n2s >= n3o and n2o >= n3s:
        case = ThreePartyCase.CASE1
        z = first_k(x2s, n3o)
        w = first_k(x2o, n3s)
        y[p2] |= x[p3]
        y[p3] |= z | w
        y[p1] |= w | x3o
        r1, r2 = two_party(x[p1] & ~x3s, x[p2] & ~w)
        y[p1] |= r1
        y[p2] |= r2
    elif n3o >= n2s and n2o >= n3s:
        case = ThreePartyCase.CASE2
        w = first_k(x2o, n3s)
        z = first_k(x3o, n2s)
        y[p2] |= x3s | z
        y[p3] |= x2s | w
        y[p1] |= z | w
        r1, r2, r3 = three_party_disjoint(x[p1] & ~(x2s | x3s), x2o & ~w, x3o & ~z)
        y[p1] |= r1
        y[p2] |= r2
        y[p3] |= r3
    else:
        # Remaining quadrant; the fourth one would contradict |x_2| >= |x_3|.
        case = ThreePartyCase.CASE3
        w = first_k(x2s, n3o)
        z = first_k(x3s, n2o)
        y[p2] |= x3o | z
        y[p3] |= x2o | w
        y[p1] |= x2o | x3o
        r2, r3 = two_party(x2s & ~w, x3s & ~z)
        y[p2] |= r2
        y[p3] |= r3

    return ThreePartyTrace(
        roles=(p1, p2, p3),
        case=case,
        common=common,
        s=s,
        x2_shared=x2s,
        x2_own=x2o,
        x3_shared=x3s,
        x3_own=x3o,
        outputs=tuple(y),
    )


def three_party(x1: Mask, x2: Mask, x3: Mask) -> Allocation:
    return _three_party(x1, x2, x3).outputs


def three_party_trace(x1: Mask, x2: Mask, x3: Mask) -> ThreePartyTrace:
    return _three_party(x1, x2, x3)


def pareto_repair(reports: Sequence[Mask], outputs: Sequence[Mask]) -> Allocation:
    """Top up every player below the maximum benefit with the lowest-ranked spare elements.

    Each such player ends with ``min(V, |union \\ x_j|)`` new elements where
    ``V`` is the largest benefit in ``outputs``.
    """
    if len(reports) != len(outputs):
        raise StructuralError("reports and outputs differ in length")
    union = union_all(reports)
    v = [popcount(y & ~x) for x, y in zip(reports, outputs)]
    best = max(v, default=0)
    out = list(outputs)
    for j, (x, y) in enumerate(zip(reports, outputs)):
        target = min(best, popcount(union & ~x))
        if v[j] < target:
            out[j] = y | first_k(union & ~y, target - v[j])
    return tuple(out)


@dataclass(frozen=True)
class ComputeVTrace:
    """Result of the recursive uniform-benefit computation.

    ``values`` maps each coalition (sorted tuple of player indices, size >= 2)
    to its value; ``deficits[k]`` is ``|z_{-k} \\ x_k|`` for the full coalition.
    """

    value: int
    deficits: tuple[int, ...]
    values: dict[tuple[int, ...], int] = field(default_factory=dict)

    def without(self, k: int) -> int:
        """Value of the coalition with player ``k`` removed."""
        rest = tuple(i for i in range(len(self.deficits)) if i != k)
        return self.values.get(rest, 0)


def compute_v(reports: Sequence[Mask]) -> ComputeVTrace:
    n = len(reports)
    memo: dict[tuple[int, ...], int] = {}

    def solve(members: tuple[int, ...]) -> int:
        if len(members) <= 1:
            return 0
        if members in memo:
            return memo[members]
        union = union_all(reports[i] for i in members)
        best_drop = None
        best_deficit = 0
        for pos, k in enumerate(members):
            d = popcount(union & ~reports[k])
            rest = members[:pos] + members[pos + 1 :]
            cand = d + solve(rest)
            best_drop = cand if best_drop is None else min(best_drop, cand)
            best_deficit = max(best_deficit, d)
        memo[members] = value = min(best_drop, best_deficit)
        return value

    everyone = tuple(range(n))
    value = solve(everyone)
    union = union_all(reports)
    deficits = tuple(popcount(union & ~x) for x in reports) if n > 1 else (0,) * n
    return ComputeVTrace(value=value, deficits=deficits, values=dict(sorted(memo.items())))


@dataclass(frozen=True)
class MultipartyResult:
    outputs: Allocation
    participants: tuple[int, ...]
    trace: ComputeVTrace


def multiparty_aon_trace(reports: Sequence[Mask], true_sets: Sequence[Mask] | None = None) -> MultipartyResult:
    """All-or-nothing multiparty union; an empty report means non-participation.

    Participants each get ``min(V, |union \\ x_i|)`` new elements, the lowest
    ranked ones they lack. Passing ``true_sets`` enforces whole-or-empty reports.
    """
    if true_sets is not None:
        if len(true_sets) != len(reports):
            raise StructuralError("reports and true sets differ in length")
        for i, (x, s) in enumerate(zip(reports, true_sets)):
            if x not in (0, s):
                raise StructuralError(f"player {i + 1} report is neither its whole set nor empty")
    participants = tuple(i for i, x in enumerate(reports) if x)
    trace = compute_v([reports[i] for i in participants])
    union = union_all(reports)
    out = list(reports)
    for i in participants:
        spare = union & ~reports[i]
        out[i] = reports[i] | first_k(spare, min(trace.value, popcount(spare)))
    return MultipartyResult(outputs=tuple(out), participants=participants, trace=trace)


def multiparty_aon(reports: Sequence[Mask], true_sets: Sequence[Mask] | None = None) -> Allocation:
    return multiparty_aon_trace(reports, true_sets).outputs
