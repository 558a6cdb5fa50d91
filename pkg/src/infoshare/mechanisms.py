"""Named mechanisms, including deliberately broken ones used as negative controls."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import average_point, general_mechanism, interval_search, set_union
from .core import Mask, StructuralError, popcount, union_all


def _arity(name: str, reports: Sequence[Mask], n: int) -> None:
    if len(reports) != n:
        raise StructuralError(f"{name} needs exactly {n} players, got {len(reports)}")


def two_party(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    _arity("two-party", reports, 2)
    return set_union.two_party(*reports)


def three_party(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    _arity("three-party", reports, 3)
    return set_union.three_party(*reports)


def multiparty_aon(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    return set_union.multiparty_aon(reports)


def coverage_general(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    """General mechanism on the coverage value of the non-empty reports."""
    V = general_mechanism.make_coverage_value(reports)
    phis = general_mechanism.general_mechanism(V, [bool(x) for x in reports])
    return general_mechanism.coverage_allocate(reports, phis)


# Negative controls -----------------------------------------------------------

def favor_first(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    """Player 1 receives everything, nobody else receives anything."""
    union = union_all(reports)
    return tuple(union if i == 0 and x else x for i, x in enumerate(reports))


def index_biased(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    """Like the multiparty mechanism, but the last participant gets one element less."""
    out = list(set_union.multiparty_aon(reports))
    last = max((i for i, x in enumerate(reports) if x), default=None)
    if last is not None and out[last] != reports[last]:
        gained = out[last] & ~reports[last]
        out[last] &= ~(1 << (gained.bit_length() - 1))
    return tuple(out)


def reversed_order_last(reports: Sequence[Mask]) -> tuple[Mask, ...]:
    """Like the multiparty mechanism, but the last participant is served in reverse order."""
    result = set_union.multiparty_aon_trace(reports)
    out = list(result.outputs)
    if result.participants:
        last = result.participants[-1]
        spare = union_all(reports) & ~reports[last]
        k = popcount(out[last] & ~reports[last])
        top = 0
        while k:
            high = 1 << (spare.bit_length() - 1)
            top |= high
            spare ^= high
            k -= 1
        out[last] = reports[last] | top
    return tuple(out)


def broken_compute_v(reports: Sequence[Mask]) -> int:
    """Ignores the withdrawal bound and returns the largest deficit."""
    trace = set_union.compute_v(reports)
    return max(trace.deficits, default=0)


def one_sided_search(instance, participating, value=interval_search.LINEAR):
    """Only the left-endpoint holder is rewarded."""
    fair = interval_search.one_dim_search(instance, participating, value)
    out = list(fair)
    for i, (iv, p) in enumerate(zip(instance.intervals, participating)):
        if p and fair[i] is not None and fair[i].lo != iv.lo:
            out[i] = iv
    return tuple(out)


def first_tie_only_search(instance, participating, value=interval_search.LINEAR):
    """Identical intervals are not treated alike: only the first copy is rewarded."""
    fair = interval_search.one_dim_search(instance, participating, value)
    out = list(fair)
    seen = set()
    for i, (iv, p) in enumerate(zip(instance.intervals, participating)):
        if p and fair[i] != iv:
            if iv in seen:
                out[i] = iv
            seen.add(iv)
    return tuple(out)


def leaky_average(instance, participating) -> average_point.AverageOutcome:
    """Non-participants are told the true average; participants get the submitted mean."""
    honest = average_point.average_mechanism(instance, participating)
    a_bar, p = instance.true_average, instance.p
    outputs = tuple(y if part else a_bar for y, part in zip(honest.outputs, participating))
    benefits = tuple(
        average_point.point_value(y, a_bar, p) - average_point.point_value(a, a_bar, p)
        for y, a in zip(outputs, instance.points)
    )
    return average_point.AverageOutcome(outputs, benefits)


def greedy_general(V, participating):
    """Everyone in the coalition is paid the full coalition surplus over its own value."""
    S = general_mechanism.coalition_of(participating)
    return tuple(V(S) - V(1 << i) if S >> i & 1 else 0 for i in range(V.n))


def broken_phi(V, S: Mask, i: int):
    """Player 1 is never rewarded; everyone else gets the whole coalition value."""
    return Fraction(0) if i == 0 else Fraction(V(S))


@dataclass(frozen=True)
class MechanismEntry:
    name: str
    kind: str
    fn: Callable
    control: bool = False
    aon_only: bool = False


REGISTRY: dict[str, MechanismEntry] = {
    e.name: e
    for e in [
        MechanismEntry("two-party", "set-union", two_party),
        MechanismEntry("three-party", "set-union", three_party),
        MechanismEntry("multiparty-aon", "set-union", multiparty_aon, aon_only=True),
        MechanismEntry("coverage-general", "set-union", coverage_general, aon_only=True),
        MechanismEntry("one-dim-search", "interval", interval_search.one_dim_search),
        MechanismEntry("average", "average", average_point.average_mechanism),
        MechanismEntry("general", "general", general_mechanism.general_mechanism),
        MechanismEntry("broken-favor-first", "set-union", favor_first, control=True),
        MechanismEntry("broken-index-biased", "set-union", index_biased, control=True, aon_only=True),
        MechanismEntry("broken-reversed-order", "set-union", reversed_order_last, control=True, aon_only=True),
        MechanismEntry("broken-one-sided-search", "interval", one_sided_search, control=True),
        MechanismEntry("broken-first-tie-search", "interval", first_tie_only_search, control=True),
        MechanismEntry("broken-leaky-average", "average", leaky_average, control=True),
        MechanismEntry("broken-greedy-general", "general", greedy_general, control=True),
    ]
}

DEFAULT_MECHANISM = {
    "set-union": "multiparty-aon",
    "interval": "one-dim-search",
    "average": "average",
    "general": "general",
}


def lookup(name: str, kind: str) -> MechanismEntry:
    if name not in REGISTRY:
        raise KeyError(f"unknown mechanism {name!r}; choose from {', '.join(sorted(REGISTRY))}")
    entry = REGISTRY[name]
    if entry.kind != kind:
        raise ValueError(f"mechanism {name!r} applies to {entry.kind} scenarios, not {kind}")
    return entry
