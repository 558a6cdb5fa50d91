"""Brute-force property checks.

Every checker returns a :class:`PropertyReport`. A failing report always
carries a counterexample with enough data to rerun the offending case.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import average_point, general_mechanism, interval_search, set_union
from .core import (
    Mask,
    Rational,
    SetInstance,
    information_benefit,
    popcount,
    submasks,
    union_all,
    utility_vector,
)


@dataclass
class PropertyReport:
    name: str
    passed: bool
    checked: int = 0
    counterexample: Optional[dict[str, Any]] = None
    skipped: bool = False
    note: str = ""
    skipped_instances: int = 0

    @property
    def verdict(self) -> str:
        if self.skipped:
            return "skipped"
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"property": self.name, "verdict": self.verdict, "checked": self.checked}
        if self.skipped_instances:
            out["skipped_instances"] = self.skipped_instances
        if self.note:
            out["note"] = self.note
        if self.counterexample is not None:
            out["counterexample"] = _jsonable(self.counterexample)
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, interval_search.Interval):
        return [str(obj.lo), str(obj.hi)]
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    return str(obj)


def skipped(name: str, note: str) -> PropertyReport:
    return PropertyReport(name, passed=True, skipped=True, note=note)


def merge(name: str, reports: Sequence[PropertyReport]) -> PropertyReport:
    """Combine per-instance reports; the first failure (in input order) wins."""
    checked = sum(r.checked for r in reports)
    n_skipped = sum(1 for r in reports if r.skipped)
    for r in reports:
        if not r.passed and not r.skipped:
            return PropertyReport(name, False, checked, r.counterexample, note=r.note, skipped_instances=n_skipped)
    notes = sorted({r.note for r in reports if r.note})
    return PropertyReport(
        name,
        True,
        checked,
        skipped=bool(reports) and n_skipped == len(reports),
        note="; ".join(notes),
        skipped_instances=n_skipped,
    )


# ---------------------------------------------------------------------------
# all-or-nothing games

@dataclass(frozen=True)
class AonGame:
    """Benefit vector as a function of who participates."""

    name: str
    n: int
    benefits: Callable[[tuple[bool, ...]], tuple[Rational, ...]]
    instance: Any = None


SetMechanism = Callable[[Sequence[Mask]], tuple[Mask, ...]]


def run_set_mechanism(mechanism: SetMechanism, reports: Sequence[Mask], *, repair: bool = False) -> tuple[Mask, ...]:
    out = tuple(mechanism(reports))
    return set_union.pareto_repair(reports, out) if repair else out


def set_union_game(instance: SetInstance, mechanism: SetMechanism = set_union.multiparty_aon, *, repair=False) -> AonGame:
    def benefits(flags):
        reports = instance.aon_profile(flags)
        out = run_set_mechanism(mechanism, reports, repair=repair)
        return information_benefit(instance, reports, out, basis="true")

    return AonGame(getattr(mechanism, "__name__", "set-mechanism"), instance.n, benefits, instance)


def interval_game(instance, mechanism=interval_search.one_dim_search, value=interval_search.LINEAR) -> AonGame:
    def benefits(flags):
        out = mechanism(instance, flags, value)
        return interval_search.interval_benefits(instance, flags, out, value)

    return AonGame(getattr(mechanism, "__name__", "interval-mechanism"), instance.n, benefits, instance)


def average_game(instance, mechanism=average_point.average_mechanism) -> AonGame:
    return AonGame(
        getattr(mechanism, "__name__", "average-mechanism"),
        instance.n,
        lambda flags: mechanism(instance, flags).benefits,
        instance,
    )


def general_game(V, mechanism=general_mechanism.general_mechanism) -> AonGame:
    return AonGame(getattr(mechanism, "__name__", "general-mechanism"), V.n, lambda flags: mechanism(V, flags), V)


def check_truthful_aon(game: AonGame) -> PropertyReport:
    """For every player and every participation pattern of the others,
    participating must be at least as good as staying out."""
    n = game.n
    cache: dict[tuple[bool, ...], tuple] = {}

    def utilities(flags):
        if flags not in cache:
            cache[flags] = utility_vector(game.benefits(flags))
        return cache[flags]

    checked = 0
    for i in range(n):
        for others in itertools.product((True, False), repeat=n - 1):
            inside = others[:i] + (True,) + others[i:]
            outside = others[:i] + (False,) + others[i:]
            u_in, u_out = utilities(inside)[i], utilities(outside)[i]
            checked += 1
            if u_out > u_in:
                return PropertyReport(
                    "truthful-aon",
                    False,
                    checked,
                    {"player": i + 1, "participating": list(inside), "utility_in": u_in, "utility_out": u_out},
                )
    return PropertyReport("truthful-aon", True, checked)


def replay_truthful_aon(game: AonGame, counterexample: dict) -> bool:
    """True if the counterexample still shows a strictly profitable withdrawal."""
    i = counterexample["player"] - 1
    inside = tuple(bool(f) for f in counterexample["participating"])
    outside = inside[:i] + (False,) + inside[i + 1 :]
    return utility_vector(game.benefits(outside))[i] > utility_vector(game.benefits(inside))[i]


# ---------------------------------------------------------------------------
# set-union checks

def check_truthful_subsets(
    mechanism: SetMechanism,
    instance: SetInstance,
    max_universe: int = 6,
    *,
    repair: bool = False,
    basis: str = "true",
) -> PropertyReport:
    """Every player tries every subset of its true set against truthful others.

    Benefits default to the true-set basis: elements a player hid and got back
    are not counted as new.
    """
    name = "truthful-subsets"
    if len(instance.universe) > max_universe:
        return skipped(name, f"universe of {len(instance.universe)} exceeds {max_universe}")
    truth = instance.true_sets

    def utility(reports, i):
        out = run_set_mechanism(mechanism, reports, repair=repair)
        return utility_vector(information_benefit(instance, reports, out, basis=basis))[i]

    checked = 0
    for i in range(instance.n):
        honest = utility(truth, i)
        for sub in submasks(truth[i]):
            if sub == truth[i]:
                continue
            reports = truth[:i] + (sub,) + truth[i + 1 :]
            dev = utility(reports, i)
            checked += 1
            if dev > honest:
                return PropertyReport(
                    name,
                    False,
                    checked,
                    {
                        "true_sets": [instance.universe.decode(s) for s in truth],
                        "player": i + 1,
                        "deviation": instance.universe.decode(sub),
                        "utility_truthful": honest,
                        "utility_deviating": dev,
                    },
                )
    return PropertyReport(name, True, checked)


def replay_truthful_subsets(mechanism, instance: SetInstance, counterexample: dict, *, repair=False, basis="true") -> bool:
    i = counterexample["player"] - 1
    sub = instance.universe.encode(counterexample["deviation"])
    truth = instance.true_sets
    reports = truth[:i] + (sub,) + truth[i + 1 :]

    def utility(reps):
        out = run_set_mechanism(mechanism, reps, repair=repair)
        return utility_vector(information_benefit(instance, reps, out, basis=basis))[i]

    return utility(reports) > utility(truth)


def lemma2_violations(reports: Sequence[Mask], outputs: Sequence[Mask]) -> list[int]:
    """Players (0-based) breaking the Pareto characterization.

    With ``i`` a top-benefit player and ``V`` the largest benefit among the
    rest, every ``j != i`` must have exactly ``min(V, |union \\ x_j|)`` new
    elements. A lone player must receive everything available.
    """
    union = union_all(reports)
    pools = [popcount(union & ~x) for x in reports]
    v = [popcount(y & ~x) for x, y in zip(reports, outputs)]
    if not v:
        return []
    if len(v) == 1:
        return [] if v[0] == pools[0] else [0]
    top = max(range(len(v)), key=lambda i: v[i])
    second = max(v[j] for j in range(len(v)) if j != top)
    return [j for j in range(len(v)) if j != top and v[j] != min(second, pools[j])]


def pareto_dominating_vector(pools: Sequence[int], v: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Brute force over every benefit vector within the pool caps."""
    u = utility_vector(v)
    for cand in itertools.product(*(range(p + 1) for p in pools)):
        uc = utility_vector(cand)
        if all(a >= b for a, b in zip(uc, u)) and any(a > b for a, b in zip(uc, u)):
            return cand
    return None


def check_pareto(
    instance: SetInstance,
    reports: Sequence[Mask],
    outputs: Sequence[Mask],
    *,
    oracle_players: int = 3,
    oracle_pool: int = 6,
) -> PropertyReport:
    name = "pareto"
    reports, outputs = tuple(reports), tuple(outputs)
    union = union_all(reports)
    pools = [popcount(union & ~x) for x in reports]
    v = [popcount(y & ~x) for x, y in zip(reports, outputs)]
    bad = lemma2_violations(reports, outputs)
    decode = instance.universe.decode
    if bad:
        return PropertyReport(
            name,
            False,
            1,
            {
                "reports": [decode(x) for x in reports],
                "benefits": v,
                "pools": pools,
                "violating_players": [j + 1 for j in bad],
                "check": "characterization",
            },
        )
    if len(reports) > oracle_players or max(pools, default=0) > oracle_pool:
        return PropertyReport(name, True, 1, note="brute-force oracle skipped (capacity); characterization only")
    better = pareto_dominating_vector(pools, v)
    if better is not None:
        return PropertyReport(
            name,
            False,
            1,
            {"reports": [decode(x) for x in reports], "benefits": v, "dominated_by": list(better), "check": "oracle"},
        )
    return PropertyReport(name, True, 1)


def stable_v_oracle(reports: Sequence[frozenset]) -> int:
    """Largest uniform benefit level no player would walk away from.

    Searches downward from the largest deficit; a level ``W`` is accepted when
    ``min(W, d_k) >= W - W_{-k}`` for every player ``k``, where ``W_{-k}`` is
    the same search run on the coalition without ``k``.
    """
    players = list(reports)
    if len(players) <= 1:
        return 0
    deficits = []
    for k, xk in enumerate(players):
        others = set()
        for j, xj in enumerate(players):
            if j != k:
                others |= xj
        deficits.append(len(others - xk))
    without = [stable_v_oracle(players[:k] + players[k + 1 :]) for k in range(len(players))]
    level = max(deficits)
    while level > 0:
        if all(min(level, d) >= level - w for d, w in zip(deficits, without)):
            return level
        level -= 1
    return 0


def check_welfare_optimal_v(
    reports: Sequence[Mask],
    *,
    max_players: int = 4,
    max_universe: int = 8,
    compute: Callable[[Sequence[Mask]], int] = lambda r: set_union.compute_v(r).value,
) -> PropertyReport:
    name = "welfare-v"
    width = union_all(reports).bit_length()
    if len(reports) > max_players or width > max_universe:
        return skipped(name, f"n={len(reports)}, universe width {width} exceeds ({max_players}, {max_universe})")
    as_sets = [frozenset(r for r in range(width) if x >> r & 1) for x in reports]
    expected = stable_v_oracle(as_sets)
    got = compute(reports)
    if got != expected:
        return PropertyReport(
            name,
            False,
            1,
            {"reports": [sorted(s) for s in as_sets], "computed": got, "oracle": expected},
        )
    return PropertyReport(name, True, 1)


def check_symmetry_sets(instance: SetInstance, mechanism: SetMechanism = set_union.multiparty_aon) -> PropertyReport:
    """Equal-size reports must bring equal benefits (truthful profile)."""
    reports = instance.true_sets
    out = run_set_mechanism(mechanism, reports)
    v = information_benefit(instance, reports, out)
    checked = 0
    for i, j in itertools.combinations(range(instance.n), 2):
        if popcount(reports[i]) == popcount(reports[j]):
            checked += 1
            if v[i] != v[j]:
                return PropertyReport(
                    "symmetry",
                    False,
                    checked,
                    {
                        "reports": [instance.universe.decode(x) for x in reports],
                        "players": [i + 1, j + 1],
                        "benefits": list(v),
                    },
                )
    return PropertyReport("symmetry", True, checked)


def check_symmetry_intervals(
    instance, participating=None, mechanism=interval_search.one_dim_search, value=interval_search.LINEAR
) -> PropertyReport:
    """Identical reported intervals must get identical outputs."""
    flags = tuple(participating) if participating is not None else (True,) * instance.n
    out = mechanism(instance, flags, value)
    checked = 0
    for i, j in itertools.combinations(range(instance.n), 2):
        if flags[i] and flags[j] and instance.intervals[i] == instance.intervals[j]:
            checked += 1
            if out[i] != out[j]:
                return PropertyReport(
                    "symmetry",
                    False,
                    checked,
                    {"players": [i + 1, j + 1], "participating": list(flags), "outputs": [out[i], out[j]]},
                )
    return PropertyReport("symmetry", True, checked)


def check_symmetry_general(V, participating=None, mechanism=general_mechanism.general_mechanism) -> PropertyReport:
    """Players interchangeable inside the coalition must get equal rewards."""
    flags = tuple(participating) if participating is not None else (True,) * V.n
    S = general_mechanism.coalition_of(flags)
    rewards = mechanism(V, flags)
    checked = 0
    for i, j in itertools.combinations(range(V.n), 2):
        if not (S >> i & 1 and S >> j & 1):
            continue
        rest = S & ~((1 << i) | (1 << j))
        if all(V(T | 1 << i) == V(T | 1 << j) for T in submasks(rest)):
            checked += 1
            if rewards[i] != rewards[j]:
                return PropertyReport(
                    "symmetry",
                    False,
                    checked,
                    {"players": [i + 1, j + 1], "participating": list(flags), "rewards": list(rewards)},
                )
    return PropertyReport("symmetry", True, checked)


def check_strong_dominance(instance: SetInstance, mechanism: SetMechanism = set_union.multiparty_aon) -> PropertyReport:
    """``x_k`` contained in ``x_i`` must give ``y_k`` contained in ``y_i``."""
    reports = instance.true_sets
    out = run_set_mechanism(mechanism, reports)
    checked = 0
    for k, i in itertools.permutations(range(instance.n), 2):
        if reports[k] & ~reports[i] == 0:
            checked += 1
            if out[k] & ~out[i]:
                decode = instance.universe.decode
                return PropertyReport(
                    "strong-dominance",
                    False,
                    checked,
                    {
                        "reports": [decode(x) for x in reports],
                        "contained": k + 1,
                        "container": i + 1,
                        "outputs": [decode(out[k]), decode(out[i])],
                    },
                )
    return PropertyReport("strong-dominance", True, checked)


# ---------------------------------------------------------------------------
# general mechanism and average point

def check_phi_inequality(V, phi=general_mechanism.phi) -> PropertyReport:
    """``phi_i(S) >= phi_j(S) - phi_j(S - {i})`` for all coalitions and ordered pairs."""
    checked = 0
    for S in range(1, 1 << V.n):
        if popcount(S) < 2:
            continue
        members = [i for i in range(V.n) if S >> i & 1]
        for i, j in itertools.permutations(members, 2):
            lhs = phi(V, S, i)
            rhs = phi(V, S, j) - phi(V, S & ~(1 << i), j)
            checked += 1
            if lhs < rhs:
                return PropertyReport(
                    "phi-inequality",
                    False,
                    checked,
                    {
                        "coalition": [m + 1 for m in members],
                        "i": i + 1,
                        "j": j + 1,
                        "phi_i": lhs,
                        "phi_j_minus_phi_j_without_i": rhs,
                    },
                )
    return PropertyReport("phi-inequality", True, checked)


def check_average_delta(instance, mechanism=average_point.average_mechanism) -> PropertyReport:
    """Starting from full participation, a single withdrawal must cost the
    deviator at least as much as it costs any remaining participant, and in
    fact at least ``n - 1`` times as much."""
    n = instance.n
    everyone = (True,) * n
    base = mechanism(instance, everyone).benefits
    checked = 0
    for d in range(n):
        flags = everyone[:d] + (False,) + everyone[d + 1 :]
        after = mechanism(instance, flags).benefits
        delta = [a - b for a, b in zip(after, base)]
        for i in range(n):
            if i == d:
                continue
            checked += 1
            if delta[d] > delta[i] or delta[d] > (n - 1) * delta[i]:
                return PropertyReport(
                    "average-delta",
                    False,
                    checked,
                    {"points": list(instance.points), "deviator": d + 1, "other": i + 1, "deltas": delta},
                )
    return PropertyReport("average-delta", True, checked)


def two_party_equal_benefit(x1: Mask, x2: Mask) -> Optional[dict]:
    """None if both sides gain exactly ``min(|x1 - x2|, |x2 - x1|)``."""
    y1, y2 = set_union.two_party(x1, x2)
    v = (popcount(y1 & ~x1), popcount(y2 & ~x2))
    want = min(popcount(x1 & ~x2), popcount(x2 & ~x1))
    if v != (want, want):
        return {"x1": x1, "x2": x2, "benefits": list(v), "expected": want}
    return None


def check_symmetry_average(instance, participating=None, mechanism=average_point.average_mechanism) -> PropertyReport:
    """Participants all receive the same point; equal private points get equal benefits."""
    flags = tuple(participating) if participating is not None else (True,) * instance.n
    outcome = mechanism(instance, flags)
    inside = [i for i in range(instance.n) if flags[i]]
    checked = 0
    for i, j in itertools.combinations(inside, 2):
        checked += 1
        same_point = instance.points[i] == instance.points[j]
        if outcome.outputs[i] != outcome.outputs[j] or (same_point and outcome.benefits[i] != outcome.benefits[j]):
            return PropertyReport(
                "symmetry",
                False,
                checked,
                {
                    "players": [i + 1, j + 1],
                    "participating": list(flags),
                    "outputs": [outcome.outputs[i], outcome.outputs[j]],
                    "benefits": [outcome.benefits[i], outcome.benefits[j]],
                },
            )
    return PropertyReport("symmetry", True, checked)
