"""Scenario documents: JSON text describing one instance and, optionally, a profile.

Rationals are written as strings ``"p/q"`` (or ``"p"``). For set problems the
order of the ``universe`` array is the tie-break order for every selection.

Layouts by ``kind``::

    set-union  {"universe": [...], "sets": [[...], ...], "reports": [[...], ...]?}
    interval   {"target": "9/2", "intervals": [["lo", "hi"], ...], "participation": [bool, ...]?}
    average    {"points": ["p/q", ...], "p": 2, "participation": [bool, ...]?}
    general    {"value": "coverage", "universe": [...], "sets": [[...], ...], "participation": [...]?}
               {"value": "table", "n": 3, "table": ["0", ...], "participation": [...]?}

A general table is indexed by coalition bitmask: entry ``s`` is the value of
the players ``i + 1`` whose bit ``i`` is set in ``s``. Any document may carry
an integer ``seed`` recording how it was generated.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from . import generators
from .average_point import PointInstance
from .core import ConfigurationError, SetInstance, StructuralError, Universe
from .general_mechanism import SubgroupValueFn, make_coverage_value
from .interval_search import Interval, IntervalInstance

KINDS = ("set-union", "interval", "average", "general")
_RATIONAL = re.compile(r"-?\d+(/\d+)?")

Instance = Union[SetInstance, IntervalInstance, PointInstance, SubgroupValueFn]


class ScenarioError(ValueError):
    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass(frozen=True)
class Scenario:
    """``profile`` holds report masks for set-union, participation flags otherwise."""

    kind: str
    instance: Instance
    profile: Optional[tuple] = None
    coverage: Optional[SetInstance] = None
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        inst = self.instance
        return inst.n


# ---------------------------------------------------------------------------
# parsing

def _rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ScenarioError("expected a rational, got a boolean", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value.strip()):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise ScenarioError(f"zero denominator in {value!r}", where) from None
    raise ScenarioError(f"expected a rational string like \"3/2\", got {value!r}", where)


def _list(doc: dict, key: str, where: str = "$") -> list:
    if key not in doc:
        raise ScenarioError(f"missing field {key!r}", where)
    value = doc[key]
    if not isinstance(value, list):
        raise ScenarioError(f"field {key!r} must be an array", f"{where}.{key}")
    return value


def _flags(doc: dict, n: int) -> Optional[tuple[bool, ...]]:
    if "participation" not in doc:
        return None
    raw = _list(doc, "participation")
    if len(raw) != n:
        raise ScenarioError(f"expected {n} participation flags, got {len(raw)}", "$.participation")
    for i, f in enumerate(raw):
        if not isinstance(f, bool):
            raise ScenarioError("participation flags must be true/false", f"$.participation[{i}]")
    return tuple(raw)


def _sets(doc: dict) -> SetInstance:
    universe_raw = _list(doc, "universe")
    for r, e in enumerate(universe_raw):
        if not isinstance(e, str):
            raise ScenarioError("universe elements must be strings", f"$.universe[{r}]")
    try:
        universe = Universe(tuple(universe_raw))
    except StructuralError as exc:
        raise ScenarioError(str(exc), "$.universe") from None
    sets_raw = _list(doc, "sets")
    if not sets_raw:
        raise ScenarioError("at least one player is required", "$.sets")
    masks = []
    for i, s in enumerate(sets_raw):
        masks.append(_encode(universe, s, f"$.sets[{i}]"))
    return SetInstance(universe, tuple(masks))


def _encode(universe: Universe, items: Any, where: str) -> int:
    if not isinstance(items, list):
        raise ScenarioError("expected an array of elements", where)
    if len(set(map(str, items))) != len(items):
        raise ScenarioError("duplicate elements", where)
    mask = 0
    for k, e in enumerate(items):
        if not isinstance(e, str):
            raise ScenarioError("elements must be strings", f"{where}[{k}]")
        try:
            mask |= 1 << universe.rank(e)
        except StructuralError as exc:
            raise ScenarioError(str(exc), f"{where}[{k}]") from None
    return mask


def _parse_set_union(doc: dict) -> Scenario:
    inst = _sets(doc)
    profile = None
    if "reports" in doc:
        raw = _list(doc, "reports")
        if len(raw) != inst.n:
            raise ScenarioError(f"expected {inst.n} reports, got {len(raw)}", "$.reports")
        masks = []
        for i, r in enumerate(raw):
            m = _encode(inst.universe, r, f"$.reports[{i}]")
            if m & ~inst.true_sets[i]:
                raise ScenarioError(f"player {i + 1} reports elements outside its set", f"$.reports[{i}]")
            masks.append(m)
        profile = tuple(masks)
    return Scenario("set-union", inst, profile, seed=doc.get("seed"))


def _parse_interval(doc: dict) -> Scenario:
    if "target" not in doc:
        raise ScenarioError("missing field 'target'")
    t = _rational(doc["target"], "$.target")
    raw = _list(doc, "intervals")
    if not raw:
        raise ScenarioError("at least one player is required", "$.intervals")
    intervals = []
    for i, pair in enumerate(raw):
        where = f"$.intervals[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ScenarioError("an interval is a two-element array [lo, hi]", where)
        lo, hi = _rational(pair[0], where + "[0]"), _rational(pair[1], where + "[1]")
        if lo > hi:
            raise ScenarioError(f"lo {lo} exceeds hi {hi}", where)
        if not lo <= t <= hi:
            raise ScenarioError(f"interval [{lo}, {hi}] does not contain the target {t}", where)
        intervals.append(Interval(lo, hi))
    inst = IntervalInstance(t, tuple(intervals))
    return Scenario("interval", inst, _flags(doc, inst.n), seed=doc.get("seed"))


def _parse_average(doc: dict) -> Scenario:
    raw = _list(doc, "points")
    if not raw:
        raise ScenarioError("at least one player is required", "$.points")
    points = tuple(_rational(a, f"$.points[{i}]") for i, a in enumerate(raw))
    p = doc.get("p", 2)
    if isinstance(p, bool) or not isinstance(p, int):
        raise ScenarioError("exponent p must be an integer", "$.p")
    try:
        inst = PointInstance(points, p)
    except ConfigurationError as exc:
        raise ScenarioError(str(exc), "$.p") from None
    return Scenario("average", inst, _flags(doc, inst.n), seed=doc.get("seed"))


def _parse_general(doc: dict) -> Scenario:
    value = doc.get("value")
    if value == "coverage":
        sets = _sets(doc)
        try:
            V = make_coverage_value(sets.true_sets)
        except ValueError as exc:
            raise ScenarioError(str(exc), "$.sets") from None
        return Scenario("general", V, _flags(doc, V.n), coverage=sets, seed=doc.get("seed"))
    if value == "table":
        n = doc.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ScenarioError("n must be a positive integer", "$.n")
        raw = _list(doc, "table")
        entries = tuple(_rational(v, f"$.table[{s}]") for s, v in enumerate(raw))
        try:
            V = SubgroupValueFn(n, entries)
        except ValueError as exc:
            raise ScenarioError(str(exc), "$.table") from None
        return Scenario("general", V, _flags(doc, n), seed=doc.get("seed"))
    raise ScenarioError(f"value must be \"coverage\" or \"table\", got {value!r}", "$.value")


_PARSERS = {
    "set-union": _parse_set_union,
    "interval": _parse_interval,
    "average": _parse_average,
    "general": _parse_general,
}


def parse_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ScenarioError("a scenario must be a JSON object")
    kind = doc.get("kind")
    if kind not in _PARSERS:
        raise ScenarioError(f"unknown problem kind {kind!r}; expected one of {', '.join(KINDS)}", "$.kind")
    seed = doc.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ScenarioError("seed must be an integer", "$.seed")
    return _PARSERS[kind](doc)


# ---------------------------------------------------------------------------
# emitting

def scenario_to_dict(sc: Scenario) -> dict:
    doc: dict[str, Any] = {"kind": sc.kind}
    inst = sc.instance
    if sc.kind == "set-union":
        decode = inst.universe.decode
        doc["universe"] = list(inst.universe.elements)
        doc["sets"] = [decode(s) for s in inst.true_sets]
        if sc.profile is not None:
            doc["reports"] = [decode(x) for x in sc.profile]
    elif sc.kind == "interval":
        doc["target"] = str(inst.target)
        doc["intervals"] = [[str(iv.lo), str(iv.hi)] for iv in inst.intervals]
    elif sc.kind == "average":
        doc["points"] = [str(a) for a in inst.points]
        doc["p"] = inst.p
    elif sc.kind == "general":
        if sc.coverage is not None:
            doc["value"] = "coverage"
            doc["universe"] = list(sc.coverage.universe.elements)
            doc["sets"] = [sc.coverage.universe.decode(s) for s in sc.coverage.true_sets]
        else:
            doc["value"] = "table"
            doc["n"] = inst.n
            doc["table"] = [str(Fraction(v)) for v in inst.table]
    if sc.kind != "set-union" and sc.profile is not None:
        doc["participation"] = list(sc.profile)
    if sc.seed is not None:
        doc["seed"] = sc.seed
    return doc


def emit_scenario(sc: Scenario) -> str:
    return json.dumps(scenario_to_dict(sc), indent=2) + "\n"


# ---------------------------------------------------------------------------
# generation

def generate_scenario(kind: str, *, n: int, seed: int, universe_size: int = 6, value: str = "coverage", p: int = 2) -> Scenario:
    rng = random.Random(f"{kind}:{n}:{universe_size}:{value}:{p}:{seed}")
    if kind == "set-union":
        return Scenario(kind, generators.random_set_instance(rng, n, universe_size), seed=seed)
    if kind == "interval":
        return Scenario(kind, generators.random_interval_instance(rng, n), seed=seed)
    if kind == "average":
        return Scenario(kind, generators.random_point_instance(rng, n, p), seed=seed)
    if kind == "general":
        if value == "coverage":
            sets = generators.random_set_instance(rng, n, universe_size)
            return Scenario(kind, make_coverage_value(sets.true_sets), coverage=sets, seed=seed)
        if value == "table":
            return Scenario(kind, generators.random_monotone_value(rng, n), seed=seed)
        raise ScenarioError(f"value must be 'coverage' or 'table', got {value!r}", "--value")
    raise ScenarioError(f"unknown problem kind {kind!r}; expected one of {', '.join(KINDS)}", "--kind")
