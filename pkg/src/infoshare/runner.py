"""Run mechanisms on scenarios and verify properties; produces JSON-ready reports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from . import __version__, general_mechanism, interval_search, set_union, verifier
from .core import StructuralError, information_benefit, social_welfare, utility_vector, validate_profile
from .mechanisms import DEFAULT_MECHANISM, lookup
from .scenario import Scenario, generate_scenario, scenario_to_dict

PROPERTIES = (
    "truthful-aon",
    "truthful-subsets",
    "pareto",
    "welfare-v",
    "symmetry",
    "strong-dominance",
    "phi-inequality",
    "average-delta",
)

APPLICABLE = {
    "set-union": {"truthful-aon", "truthful-subsets", "pareto", "welfare-v", "symmetry", "strong-dominance", "phi-inequality"},
    "interval": {"truthful-aon", "symmetry"},
    "average": {"truthful-aon", "symmetry", "average-delta"},
    "general": {"truthful-aon", "symmetry", "phi-inequality"},
}


class UsageError(ValueError):
    """Mechanism, scenario kind or option combination is not valid."""


def _q(x) -> str:
    return str(Fraction(x))


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


@dataclass(frozen=True)
class Options:
    pareto_repair: bool = False
    max_subset_universe: int = 6
    oracle_players: int = 3
    oracle_pool: int = 6
    welfare_players: int = 4
    welfare_universe: int = 8


def _entry(scenario: Scenario, mechanism: Optional[str]):
    name = mechanism or DEFAULT_MECHANISM[scenario.kind]
    try:
        return lookup(name, scenario.kind)
    except (KeyError, ValueError) as exc:
        raise UsageError(exc.args[0]) from None


def _set_reports(scenario: Scenario, entry) -> tuple[int, ...]:
    inst = scenario.instance
    reports = scenario.profile if scenario.profile is not None else inst.true_sets
    try:
        validate_profile(inst, reports, aon=entry.aon_only)
    except StructuralError as exc:
        raise UsageError(str(exc)) from None
    return tuple(reports)


def _flags(scenario: Scenario) -> tuple[bool, ...]:
    return scenario.profile if scenario.profile is not None else (True,) * scenario.n


def cmd_run(scenario: Scenario, mechanism: Optional[str] = None, options: Options = Options(),
            properties: Sequence[str] = ()) -> dict:
    entry = _entry(scenario, mechanism)
    if options.pareto_repair and scenario.kind != "set-union":
        raise UsageError("--pareto-repair applies to set-union scenarios only")
    report: dict[str, Any] = {
        "mechanism": entry.name,
        "version": __version__,
        "kind": scenario.kind,
        "pareto_repair": options.pareto_repair,
    }
    try:
        report.update(_RUNNERS[scenario.kind](scenario, entry, options))
    except StructuralError as exc:
        raise UsageError(str(exc)) from None
    if properties:
        report["properties"] = [r.to_dict() for r in verify_scenario(scenario, entry.name, properties, options)]
    return report


def _players(reports, outputs, benefits) -> list[dict]:
    utilities = utility_vector(benefits)
    return [
        {"player": i + 1, "report": x, "output": y, "benefit": _q(v), "utility": _q(u)}
        for i, (x, y, v, u) in enumerate(zip(reports, outputs, benefits, utilities))
    ]


def _run_set_union(scenario: Scenario, entry, options: Options) -> dict:
    inst = scenario.instance
    reports = _set_reports(scenario, entry)
    outputs = verifier.run_set_mechanism(entry.fn, reports, repair=options.pareto_repair)
    benefits = information_benefit(inst, reports, outputs)
    decode = inst.universe.decode
    out: dict[str, Any] = {
        "players": _players([decode(x) for x in reports], [decode(y) for y in outputs], benefits),
        "welfare": _q(social_welfare(benefits)),
    }
    if entry.name == "multiparty-aon":
        res = set_union.multiparty_aon_trace(reports)
        label = [p + 1 for p in res.participants]
        out["trace"] = {
            "participants": label,
            "V": res.trace.value,
            "deficits": {str(label[k]): d for k, d in enumerate(res.trace.deficits)},
            "coalition_values": {
                ",".join(str(label[i]) for i in members): v for members, v in res.trace.values.items()
            },
        }
    elif entry.name == "three-party":
        tr = set_union.three_party_trace(*reports)
        out["trace"] = {
            "case": tr.case.value,
            "roles": [p + 1 for p in tr.roles],
            "common": decode(tr.common),
            "s": tr.s,
            "x2_shared": decode(tr.x2_shared),
            "x2_own": decode(tr.x2_own),
            "x3_shared": decode(tr.x3_shared),
            "x3_own": decode(tr.x3_own),
        }
    return out


def _interval_text(iv) -> Optional[list[str]]:
    return None if iv is None else [_q(iv.lo), _q(iv.hi)]


def _run_interval(scenario: Scenario, entry, options: Options) -> dict:
    inst = scenario.instance
    flags = _flags(scenario)
    outputs = entry.fn(inst, flags)
    benefits = interval_search.interval_benefits(inst, flags, outputs)
    reports = [_interval_text(iv) if f else None for iv, f in zip(inst.intervals, flags)]
    return {
        "target": _q(inst.target),
        "players": _players(reports, [_interval_text(y) for y in outputs], benefits),
        "welfare": _q(social_welfare(benefits)),
    }


def _run_average(scenario: Scenario, entry, options: Options) -> dict:
    inst = scenario.instance
    flags = _flags(scenario)
    outcome = entry.fn(inst, flags)
    reports = [_q(a) if f else None for a, f in zip(inst.points, flags)]
    outputs = [None if y is None else _q(y) for y in outcome.outputs]
    return {
        "true_average": _q(inst.true_average),
        "p": inst.p,
        "players": _players(reports, outputs, outcome.benefits),
        "welfare": _q(social_welfare(outcome.benefits)),
    }


def _run_general(scenario: Scenario, entry, options: Options) -> dict:
    V = scenario.instance
    flags = _flags(scenario)
    benefits = entry.fn(V, flags)
    if scenario.coverage is not None:
        cov = scenario.coverage
        reports = cov.aon_profile(flags)
        outputs = [cov.universe.decode(y) for y in general_mechanism.coverage_allocate(reports, benefits)]
        shown = [cov.universe.decode(x) for x in reports]
    else:
        shown = list(flags)
        outputs = [None] * V.n
    return {
        "coalition": [i + 1 for i, f in enumerate(flags) if f],
        "players": _players(shown, outputs, benefits),
        "welfare": _q(social_welfare(benefits)),
    }


_RUNNERS = {
    "set-union": _run_set_union,
    "interval": _run_interval,
    "average": _run_average,
    "general": _run_general,
}


def verify_scenario(scenario: Scenario, mechanism: Optional[str], properties: Iterable[str],
                    options: Options = Options()) -> list[verifier.PropertyReport]:
    entry = _entry(scenario, mechanism)
    results = []
    for prop in properties:
        if prop not in PROPERTIES:
            raise UsageError(f"unknown property {prop!r}; choose from {', '.join(PROPERTIES)}")
        if prop not in APPLICABLE[scenario.kind]:
            results.append(verifier.skipped(prop, f"not applicable to {scenario.kind}"))
            continue
        try:
            results.append(_check(scenario, entry, prop, options))
        except StructuralError as exc:
            raise UsageError(str(exc)) from None
    return results


def _check(scenario: Scenario, entry, prop: str, options: Options) -> verifier.PropertyReport:
    inst = scenario.instance
    kind = scenario.kind
    repair = options.pareto_repair
    if kind == "set-union":
        if prop == "truthful-aon":
            return verifier.check_truthful_aon(verifier.set_union_game(inst, entry.fn, repair=repair))
        if prop == "truthful-subsets":
            if entry.aon_only:
                return verifier.skipped(prop, f"{entry.name} is defined for all-or-nothing reports only")
            return verifier.check_truthful_subsets(entry.fn, inst, options.max_subset_universe, repair=repair)
        if prop == "pareto":
            outputs = verifier.run_set_mechanism(entry.fn, inst.true_sets, repair=repair)
            return verifier.check_pareto(
                inst, inst.true_sets, outputs, oracle_players=options.oracle_players, oracle_pool=options.oracle_pool
            )
        if prop == "welfare-v":
            return verifier.check_welfare_optimal_v(
                inst.true_sets, max_players=options.welfare_players, max_universe=options.welfare_universe
            )
        if prop == "symmetry":
            return verifier.check_symmetry_sets(inst, entry.fn)
        if prop == "strong-dominance":
            return verifier.check_strong_dominance(inst, entry.fn)
        if prop == "phi-inequality":
            return verifier.check_phi_inequality(general_mechanism.make_coverage_value(inst.true_sets))
    if kind == "interval":
        if prop == "truthful-aon":
            return verifier.check_truthful_aon(verifier.interval_game(inst, entry.fn))
        return verifier.check_symmetry_intervals(inst, _flags(scenario), entry.fn)
    if kind == "average":
        if prop == "truthful-aon":
            return verifier.check_truthful_aon(verifier.average_game(inst, entry.fn))
        if prop == "average-delta":
            return verifier.check_average_delta(inst, entry.fn)
        return verifier.check_symmetry_average(inst, _flags(scenario), entry.fn)
    if kind == "general":
        if prop == "truthful-aon":
            return verifier.check_truthful_aon(verifier.general_game(inst, entry.fn))
        if prop == "phi-inequality":
            return verifier.check_phi_inequality(inst)
        return verifier.check_symmetry_general(inst, _flags(scenario), entry.fn)
    raise UsageError(f"no checker for {prop} on {kind}")


def parse_range(text: str, what: str) -> tuple[int, int]:
    """``"4"`` or ``"2-4"`` to an inclusive range."""
    try:
        if "-" in text:
            lo, hi = (int(p) for p in text.split("-", 1))
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer or a range like 2-4, got {text!r}") from None
    if lo > hi or lo < 0:
        raise UsageError(f"invalid {what} range {text!r}")
    return lo, hi


def sweep_scenarios(kind: str, count: int, seed: int, n_range: tuple[int, int], m_range: tuple[int, int],
                    value: str = "coverage", p: int = 2) -> list[Scenario]:
    """Scenarios for seeds ``seed .. seed + count - 1``; sizes cycle through the ranges."""
    out = []
    for k in range(count):
        s = seed + k
        n = n_range[0] + s % (n_range[1] - n_range[0] + 1)
        m = m_range[0] + s % (m_range[1] - m_range[0] + 1)
        try:
            out.append(generate_scenario(kind, n=n, seed=s, universe_size=m, value=value, p=p))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def cmd_verify(scenarios: Sequence[Scenario], mechanism: Optional[str], properties: Sequence[str],
               options: Options = Options(), strict: bool = False) -> tuple[int, dict]:
    """Exit status (0 all pass, 1 violation) and the merged report."""
    per_prop: dict[str, list[verifier.PropertyReport]] = {p: [] for p in properties}
    for sc in scenarios:
        for rep in verify_scenario(sc, mechanism, properties, options):
            if not rep.passed and not rep.skipped:
                rep.counterexample = dict(rep.counterexample or {}, scenario=scenario_to_dict(sc))
            per_prop[rep.name].append(rep)
    merged = [verifier.merge(p, per_prop[p]) for p in properties]
    failed = [r for r in merged if not r.passed or (strict and (r.skipped or r.skipped_instances))]
    report = {
        "version": __version__,
        "mechanism": mechanism or (DEFAULT_MECHANISM[scenarios[0].kind] if scenarios else None),
        "instances": len(scenarios),
        "strict": strict,
        "status": "fail" if failed else "pass",
        "properties": [r.to_dict() for r in merged],
    }
    return (1 if failed else 0), report
