"""Command line: ``gen``, ``run`` and ``verify``.

Exit status: 0 when everything passes, 1 on a property violation, 2 on bad
input or usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .mechanisms import REGISTRY
from .runner import PROPERTIES, Options, UsageError, cmd_run, cmd_verify, dumps, parse_range, sweep_scenarios
from .scenario import KINDS, ScenarioError, emit_scenario, generate_scenario, parse_scenario

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infoshare", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a seeded random scenario")
    gen.add_argument("kind", choices=KINDS)
    gen.add_argument("--n", type=int, default=3, help="number of players")
    gen.add_argument("--universe-size", type=int, default=6, help="universe size for set problems")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--value", choices=("coverage", "table"), default="coverage", help="general: value function")
    gen.add_argument("--p", type=int, default=2, help="average: loss exponent")
    gen.add_argument("--out", type=Path)

    run = sub.add_parser("run", help="run a mechanism on a scenario")
    run.add_argument("--scenario", type=Path, required=True)
    run.add_argument("--mechanism", choices=sorted(REGISTRY))
    run.add_argument("--pareto-repair", action="store_true")
    run.add_argument("--properties", default="", help="comma-separated properties to verify as well")
    run.add_argument("--out", type=Path)

    verify = sub.add_parser("verify", help="check properties on a scenario or a seeded sweep")
    source = verify.add_mutually_exclusive_group(required=True)
    source.add_argument("--scenario", type=Path)
    source.add_argument("--generate", choices=KINDS, metavar="KIND", help="sweep over generated scenarios")
    verify.add_argument("--count", type=int, default=100)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--n", default="2-4", help="players per instance: N or A-B")
    verify.add_argument("--universe-size", default="1-8", help="set problems: M or A-B")
    verify.add_argument("--value", choices=("coverage", "table"), default="coverage")
    verify.add_argument("--p", type=int, default=2)
    verify.add_argument("--mechanism", choices=sorted(REGISTRY))
    verify.add_argument("--pareto-repair", action="store_true")
    verify.add_argument("--properties", default="all", help=f"comma-separated from: {', '.join(PROPERTIES)}; or 'all'")
    verify.add_argument("--strict", action="store_true", help="treat skipped checks as failures")
    verify.add_argument("--out", type=Path)
    return parser


def _properties(text: str) -> list[str]:
    if text.strip() == "all":
        return list(PROPERTIES)
    props = [p.strip() for p in text.split(",") if p.strip()]
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise UsageError(f"unknown properties {unknown}; choose from {', '.join(PROPERTIES)}")
    return props


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _read_scenario(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_scenario(text)
    except ScenarioError as exc:
        raise UsageError(f"{path}: {exc}") from None


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            sc = generate_scenario(
                args.kind, n=args.n, seed=args.seed, universe_size=args.universe_size, value=args.value, p=args.p
            )
            _write(emit_scenario(sc), args.out)
            return EXIT_OK

        options = Options(pareto_repair=args.pareto_repair)
        if args.command == "run":
            report = cmd_run(_read_scenario(args.scenario), args.mechanism, options, _properties(args.properties))
            _write(dumps(report), args.out)
            failed = any(p["verdict"] == "fail" for p in report.get("properties", []))
            return EXIT_VIOLATION if failed else EXIT_OK

        if args.scenario is not None:
            scenarios = [_read_scenario(args.scenario)]
        else:
            scenarios = sweep_scenarios(
                args.generate,
                args.count,
                args.seed,
                parse_range(args.n, "--n"),
                parse_range(args.universe_size, "--universe-size"),
                value=args.value,
                p=args.p,
            )
        status, report = cmd_verify(scenarios, args.mechanism, _properties(args.properties), options, args.strict)
        _write(dumps(report), args.out)
        return status
    except (UsageError, ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
