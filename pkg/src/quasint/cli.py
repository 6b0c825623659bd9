"""Command line front end.

``quasint run --scenario FILE --out DIR`` evaluates one measure/function pair
and writes ``report.json`` and ``distributions.csv``; ``quasint suite NAME``
runs a named batch of checks.  Exit codes: 0 success, 1 bad input, 2 a check
failed.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import sampling
from .distributions import (distribution_bundle, left_measure, pushforward_check, right_measure,
                            rl_equal_criterion)
from .errors import QuasintError, ScenarioError
from .functional_lab import classify
from .intervals import IntervalSet, Space
from .measures import Dtm, dtm_from_json, is_topological_measure, validate_dtm
from .pwl import PwlFunction
from .quasi_integral import (duality_check, induced_L, induced_R, partition_identity_check,
                             quasi_integral_L, quasi_integral_R)
from .rationals import fmt
from .reconstruction import norm_estimate, reconstruct
from .reports import CheckReport
from .suites import SUITES

TASKS = ("integrate", "distributions", "measures", "reconstruct", "classify", "check")

EXIT_OK, EXIT_INPUT, EXIT_FAIL = 0, 1, 2


@dataclass
class Scenario:
    space: Space
    measure: Dtm
    function: PwlFunction
    tasks: tuple
    seed: int = 0
    budget: int = 50
    sets: tuple = ()

    @classmethod
    def from_json(cls, data) -> "Scenario":
        if not isinstance(data, dict):
            raise ScenarioError("scenario must be a JSON object")
        missing = [k for k in ("measure", "function", "tasks") if k not in data]
        if missing:
            raise ScenarioError(f"scenario is missing {', '.join(missing)}")
        space = Space.from_json(data.get("space"))
        measure = dtm_from_json(data["measure"], space)
        function = PwlFunction.from_json(data["function"], space)
        tasks = data["tasks"]
        if not isinstance(tasks, list) or not tasks:
            raise ScenarioError("tasks must be a nonempty list")
        unknown = [t for t in tasks if t not in TASKS]
        if unknown:
            raise ScenarioError(f"unknown tasks {unknown}; choose from {list(TASKS)}")
        seed, budget = data.get("seed", 0), data.get("budget", 50)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ScenarioError("seed must be an integer")
        if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
            raise ScenarioError("budget must be a positive integer")
        sets = tuple(IntervalSet.from_json(s) for s in data.get("sets", []))
        ordered = tuple(t for t in TASKS if t in tasks)
        return cls(space, measure, function, ordered, seed, budget, sets)

    @classmethod
    def load(cls, path) -> "Scenario":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario is not valid JSON: {exc}") from exc
        return cls.from_json(data)


def _reconstruction_sets(sc: Scenario) -> list:
    if sc.sets:
        return list(sc.sets)
    rng = random.Random(f"{sc.seed}:reconstruct")
    return [sampling.random_interval_set(rng, sc.space, kind="open" if i % 2 else "compact")
            for i in range(min(sc.budget, 20))]


def _checks(sc: Scenario, bundle) -> list:
    mu, f = sc.measure, sc.function
    reports = [duality_check(mu, f), pushforward_check(mu, f, bundle, sc.budget, sc.seed)]
    crit, _ = rl_equal_criterion(bundle)
    direct = right_measure(bundle) == left_measure(bundle)
    reports.append(CheckReport("rl_criterion", crit == direct, 1,
                               None if crit == direct else {"criterion": crit, "direct": direct}))
    lo, hi = f.range_bounds()
    if lo >= 0 and hi <= 1:
        reports += [partition_identity_check(mu, f, n) for n in (2, 4, 8)]
    norm = norm_estimate(induced_R(mu))
    reports.append(CheckReport("norm_equals_mass", norm == mu.total_mass(), 1,
                               None if norm == mu.total_mass() else {"norm": fmt(norm),
                                                                     "mass": fmt(mu.total_mass())}))
    return reports


def build_report(sc: Scenario) -> tuple:
    """``(report dict, bundle, any_check_failed)``."""
    mu, f = sc.measure, sc.function
    bundle = distribution_bundle(mu, f)
    r_eq_l, witness = rl_equal_criterion(bundle)
    report = {
        "space": sc.space.to_json(),
        "measure": mu.to_json(),
        "function": f.to_json(),
        "seed": sc.seed,
        "budget": sc.budget,
        "tasks": list(sc.tasks),
        "R": fmt(quasi_integral_R(mu, f)),
        "L": fmt(quasi_integral_L(mu, f)),
        "r_equals_l": r_eq_l,
        "r": right_measure(bundle).to_json(),
        "l": left_measure(bundle).to_json(),
        "bundle_csv": "distributions.csv",
    }
    if witness is not None:
        report["r_equals_l_witness"] = witness
    if "distributions" in sc.tasks:
        report["distributions"] = bundle.to_json()
    if "measures" in sc.tasks:
        report["measures"] = {
            "mass": fmt(mu.total_mass()),
            "validate": validate_dtm(mu, sc.budget, sc.seed).to_json(),
            "topological": is_topological_measure(mu, sc.budget, sc.seed).to_json(),
        }
    if "reconstruct" in sc.tasks:
        rho = induced_R(mu)
        rows = []
        for A in _reconstruction_sets(sc):
            res = reconstruct(rho, A)
            expected = mu.eval(A)
            rows.append({"set": A.to_json(), "expected": fmt(expected),
                         "match": res.exact and res.value == expected, **res.to_json()})
        report["reconstruction"] = rows
    if "classify" in sc.tasks:
        report["classification"] = {
            "R": classify(induced_R(mu), sc.budget, sc.seed).to_json(),
            "L": classify(induced_L(mu), sc.budget, sc.seed).to_json(),
        }
    failed = False
    if "check" in sc.tasks:
        checks = _checks(sc, bundle)
        report["checks"] = [c.to_json() for c in checks]
        failed = any(not c.passed for c in checks)
    return report, bundle, failed


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _error(exc: Exception, stream=None) -> int:
    code = exc.code if isinstance(exc, QuasintError) else type(exc).__name__
    (stream or sys.stdout).write(dump_json({"error": code, "message": str(exc)}))
    return EXIT_INPUT


def cmd_run(args) -> int:
    try:
        sc = Scenario.load(args.scenario)
    except (QuasintError, KeyError, TypeError, ValueError) as exc:
        return _error(exc)
    if args.seed is not None:
        sc.seed = args.seed
    if args.cases is not None:
        sc.budget = args.cases
    try:
        report, bundle, failed = build_report(sc)
    except QuasintError as exc:
        return _error(exc)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    text, table = dump_json(report), bundle.to_csv()
    (out / "report.json").write_text(text)
    (out / "distributions.csv").write_text(table)
    sys.stdout.write(table if args.format == "csv" else text)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_suite(args) -> int:
    seed = args.seed if args.seed is not None else 0
    cases = args.cases if args.cases is not None else (50 if args.name == "roundtrip" else 200)
    reports = SUITES[args.name](seed, cases)
    width = max(len(r.name) for r in reports)
    for r in reports:
        print(f"{r.name:<{width}}  {r.status.upper():<4}  {r.cases:>6} cases")
    failures = [r for r in reports if not r.passed]
    if failures:
        sys.stdout.write(dump_json({"failures": [r.to_json() for r in failures]}))
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="evaluate a scenario file")
    run.add_argument("--scenario", required=True, help="scenario JSON file")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--seed", type=int, help="override the scenario seed")
    run.add_argument("--cases", type=int, help="override the scenario budget")
    run.add_argument("--format", choices=("json", "csv"), default="json",
                     help="what to echo on stdout (both files are always written)")
    run.set_defaults(func=cmd_run)
    suite = sub.add_parser("suite", help="run a named check suite")
    suite.add_argument("name", choices=sorted(SUITES))
    suite.add_argument("--seed", type=int)
    suite.add_argument("--cases", type=int)
    suite.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
