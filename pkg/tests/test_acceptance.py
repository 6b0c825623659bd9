"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL summary with its runtime; the lines are
printed at the end of the pytest run (see conftest.py) or directly when this
file is executed as a script.
"""
import functools
import random
import sys
import time
from fractions import Fraction as F

from oracles import min_max_on
from quasint import sampling
from quasint.distributions import (BoundaryMeasure, PiecewiseAffine, distribution_bundle,
                                   left_measure, right_measure, rl_equal_criterion)
from quasint.functional_lab import Case, classify, quasi_linearity_check, replay_witness
from quasint.intervals import Interval, Space
from quasint.measures import LebesgueOn, SimpleContains, catalog
from quasint.pwl import PwlFunction
from quasint.quasi_integral import induced_R, quasi_integral_L, quasi_integral_R
from quasint.suites import (conic_suite, duality_suite, integration_by_parts_suite,
                            linear_additivity, norm_suite, partition_suite, pushforward_suite,
                            rl_criterion_suite, roundtrip_suite, topological_r_equals_l)

RESULTS = []
SEED = 2024
C = Interval.closed


def criterion(number, title, limit=None):
    """Record a PASS/FAIL line for ``number``; fail when slower than ``limit`` seconds."""
    def wrap(fn):
        @functools.wraps(fn)
        def test():
            start = time.perf_counter()
            ok, note = False, ""
            try:
                note = fn() or ""
                elapsed = time.perf_counter() - start
                assert limit is None or elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
                ok = True
            finally:
                elapsed = time.perf_counter() - start
                bound = f" (limit {limit}s)" if limit else ""
                tail = f"  [{note}]" if note else ""
                RESULTS.append(f"criterion {number:>2}  {'PASS' if ok else 'FAIL'}  "
                               f"{elapsed:7.2f}s{bound}  {title}{tail}")
        return test
    return wrap


def step_up(t):
    """1 for s > t."""
    return PiecewiseAffine(((F(t), F(0), F(0), F(1)),))


def step_down(t):
    """1 for s < t."""
    return PiecewiseAffine(((F(t), F(1), F(0), F(0)),))


def _golden(mu, f, L1, R1, l, r, R, L, rl):
    distribution_bundle.cache_clear()
    b = distribution_bundle(mu, f)
    assert b.L1.equals(L1), b.L1.to_json()
    assert b.R1.equals(R1), b.R1.to_json()
    assert left_measure(b) == l and right_measure(b) == r
    assert quasi_integral_R(mu, f) == R and quasi_integral_L(mu, f) == L
    assert rl_equal_criterion(b)[0] is rl


@criterion(1, "hat against the unit simple measure: steps, point masses, R=0, L=1", limit=1)
def test_criterion_01_hat_example():
    _golden(SimpleContains(C(0, 1)), PwlFunction.on_line([(-1, 0), (0, 1), (1, 0)]),
            step_up(1), step_down(0), BoundaryMeasure.dirac(1), BoundaryMeasure.dirac(0),
            0, 1, False)


@criterion(2, "plateau function against the simple measure on [1,2]: l = r at 1, R = L = 1", limit=1)
def test_criterion_02_plateau_example():
    f = PwlFunction.on_line([(-1, 0), (0, 2), (1, 1), (2, 1), (3, 0)])
    _golden(SimpleContains(C(1, 2)), f, step_up(1), step_down(1),
            BoundaryMeasure.dirac(1), BoundaryMeasure.dirac(1), 1, 1, True)


@criterion(3, "simple measures give min and max over D (500 functions, 25 sets)", limit=30)
def test_criterion_03_oracle_equivalence():
    rng = random.Random(SEED)
    sets = []
    while len(sets) < 25:
        a, b = sampling.distinct_points(rng, 2, -2, 3, 8)
        sets.append((a, a) if len(sets) % 8 == 0 else (a, b))
    for i in range(500):
        a, b = sets[i % len(sets)]
        f = sampling.random_pwl(rng, Space.line(), nodes=rng.randint(1, 6))
        mu = SimpleContains(C(a, b))
        lo, hi = min_max_on(f, a, b)
        assert quasi_integral_R(mu, f) == lo, (i, f.to_json(), a, b)
        assert quasi_integral_L(mu, f) == hi, (i, f.to_json(), a, b)
    return "500/500 exact"


@criterion(4, "linear baseline: identity integral, additivity, r = l for topological measures")
def test_criterion_04_linear_baseline():
    unit = Space.compact(0, 1)
    ident = PwlFunction.from_points(unit, [(0, 0), (1, 1)])
    assert quasi_integral_R(LebesgueOn(C(0, 1), unit), ident) == F(1, 2)
    add = linear_additivity(SEED, 500)
    assert add.passed, add.witness
    linear = sum(1 for _, mu in catalog() if mu.is_linear)
    assert add.cases == 500 * linear
    rl = topological_r_equals_l(SEED, 100)
    assert rl.passed and rl.cases == 100, rl.witness
    return f"{add.cases} additive pairs over {linear} measures, 100 r=l pairs"


@criterion(5, "round trip on every catalog measure, 50 open/compact sets each", limit=120)
def test_criterion_05_round_trip():
    reports = roundtrip_suite(SEED, 50)
    assert len(reports) >= 6
    for rep in reports:
        assert rep.passed and rep.cases == 50, (rep.name, rep.witness)
    return f"{len(reports)} measures x 50 sets"


@criterion(6, "conic additivity on the cone (500 cases) and partition identity (n=2,4,8; 100 f)")
def test_criterion_06_conic():
    rep = conic_suite(SEED, 500)
    assert rep.passed and rep.cases == 500, rep.witness
    part = partition_suite(SEED, 100, (2, 4, 8))
    assert part.passed and part.cases == 300, part.witness


@criterion(7, "L(-f) = -R(f) on 500 cases; norm equals total mass for every catalog measure")
def test_criterion_07_duality_and_norm():
    rep = duality_suite(SEED, 500)
    assert rep.passed and rep.cases == 500, rep.witness
    norms = norm_suite()
    assert norms.passed, norms.witness
    assert norms.cases == len(catalog()) + len(catalog(Space.compact(0, 1)))


@criterion(8, "L1 + R1 criterion agrees with direct comparison (200 pairs, >= 20 unequal)")
def test_criterion_08_rl_criterion():
    rep = rl_criterion_suite(SEED, 200)
    assert rep.passed and rep.cases == 200, rep.witness
    assert rep.detail["false_cases"] >= 20, rep.detail
    return f"{rep.detail['false_cases']} unequal cases"


@criterion(9, "hierarchy: simple R is p-conic/r/d, not linear; a quasi-linearity failure exists")
def test_criterion_09_hierarchy():
    sc = SimpleContains(C(0, 1))
    R = induced_R(sc)
    rep = classify(R, budget=40, seed=SEED)
    for cls in ("p_conic", "r", "d"):
        assert rep.status(cls) == "pass", cls
    lin = rep.verdicts["linear"]
    assert lin.status == "fail" and lin.witness is not None
    assert replay_witness(R, lin.witness)
    case = Case.from_json(lin.witness)
    f, g = case.a * case.f, case.b * case.g
    assert quasi_integral_R(sc, f + g) != quasi_integral_R(sc, f) + quasi_integral_R(sc, g)
    found = None
    for name, mu in catalog():
        if mu.is_linear:
            continue
        hat = PwlFunction.on_line([(-1, 0), (0, 1), (1, 0)])
        ql = quasi_linearity_check(induced_R(mu), hat, budget=200, seed=SEED)
        if not ql.passed:
            assert replay_witness(induced_R(mu), ql.witness)
            found = name
            break
    assert found is not None, "no quasi-linearity witness in the catalog"
    return f"quasi-linearity witness on {found}"


@criterion(10, "pushforward bounds on >= 500 (measure, f, A); equality for linear measures on open A")
def test_criterion_10_pushforward():
    rep = pushforward_suite(SEED, 500)
    assert rep.passed and rep.cases >= 500, rep.witness
    assert rep.detail["linear_cases"] > 0
    return f"{rep.cases} sets, {rep.detail['linear_cases']} with equality checked"


@criterion(11, "integration by parts on 200 random monotone pairs")
def test_criterion_11_integration_by_parts():
    rep = integration_by_parts_suite(SEED, 200)
    assert rep.passed and rep.cases == 200, rep.witness


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
            print(RESULTS[-1])
    sys.exit(1 if failed else 0)
