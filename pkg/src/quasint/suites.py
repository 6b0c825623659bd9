"""Named batches of checks: worked examples, randomized identities, reconstruction.

Every check returns a :class:`CheckReport`; a suite is a list of them.  The
functions take explicit case counts so the acceptance tests can ask for the
sizes they need while the CLI scales them with ``--cases``.
"""
from __future__ import annotations

import random
from fractions import Fraction

from . import sampling
from .distributions import (BoundaryMeasure, PiecewiseAffine, distribution_bundle,
                            integration_by_parts_check, left_measure, pushforward_check,
                            random_monotone, right_measure, rl_equal_criterion)
from .functional_lab import classify, quasi_linearity_check, replay_witness
from .intervals import Interval, Space
from .measures import (LebesgueOn, SimpleContains, catalog, is_topological_measure,
                       random_dtm, random_topological, validate_dtm)
from .pwl import NONDECREASING, NONINCREASING, MonotoneProfile, PwlFunction
from .quasi_integral import (conic_check_on_cone, duality_check, induced_L, induced_R,
                             linear_integral, oracle_min_max, partition_identity_check,
                             quasi_integral_L, quasi_integral_R)
from .rationals import fmt
from .reconstruction import norm_estimate, round_trip_check
from .reports import CheckReport

ZERO = Fraction(0)
ONE = Fraction(1)

HAT_NODES = ((-1, 0), (0, 1), (1, 0))
PLATEAU_NODES = ((-1, 0), (0, 2), (1, 1), (2, 1), (3, 0))


def _step_up(t) -> PiecewiseAffine:
    """``1_{s > t}``."""
    return PiecewiseAffine(((Fraction(t), ZERO, ZERO, ONE),))


def _step_down(t) -> PiecewiseAffine:
    """``1_{s < t}``."""
    return PiecewiseAffine(((Fraction(t), ONE, ZERO, ZERO),))


def _expect(name: str, pairs) -> CheckReport:
    """Compare (label, got, expected, equal?) tuples; the first mismatch is the witness."""
    pairs = list(pairs)
    for label, got, want, ok in pairs:
        if not ok:
            return CheckReport(name, False, len(pairs), {"quantity": label, "got": got, "expected": want})
    return CheckReport(name, True, len(pairs))


def _example_report(name: str, mu, f, L1, R1, l, r, R, L, rl) -> CheckReport:
    b = distribution_bundle(mu, f)
    got_l, got_r = left_measure(b), right_measure(b)
    got_R, got_L = quasi_integral_R(mu, f), quasi_integral_L(mu, f)
    got_rl = rl_equal_criterion(b)[0]
    return _expect(name, [
        ("L1", b.L1.to_json(), L1.to_json(), b.L1.equals(L1)),
        ("R1", b.R1.to_json(), R1.to_json(), b.R1.equals(R1)),
        ("l", str(got_l), str(l), got_l == l),
        ("r", str(got_r), str(r), got_r == r),
        ("R", fmt(got_R), fmt(R), got_R == R),
        ("L", fmt(got_L), fmt(L), got_L == L),
        ("rl_equal", got_rl, rl, got_rl == rl),
    ])


def golden_hat() -> CheckReport:
    mu = SimpleContains(Interval.closed(0, 1))
    f = PwlFunction.on_line(HAT_NODES)
    return _example_report("golden_hat", mu, f, _step_up(1), _step_down(0),
                           BoundaryMeasure.dirac(1), BoundaryMeasure.dirac(0), ZERO, ONE, False)


def golden_plateau() -> CheckReport:
    mu = SimpleContains(Interval.closed(1, 2))
    f = PwlFunction.on_line(PLATEAU_NODES)
    return _example_report("golden_plateau", mu, f, _step_up(1), _step_down(1),
                           BoundaryMeasure.dirac(1), BoundaryMeasure.dirac(1), ONE, ONE, True)


def golden_lebesgue_identity() -> CheckReport:
    space = Space.compact(0, 1)
    mu = LebesgueOn(Interval.closed(0, 1), space)
    f = PwlFunction.from_points(space, [(0, 0), (1, 1)])
    got = quasi_integral_R(mu, f)
    return _expect("golden_lebesgue_identity", [("R", fmt(got), "1/2", got == Fraction(1, 2))])


def golden_suite() -> list:
    return [golden_hat(), golden_plateau(), golden_lebesgue_identity()]


# -- randomized identities ------------------------------------------------------

def _random_compact(rng: random.Random, lo=-2, hi=3) -> Interval:
    a, b = sampling.distinct_points(rng, 2, lo, hi, 8)
    if rng.random() < 0.1:
        b = a
    return Interval.closed(a, b)


def oracle_equivalence(seed: int, functions: int, sets: int) -> CheckReport:
    """R and L of a simple measure against direct min / max over D."""
    rng = random.Random(seed)
    Ds = [_random_compact(rng) for _ in range(sets)]
    for i in range(functions):
        D = Ds[i % sets]
        f = sampling.random_pwl(rng, Space.line(), nodes=rng.randint(1, 6))
        mu = SimpleContains(D)
        lo, hi = oracle_min_max(D, f)
        R, L = quasi_integral_R(mu, f), quasi_integral_L(mu, f)
        if (R, L) != (lo, hi):
            return CheckReport("oracle_min_max", False, i + 1,
                               {"D": D.to_json(), "f": f.to_json(), "R": fmt(R), "L": fmt(L),
                                "min": fmt(lo), "max": fmt(hi)})
    return CheckReport("oracle_min_max", True, functions, detail={"sets": sets})


def _linear_catalog() -> list:
    return [(name, mu) for name, mu in catalog() if mu.is_linear]


def linear_additivity(seed: int, pairs: int) -> CheckReport:
    """R(f + g) = R(f) + R(g), and R agrees with the direct integral, for every linear measure."""
    cases = 0
    for name, mu in _linear_catalog():
        rng = random.Random(f"{seed}:{name}")
        for _ in range(pairs):
            f = sampling.random_pwl(rng, Space.line())
            g = sampling.random_pwl(rng, Space.line())
            Rf, Rg, Rfg = quasi_integral_R(mu, f), quasi_integral_R(mu, g), quasi_integral_R(mu, f + g)
            cases += 1
            if Rfg != Rf + Rg or Rf != linear_integral(mu, f):
                return CheckReport("linear_additivity", False, cases,
                                   {"measure": name, "f": f.to_json(), "g": g.to_json(),
                                    "R_f": fmt(Rf), "R_g": fmt(Rg), "R_f_plus_g": fmt(Rfg),
                                    "direct_f": fmt(linear_integral(mu, f))})
    return CheckReport("linear_additivity", True, cases)


def _random_space(rng: random.Random) -> Space:
    return Space.line() if rng.random() < 0.75 else Space.compact(-1, 2)


def topological_r_equals_l(seed: int, pairs: int) -> CheckReport:
    rng = random.Random(seed)
    for i in range(pairs):
        space = _random_space(rng)
        mu = random_topological(rng, space)
        f = sampling.random_pwl(rng, space)
        b = distribution_bundle(mu, f)
        r, l = right_measure(b), left_measure(b)
        if r != l:
            return CheckReport("topological_r_equals_l", False, i + 1,
                               {"measure": mu.to_json(), "f": f.to_json(), "r": r.to_json(), "l": l.to_json()})
    return CheckReport("topological_r_equals_l", True, pairs)


def conic_suite(seed: int, cases: int) -> CheckReport:
    rng = random.Random(seed)
    for i in range(cases):
        space = _random_space(rng)
        mu = random_dtm(rng, space)
        f = sampling.random_pwl(rng, space)
        lo, hi = f.range_bounds()
        direction = NONDECREASING if rng.random() < 0.7 else NONINCREASING
        anchored = not space.is_compact
        phi = MonotoneProfile(sampling.random_profile(rng, lo, hi, anchored, direction), direction)
        psi = MonotoneProfile(sampling.random_profile(rng, lo, hi, anchored, direction), direction)
        a, b = sampling.rational(rng, 0, 3, 4), sampling.rational(rng, 0, 3, 4)
        rep = conic_check_on_cone(mu, f, phi, psi, a, b)
        if not rep.passed:
            return CheckReport("conic_on_cone", False, i + 1, {"measure": mu.to_json(), **rep.witness})
    return CheckReport("conic_on_cone", True, cases)


def partition_suite(seed: int, functions: int, ns=(2, 4, 8)) -> CheckReport:
    rng = random.Random(seed)
    cases = 0
    for _ in range(functions):
        space = _random_space(rng)
        mu = random_dtm(rng, space)
        f = sampling.random_pwl(rng, space, sign="nonneg", height=1)
        for n in ns:
            cases += 1
            rep = partition_identity_check(mu, f, n)
            if not rep.passed:
                return CheckReport("partition_identity", False, cases, {"measure": mu.to_json(), **rep.witness})
    return CheckReport("partition_identity", True, cases)


def duality_suite(seed: int, cases: int) -> CheckReport:
    rng = random.Random(seed)
    for i in range(cases):
        space = _random_space(rng)
        mu = random_dtm(rng, space)
        f = sampling.random_pwl(rng, space)
        rep = duality_check(mu, f)
        if not rep.passed:
            return CheckReport("duality", False, i + 1, {"measure": mu.to_json(), **rep.witness})
    return CheckReport("duality", True, cases)


def norm_suite() -> CheckReport:
    rows = []
    for space in (Space.line(), Space.compact(0, 1)):
        for name, mu in catalog(space):
            norm, mass = norm_estimate(induced_R(mu)), mu.total_mass()
            rows.append({"measure": name, "space": str(space), "norm": fmt(norm), "mass": fmt(mass)})
            if norm != mass:
                return CheckReport("norm_equals_mass", False, len(rows), rows[-1], {"table": rows})
    return CheckReport("norm_equals_mass", True, len(rows), None, {"table": rows})


def rl_criterion_suite(seed: int, pairs: int) -> CheckReport:
    """The L1 + R1 criterion agrees with direct comparison of the boundary measures."""
    rng = random.Random(seed)
    false_cases = 0
    for i in range(pairs):
        space = _random_space(rng)
        # weight toward simple measures so the unequal case shows up often
        kinds = ("simple", "simple", "dirac", "lebesgue")
        mu = random_dtm(rng, space, kinds=kinds)
        f = sampling.random_pwl(rng, space)
        b = distribution_bundle(mu, f)
        verdict, _ = rl_equal_criterion(b)
        direct = right_measure(b) == left_measure(b)
        false_cases += not direct
        if verdict != direct:
            return CheckReport("rl_criterion", False, i + 1,
                               {"measure": mu.to_json(), "f": f.to_json(), "criterion": verdict,
                                "direct": direct})
    return CheckReport("rl_criterion", True, pairs, detail={"false_cases": false_cases})


def pushforward_suite(seed: int, cases: int, per_pair: int = 10) -> CheckReport:
    rng = random.Random(seed)
    total = 0
    topological_open = 0
    i = 0
    while total < cases:
        space = _random_space(rng)
        mu = random_dtm(rng, space) if i % 2 else random_topological(rng, space)
        f = sampling.random_pwl(rng, space)
        rep = pushforward_check(mu, f, budget=per_pair, seed=rng.randrange(2 ** 31))
        total += rep.cases
        topological_open += rep.cases if mu.is_linear else 0
        i += 1
        if not rep.passed:
            return CheckReport("pushforward", False, total, {"measure": mu.to_json(), "f": f.to_json(),
                                                               **rep.witness})
    return CheckReport("pushforward", True, total, detail={"linear_cases": topological_open})


def integration_by_parts_suite(seed: int, pairs: int) -> CheckReport:
    rng = random.Random(seed)
    for i in range(pairs):
        F = random_monotone(rng, rng.choice((NONDECREASING, NONINCREASING)))
        G = random_monotone(rng, rng.choice((NONDECREASING, NONINCREASING)))
        a, b = sorted(sampling.distinct_points(rng, 2, -3, 3, 4))
        rep = integration_by_parts_check(F, G, a, b)
        if not rep.passed:
            return CheckReport("integration_by_parts", False, i + 1, rep.witness)
    return CheckReport("integration_by_parts", True, pairs)


def measure_validation_suite(seed: int, budget: int) -> CheckReport:
    rows = []
    for space in (Space.line(), Space.compact(0, 1)):
        for name, mu in catalog(space):
            rep = validate_dtm(mu, budget, seed)
            rows.append({"measure": name, "space": str(space), "status": rep.status,
                         "topological": is_topological_measure(mu, budget // 4 or 1, seed).status})
            if not rep.passed:
                return CheckReport("validate_catalog", False, len(rows), {"measure": name, **rep.witness},
                                   {"table": rows})
    return CheckReport("validate_catalog", True, len(rows), None, {"table": rows})


def hierarchy_suite(seed: int, budget: int) -> CheckReport:
    """Expected verdicts for the simple measure, hierarchy consistency, replayable witnesses."""
    sc = SimpleContains(Interval.closed(0, 1))
    R, L = induced_R(sc), induced_L(sc)
    rep_R = classify(R, budget, seed)
    rep_L = classify(L, budget, seed)
    expected = [(rep_R, "R_simple", cls, want) for cls, want in
                (("p_conic", "pass"), ("r", "pass"), ("d", "pass"), ("linear", "fail"), ("s", "fail"))]
    expected += [(rep_L, "L_simple", cls, want) for cls, want in
                 (("n_conic", "pass"), ("l", "pass"), ("p_conic", "fail"))]
    for rep, who, cls, want in expected:
        if rep.status(cls) != want:
            return CheckReport("hierarchy", False, 1, {"functional": who, "class": cls,
                                                       "got": rep.status(cls), "expected": want})
    for who, rho, rep in (("R_simple", R, rep_R), ("L_simple", L, rep_L)):
        if not rep.hierarchy_consistent:
            return CheckReport("hierarchy", False, 1, {"functional": who, "violations": rep.violations})
        for name, v in rep.clauses.items():
            if v.witness is not None and not replay_witness(rho, v.witness):
                return CheckReport("hierarchy", False, 1, {"functional": who, "clause": name,
                                                           "replay": "witness did not reproduce"})
    ql = quasi_linearity_check(R, PwlFunction.on_line(HAT_NODES), budget * 4, seed)
    if ql.passed:
        return CheckReport("hierarchy", False, 1, {"quasi_linearity": "no witness found"})
    return CheckReport("hierarchy", True, len(expected), None,
                       {"linear_witness": rep_R.verdicts["linear"].witness,
                        "quasi_linearity_witness": ql.witness})


def properties_suite(seed: int = 0, cases: int = 500) -> list:
    n = max(cases, 1)
    return [
        oracle_equivalence(seed, n, max(n // 25, 1)),
        linear_additivity(seed, n),
        topological_r_equals_l(seed, max(n // 5, 1)),
        conic_suite(seed, n),
        partition_suite(seed, max(n // 5, 1)),
        duality_suite(seed, n),
        norm_suite(),
        rl_criterion_suite(seed, max(2 * n // 5, 1)),
        pushforward_suite(seed, n),
        integration_by_parts_suite(seed, max(2 * n // 5, 1)),
        measure_validation_suite(seed, max(n // 5, 4)),
        hierarchy_suite(seed, max(n // 20, 5)),
    ]


def roundtrip_suite(seed: int = 0, cases: int = 50) -> list:
    """Reconstruct every catalog measure on ``cases`` random open and compact sets."""
    out = []
    for name, mu in catalog():
        rng = random.Random(f"{seed}:{name}")
        sets = [sampling.random_interval_set(rng, mu.space, kind="open" if i % 2 else "compact")
                for i in range(cases)]
        rep = round_trip_check(mu, sets)
        rep.name = f"round_trip[{name}]"
        out.append(rep)
    return out


SUITES = {"golden": lambda seed, cases: golden_suite(),
          "properties": properties_suite,
          "roundtrip": roundtrip_suite}
