import random
from fractions import Fraction as F

from oracles import grid, min_max_on
from quasint import sampling
from quasint.distributions import (BoundaryMeasure, PiecewiseAffine, distribution_bundle,
                                   integral_of_identity, integration_by_parts_check, left_measure,
                                   measure_of, pushforward_check, right_measure, rl_equal_criterion,
                                   stieltjes_integral)
from quasint.intervals import Interval, IntervalSet, Space
from quasint.measures import Dirac, LebesgueOn, SimpleContains, random_dtm
from quasint.pwl import PwlFunction

HAT = PwlFunction.on_line([(-1, 0), (0, 1), (1, 0)])
PLATEAU = PwlFunction.on_line([(-1, 0), (0, 2), (1, 1), (2, 1), (3, 0)])
UNIT = Space.compact(0, 1)
O, C = Interval.open, Interval.closed


def step_up(t):
    return PiecewiseAffine(((F(t), F(0), F(0), F(1)),))


def step_down(t):
    return PiecewiseAffine(((F(t), F(1), F(0), F(0)),))


def test_hat_against_unit_simple_measure():
    b = distribution_bundle(SimpleContains(C(0, 1)), HAT)
    assert b.L1.equals(step_up(1)) and b.R1.equals(step_down(0))
    assert left_measure(b) == BoundaryMeasure.dirac(1)
    assert right_measure(b) == BoundaryMeasure.dirac(0)
    assert rl_equal_criterion(b)[0] is False
    assert b.violations() == []


def test_plateau_function_against_simple_measure():
    b = distribution_bundle(SimpleContains(C(1, 2)), PLATEAU)
    assert b.L1.equals(step_up(1)) and b.R1.equals(step_down(1))
    assert left_measure(b) == right_measure(b) == BoundaryMeasure.dirac(1)
    assert rl_equal_criterion(b) == (True, None)


def test_lebesgue_identity_bundle():
    mu = LebesgueOn(C(0, 1), UNIT)
    f = PwlFunction.from_points(UNIT, [(0, 0), (1, 1)])
    b = distribution_bundle(mu, f)
    for t in grid(0, 1, 16):
        assert b.R1(t) == 1 - t and b.L1(t) == t
    assert right_measure(b) == left_measure(b) == BoundaryMeasure.uniform(0, 1)


def test_simple_measure_bundles_are_steps_at_extrema():
    rng = random.Random(21)
    for _ in range(100):
        a, c = sampling.distinct_points(rng, 2, -2, 3, 4)
        mu = SimpleContains(C(a, c))
        f = sampling.random_pwl(rng, Space.line())
        lo, hi = min_max_on(f, a, c)
        b = distribution_bundle(mu, f)
        assert right_measure(b) == BoundaryMeasure.dirac(lo)
        assert left_measure(b) == BoundaryMeasure.dirac(hi)
        for t in grid(-3, 3, 8):
            assert b.R1(t) == (1 if t < lo else 0)
            assert b.L1(t) == (1 if t > hi else 0)


def test_constant_function_gives_point_masses():
    rng = random.Random(22)
    for _ in range(50):
        mu = random_dtm(rng, UNIT)
        c = sampling.rational(rng, -2, 2, 4)
        b = distribution_bundle(mu, PwlFunction.constant(UNIT, c))
        m = mu.total_mass()
        assert right_measure(b) == left_measure(b) == BoundaryMeasure.dirac(c, m)


def test_bundle_invariants_hold_on_random_data():
    rng = random.Random(23)
    for k in range(150):
        space = UNIT if k % 3 == 0 else Space.line()
        mu, f = random_dtm(rng, space), sampling.random_pwl(rng, space)
        b = distribution_bundle(mu, f)
        assert b.violations() == []
        for t in grid(-3, 3, 8):
            assert b.R1(t) == mu.eval(f.superlevel(t))
            assert b.L1(t) == mu.eval(f.sublevel(t))


def test_stieltjes_examples():
    assert measure_of(BoundaryMeasure.dirac(1), C(0, 1)) == 1
    assert measure_of(BoundaryMeasure.dirac(1), O(0, 1)) == 0
    assert measure_of(BoundaryMeasure.uniform(0, 2), O(0, 1)) == 1
    assert integral_of_identity(BoundaryMeasure.uniform(0, 1)) == F(1, 2)
    assert integral_of_identity(BoundaryMeasure.dirac(3, 2)) == 6
    sq = PwlFunction.from_points(Space.compact(0, 2), [(0, 0), (1, 1), (2, 3)])
    assert stieltjes_integral(sq, BoundaryMeasure.uniform(0, 2)) == F(1, 2) + 2
    assert stieltjes_integral(sq, BoundaryMeasure(())) == 0


def test_integration_by_parts_example():
    F_ = step_up(0)
    G_ = PiecewiseAffine(((F(0), F(0), F(1), F(1)),))
    assert integration_by_parts_check(F_, G_, -1, 1).passed
    ramp = PiecewiseAffine(((F(0), F(0), F(0), F(0)), (F(1), F(1), F(1), F(1))))
    assert integration_by_parts_check(ramp, ramp, -1, 2).passed
    assert integration_by_parts_check(ramp, F_, F(1, 2), 2).passed


def test_pushforward_examples():
    mu = SimpleContains(C(0, 1))
    b = distribution_bundle(mu, HAT)
    A = IntervalSet.of(O(F(1, 2), 2))
    assert mu.eval(HAT.preimage(A)) == 0
    assert right_measure(b).measure_of(A) == 0 and left_measure(b).measure_of(A) == 1
    assert pushforward_check(mu, HAT, budget=30).passed
    assert pushforward_check(Dirac(F(1, 2)), HAT, budget=30).passed
    assert pushforward_check(LebesgueOn(C(-1, 1)), HAT, budget=30).passed


def test_csv_layout():
    text = distribution_bundle(SimpleContains(C(0, 1)), HAT).to_csv()
    lines = text.splitlines()
    assert lines[0] == "t,L1,L2,R1,R2"
    assert lines[1].split(",")[0] == "0"
    assert all(len(line.split(",")) == 5 for line in lines)
