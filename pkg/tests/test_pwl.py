import random
from fractions import Fraction as F

import pytest

from oracles import as_tuples, grid, interp, member
from quasint import sampling
from quasint.errors import DomainTooSmall, NotAnchoredAtZero
from quasint.intervals import Interval, IntervalSet, Space
from quasint.pwl import (MonotoneProfile, PwlFunction, compose_monotone, cone_partition,
                         restricted_extrema)

HAT = [(-1, 0), (0, 1), (1, 0)]
PLATEAU = [(-1, 0), (0, 2), (1, 1), (2, 1), (3, 0)]
LINE = Space.line()


def hat():
    return PwlFunction.on_line(HAT)


def test_evaluation():
    f = hat()
    assert f(F(1, 2)) == F(1, 2)
    assert f(5) == 0
    assert PwlFunction.on_line(PLATEAU)(F(3, 2)) == 1


def test_evaluation_matches_interpolation():
    rng = random.Random(2)
    for _ in range(200):
        f = sampling.random_pwl(rng, LINE)
        pts = list(zip(f.xs, f.ys))
        for x in grid(-3, 4, 8):
            assert f(x) == interp(pts, x)


def test_level_sets_examples():
    f = hat()
    assert f.superlevel(F(1, 2)) == IntervalSet.of(Interval.open(F(-1, 2), F(1, 2)))
    assert f.superlevel(0) == IntervalSet.of(Interval.open(-1, 1))
    assert f.superlevel(0, strict=False) == LINE.whole()
    g = PwlFunction.on_line(PLATEAU)
    assert g.superlevel(1, strict=False) == IntervalSet.of(Interval.closed(F(-1, 2), 2))


def test_level_sets_match_pointwise_oracle():
    rng = random.Random(3)
    xs = grid(-3, 4, 16)
    for k in range(200):
        space = LINE if k % 2 else Space.compact(-1, 2)
        f = sampling.random_pwl(rng, space)
        t = rng.choice(list(f.ys) + [sampling.rational(rng, -2, 2, 8)])
        sets = {
            "gt": (f.superlevel(t), lambda v: v > t),
            "ge": (f.superlevel(t, strict=False), lambda v: v >= t),
            "lt": (f.sublevel(t), lambda v: v < t),
            "le": (f.sublevel(t, strict=False), lambda v: v <= t),
        }
        for A, pred in sets.values():
            parts = as_tuples(A)
            for x in xs:
                if space.contains(x):
                    assert member(parts, x) == pred(f(x))
                else:
                    assert not member(parts, x)


def test_superlevel_antitone():
    rng = random.Random(4)
    for _ in range(200):
        f = sampling.random_pwl(rng, LINE)
        s, t = sorted(sampling.rational(rng, -2, 2, 4) for _ in range(2))
        assert f.superlevel(t).is_subset(f.superlevel(s))
        assert f.superlevel(t, False).is_subset(f.superlevel(s, False))


def test_algebra_examples():
    f = hat()
    assert f + f == 2 * f
    compact = Space.compact(-1, 1)
    clipped = f.restrict(compact).minimum(PwlFunction.constant(compact, F(1, 2)))
    assert max(clipped.ys) == F(1, 2) and clipped(F(1, 4)) == F(1, 2)
    g = PwlFunction.on_line([(-1, 0), (0, -1), (1, 0), (2, 1), (3, 0)])
    p = g.pos_part()
    assert all(p(x) == 0 for x in grid(-1, 1, 8))
    assert all(p(x) == g(x) for x in grid(1, 3, 8))


def test_min_max_identity_and_closure():
    rng = random.Random(5)
    for _ in range(1000):
        f, g = sampling.random_pwl(rng, LINE), sampling.random_pwl(rng, LINE)
        h = rng.choice([f + g, f - g, f.minimum(g), f.maximum(g), F(3, 2) * f, f.pos_part(), f.neg_part()])
        assert h(-10) == 0 and h(10) == 0
        assert f.minimum(g) + f.maximum(g) == f + g


def test_composition_examples():
    f = hat()
    assert compose_monotone(MonotoneProfile.identity(0, 1), f) == f
    relu = MonotoneProfile.from_points([(-2, 0), (0, 0), (2, 2)])
    rng = random.Random(6)
    for _ in range(50):
        g = sampling.random_pwl(rng, LINE)
        assert compose_monotone(relu, g) == g.pos_part()
    cap = MonotoneProfile.from_points([(0, 0), (F(1, 2), F(1, 2)), (1, F(1, 2))])
    clipped = compose_monotone(cap, f)
    for x in grid(-2, 2, 64):
        assert clipped(x) == min(interp(HAT, x), F(1, 2))


def test_composition_guards():
    f = hat()
    with pytest.raises(DomainTooSmall):
        f.compose(PwlFunction.identity(0, F(1, 2)))
    with pytest.raises(NotAnchoredAtZero):
        f.compose(PwlFunction.from_points(Space.compact(0, 1), [(0, 1), (1, 2)]))


def test_cone_structure():
    rng = random.Random(7)
    for _ in range(100):
        f = sampling.random_pwl(rng, LINE)
        lo, hi = f.range_bounds()
        phi = MonotoneProfile(sampling.random_profile(rng, lo, hi, True, "nondecreasing"))
        psi = MonotoneProfile(sampling.random_profile(rng, lo, hi, True, "nondecreasing"))
        a, b = sampling.rational(rng, 0, 2, 4), sampling.rational(rng, 0, 2, 4)
        lhs = compose_monotone(phi.combine(a, psi, b), f)
        assert lhs == a * compose_monotone(phi, f) + b * compose_monotone(psi, f)


def test_cone_partition():
    f = hat()
    f1, f2 = cone_partition(f, 2)
    for x in grid(-2, 2, 32):
        assert f1(x) == min(interp(HAT, x), F(1, 2))
        assert f2(x) == max(interp(HAT, x) - F(1, 2), 0)
    assert cone_partition(f, 1) == [f]
    g = F(1, 2) * PwlFunction.on_line(PLATEAU)
    pieces = cone_partition(g, 4)
    assert len(pieces) == 4 and sum(pieces[1:], pieces[0]) == g
    rng = random.Random(8)
    for _ in range(100):
        h = sampling.random_pwl(rng, LINE, sign="nonneg", height=1)
        n = rng.choice((2, 3, 4, 8))
        parts = cone_partition(h, n)
        assert sum(parts[1:], parts[0]) == h
        assert all(0 <= min(p.ys) and max(p.ys) <= F(1, n) for p in parts)


def test_extrema():
    assert restricted_extrema(hat(), Interval.closed(0, 1)) == (0, 1)
    assert restricted_extrema(PwlFunction.on_line(PLATEAU), Interval.closed(1, 2)) == (1, 1)
    c = PwlFunction.constant(Space.compact(0, 3), F(7, 3))
    assert restricted_extrema(c, Interval.closed(1, 2)) == (F(7, 3), F(7, 3))
    assert hat().range_bounds() == (0, 1)
    assert hat().support() == IntervalSet.of(Interval.closed(-1, 1))
    assert PwlFunction.on_line([(-1, 0), (0, 2), (1, 0)]).superlevel(-1) == LINE.whole()


def test_json_round_trip():
    f = PwlFunction.on_line(PLATEAU)
    assert PwlFunction.from_json(f.to_json()) == f
    assert f.to_json()["breakpoints"][1] == ["0", "2"]
    assert PwlFunction.from_json({"breakpoints": [["-1", "0"], ["1/2", "3/4"], ["1", "0"]]})(F(1, 2)) == F(3, 4)
