"""Seeded random generators for rationals, interval sets and PWL functions.

All generators draw from a :class:`random.Random` passed by the caller, so a
seed fully determines every case.  Values live on a dyadic grid so exact
arithmetic stays cheap.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .intervals import INF, Interval, IntervalSet, Space
from .pwl import PwlFunction

DEFAULT_WINDOW = (Fraction(-2), Fraction(3))


def rational(rng: random.Random, lo, hi, den: int = 8) -> Fraction:
    lo_n, hi_n = int(Fraction(lo) * den), int(Fraction(hi) * den)
    return Fraction(rng.randint(lo_n, hi_n), den)


def distinct_points(rng: random.Random, k: int, lo, hi, den: int = 8) -> list:
    lo_n, hi_n = int(Fraction(lo) * den), int(Fraction(hi) * den)
    k = min(k, hi_n - lo_n + 1)
    return sorted(Fraction(n, den) for n in rng.sample(range(lo_n, hi_n + 1), k))


def window_for(space: Space, window=None) -> tuple:
    if space.is_compact:
        return space.a, space.b
    return tuple(Fraction(w) for w in (window or DEFAULT_WINDOW))


def random_pwl(rng: random.Random, space: Space, window=None, nodes: Optional[int] = None,
               sign: str = "any", height: int = 2, den: int = 8) -> PwlFunction:
    """Random PWL function; ``sign`` is ``"any"``, ``"nonneg"`` or ``"nonpos"``."""
    lo, hi = window_for(space, window)
    k = nodes if nodes is not None else rng.randint(1, 5)
    lo_y = 0 if sign == "nonneg" else -height
    hi_y = 0 if sign == "nonpos" else height
    if space.is_compact:
        xs = sorted({lo, hi} | set(distinct_points(rng, k, lo, hi, den)))
        pts = [(x, rational(rng, lo_y, hi_y, 4)) for x in xs]
    else:
        xs = distinct_points(rng, k + 2, lo, hi, den)
        pts = [(xs[0], 0)] + [(x, rational(rng, lo_y, hi_y, 4)) for x in xs[1:-1]] + [(xs[-1], 0)]
    return PwlFunction.from_points(space, pts)


def random_tent(rng: random.Random, space: Space, lo, hi, sign: int = 1, den: int = 8) -> PwlFunction:
    """A tent (or flat-topped bump) supported inside ``[lo, hi]``, sign +1 or -1."""
    a, b = Fraction(lo), Fraction(hi)
    pts = distinct_points(rng, 3, a, b, den * 4)
    while len(pts) < 3:
        pts = sorted({a, (a + b) / 2, b})
    h = sign * rational(rng, Fraction(1, 4), 2, 4)
    bump = PwlFunction.on_line([(pts[0], 0), (pts[1], h), (pts[2], 0)])
    return bump.restrict(space)


def random_interval_set(rng: random.Random, space: Space, window=None, kind: str = "open",
                        parts: Optional[int] = None, den: int = 8) -> IntervalSet:
    """Random open or compact interval set inside ``space``."""
    lo, hi = window_for(space, window)
    m = parts if parts is not None else rng.randint(1, 3)
    pts = distinct_points(rng, 2 * m, lo, hi, den)
    if len(pts) % 2:
        pts = pts[:-1]
    intervals = []
    for i in range(0, len(pts), 2):
        a, b = pts[i], pts[i + 1]
        if kind == "compact":
            if rng.random() < 0.15:
                b = a
            intervals.append(Interval.closed(a, b))
        else:
            intervals.append(Interval.open(a, b))
    if kind == "open" and intervals:
        if space.is_compact:
            if rng.random() < 0.3:
                first = intervals[0]
                intervals[0] = Interval(space.a, first.hi, False, True)
            if rng.random() < 0.3:
                last = intervals[-1]
                intervals[-1] = Interval(last.lo, space.b, True, False)
        else:
            if rng.random() < 0.2:
                intervals[0] = Interval(-INF, intervals[0].hi, True, True)
            if rng.random() < 0.2:
                intervals[-1] = Interval(intervals[-1].lo, INF, True, True)
    return IntervalSet.of(intervals)


def random_monotone_points(rng: random.Random, lo, hi, increasing: bool = True,
                           anchor_zero: bool = True, nodes: int = 3, den: int = 8) -> list:
    """Breakpoints of a random monotone profile on ``[lo, hi]`` (vanishing at 0 if asked)."""
    lo, hi = Fraction(lo), Fraction(hi)
    xs = sorted({lo, hi} | set(distinct_points(rng, nodes, lo, hi, den)))
    if anchor_zero and lo <= 0 <= hi:
        xs = sorted(set(xs) | {Fraction(0)})
    incs = [rational(rng, 0, 2, 4) for _ in xs[1:]]
    ys = [Fraction(0)]
    for d in incs:
        ys.append(ys[-1] + d)
    if anchor_zero and lo <= 0 <= hi:
        z = ys[xs.index(Fraction(0))]
        ys = [y - z for y in ys]
    if not increasing:
        ys = [-y for y in ys]
    return list(zip(xs, ys))


def random_profile(rng: random.Random, lo, hi, anchored: bool = True,
                   direction: Optional[str] = None) -> PwlFunction:
    """Random profile on the compact interval ``[lo, hi]`` (widened if degenerate).

    ``direction`` is None for an arbitrary profile, or "nondecreasing" /
    "nonincreasing".  When ``anchored`` and 0 lies in the interval the
    profile vanishes at 0.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        lo, hi = lo - 1, hi + 1
    dom = Space.compact(lo, hi)
    if direction is not None:
        pts = random_monotone_points(rng, lo, hi, direction == "nondecreasing", anchored, 3, 8)
        return PwlFunction.from_points(dom, pts)
    xs = sorted({lo, hi} | set(distinct_points(rng, 3, lo, hi, 8)))
    pin = anchored and lo <= 0 <= hi
    if pin:
        xs = sorted(set(xs) | {Fraction(0)})
    return PwlFunction.from_points(dom, [(x, Fraction(0) if pin and x == 0 else rational(rng, -2, 2, 4))
                                         for x in xs])
