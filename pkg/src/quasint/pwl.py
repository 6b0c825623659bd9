"""Continuous piecewise-linear functions with rational breakpoints.

On the line a :class:`PwlFunction` has zero tails outside its first and last
breakpoint (so it is compactly supported); on a compact space ``[a, b]`` the
breakpoints run exactly from ``a`` to ``b``.  Every operation here (sums,
min/max, monotone composition, positive parts, the ramp partition) returns a
function of the same kind with exact rational data.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (DomainTooSmall, EmptySet, InvalidInterval, NotAnchoredAtZero,
                     NotContained, OutOfDomain, RangeViolation, SpaceMismatch)
from .intervals import INF, Interval, IntervalSet, Space
from .rationals import as_rational, fmt

ZERO = Fraction(0)


def _collinear(x0, y0, x1, y1, x2, y2) -> bool:
    return (y1 - y0) * (x2 - x1) == (y2 - y1) * (x1 - x0)


def _simplify(space: Space, xs: list, ys: list):
    out_x, out_y = [], []
    for x, y in zip(xs, ys):
        if len(out_x) >= 2 and _collinear(out_x[-2], out_y[-2], out_x[-1], out_y[-1], x, y):
            out_x[-1], out_y[-1] = x, y
        else:
            out_x.append(x)
            out_y.append(y)
    if not space.is_compact:
        while len(out_x) >= 2 and out_y[0] == 0 and out_y[1] == 0:
            del out_x[0], out_y[0]
        while len(out_x) >= 2 and out_y[-1] == 0 and out_y[-2] == 0:
            del out_x[-1], out_y[-1]
        if len(out_x) == 1:
            out_x, out_y = [ZERO], [ZERO]
    return tuple(out_x), tuple(out_y)


@dataclass(frozen=True)
class PwlFunction:
    """Continuous piecewise-linear function; build with :meth:`from_points`."""

    space: Space
    xs: tuple
    ys: tuple

    def __post_init__(self):
        if len(self.xs) != len(self.ys) or not self.xs:
            raise InvalidInterval("need matching, non-empty breakpoint lists")
        if any(b <= a for a, b in zip(self.xs, self.xs[1:])):
            raise InvalidInterval("breakpoints must be strictly increasing")
        if self.space.is_compact:
            if self.xs[0] != self.space.a or self.xs[-1] != self.space.b:
                raise InvalidInterval("breakpoints must span the compact space exactly")
        elif self.ys[0] != 0 or self.ys[-1] != 0:
            raise InvalidInterval("a function on the line must start and end at 0")

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_points(cls, space: Space, points: Iterable) -> "PwlFunction":
        pts = sorted((as_rational(x), as_rational(y)) for x, y in points)
        if any(a[0] == b[0] for a, b in zip(pts, pts[1:])):
            raise InvalidInterval("duplicate breakpoint abscissa")
        xs, ys = _simplify(space, [p[0] for p in pts], [p[1] for p in pts])
        return cls(space, xs, ys)

    @classmethod
    def on_line(cls, points: Iterable) -> "PwlFunction":
        return cls.from_points(Space.line(), points)

    @classmethod
    def zero(cls, space: Space) -> "PwlFunction":
        return cls.constant(space, 0)

    @classmethod
    def constant(cls, space: Space, c) -> "PwlFunction":
        c = as_rational(c)
        if not space.is_compact:
            if c != 0:
                raise OutOfDomain("non-zero constants are not compactly supported on the line")
            return cls(space, (ZERO,), (ZERO,))
        return cls(space, (space.a, space.b), (c, c))

    @classmethod
    def identity(cls, lo, hi) -> "PwlFunction":
        """``id`` on the compact interval ``[lo, hi]`` (lo < hi)."""
        lo, hi = as_rational(lo), as_rational(hi)
        return cls(Space.compact(lo, hi), (lo, hi), (lo, hi))

    @classmethod
    def hat(cls, lo, top, hi, height=1) -> "PwlFunction":
        return cls.on_line([(lo, 0), (top, height), (hi, 0)])

    @classmethod
    def trapezoid(cls, lo, top_lo, top_hi, hi, height=1) -> "PwlFunction":
        pts = {lo: 0, top_lo: height, top_hi: height, hi: 0}
        return cls.on_line(pts.items())

    def restrict(self, space: Space) -> "PwlFunction":
        """Re-express a line function on a compact space (values outside are dropped)."""
        if not space.is_compact:
            if self.space.is_compact:
                raise SpaceMismatch("cannot extend a compact-space function to the line")
            return self
        inner = [(x, y) for x, y in zip(self.xs, self.ys) if space.a < x < space.b]
        pts = [(space.a, self(space.a))] + inner + [(space.b, self(space.b))]
        return PwlFunction.from_points(space, pts)

    # -- evaluation -----------------------------------------------------------

    def __call__(self, x) -> Fraction:
        x = as_rational(x) if not isinstance(x, Fraction) else x
        xs = self.xs
        if x < xs[0] or x > xs[-1]:
            if self.space.is_compact:
                raise OutOfDomain(f"{fmt(x)} outside {self.space}")
            return ZERO
        i = bisect_right(xs, x)
        if i == len(xs):
            return self.ys[-1]
        x0, x1 = xs[i - 1], xs[i]
        y0, y1 = self.ys[i - 1], self.ys[i]
        if x == x0:
            return y0
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    evaluate = __call__

    def points(self) -> list:
        return list(zip(self.xs, self.ys))

    def segments(self):
        for i in range(len(self.xs) - 1):
            yield self.xs[i], self.ys[i], self.xs[i + 1], self.ys[i + 1]

    def slope_on(self, lo, hi) -> Fraction:
        """Slope on the sub-interval ``[lo, hi]`` (which must not straddle a breakpoint)."""
        return (self(hi) - self(lo)) / (hi - lo)

    # -- level sets -----------------------------------------------------------

    def preimage(self, target: IntervalSet) -> IntervalSet:
        """Exact ``f^{-1}(target)`` inside the function's space."""
        return self._preimage(target.endpoints(), target.contains)

    def _preimage(self, levels, contains) -> IntervalSet:
        # ``contains`` only changes truth value at ``levels``
        xs, ys = self.xs, self.ys
        px, pv = [xs[0]], [ys[0]]
        for i in range(len(xs) - 1):
            x0, y0, x1, y1 = xs[i], ys[i], xs[i + 1], ys[i + 1]
            if y0 != y1:
                lo, hi = (y0, y1) if y0 < y1 else (y1, y0)
                crossings = [c for c in levels if lo < c < hi]
                if y1 < y0:
                    crossings.reverse()
                for c in crossings:
                    px.append(x0 + (c - y0) * (x1 - x0) / (y1 - y0))
                    pv.append(c)
            px.append(x1)
            pv.append(y1)
        # alternate points and open cells, then collect maximal runs of members
        line = not self.space.is_compact
        tail = line and contains(ZERO)
        elems = []  # (lo, lo_open, hi, hi_open, member)
        if line:
            elems.append((-INF, True, px[0], True, tail))
        for i, (x, v) in enumerate(zip(px, pv)):
            elems.append((x, False, x, False, contains(v)))
            if i + 1 < len(px):
                elems.append((x, True, px[i + 1], True, contains((v + pv[i + 1]) / 2)))
        if line:
            elems.append((px[-1], True, INF, True, tail))
        parts = []
        run = None
        for lo, lo_open, hi, hi_open, member in elems:
            if member:
                if run is None:
                    run = [lo, lo_open, hi, hi_open]
                else:
                    run[2], run[3] = hi, hi_open
            elif run is not None:
                parts.append(Interval(run[0], run[2], run[1], run[3]))
                run = None
        if run is not None:
            parts.append(Interval(run[0], run[2], run[1], run[3]))
        return IntervalSet._trusted(tuple(parts))

    def _sign_cells(self, t: Fraction) -> list:
        """Points and open cells, in order, tagged with the sign of ``f - t`` there."""
        xs, ys = self.xs, self.ys
        tn, td = t.numerator, t.denominator
        signs = []
        for y in ys:
            d = y.numerator * td - tn * y.denominator
            signs.append((d > 0) - (d < 0))
        px, ps = [xs[0]], [signs[0]]
        for i in range(len(xs) - 1):
            s0, s1 = signs[i], signs[i + 1]
            if s0 * s1 < 0:
                x0, y0, x1, y1 = xs[i], ys[i], xs[i + 1], ys[i + 1]
                px.append(x0 + (t - y0) * (x1 - x0) / (y1 - y0))
                ps.append(0)
            px.append(xs[i + 1])
            ps.append(s1)
        cells = []
        tail = (0 if t == 0 else (1 if t < 0 else -1))
        line = not self.space.is_compact
        if line:
            cells.append((-INF, True, px[0], True, tail))
        n = len(px)
        for i in range(n):
            cells.append((px[i], False, px[i], False, ps[i]))
            if i + 1 < n:
                cells.append((px[i], True, px[i + 1], True, ps[i] if ps[i] != 0 else ps[i + 1]))
        if line:
            cells.append((px[-1], True, INF, True, tail))
        return cells

    @staticmethod
    def _runs(cells: list, keep: tuple) -> IntervalSet:
        parts = []
        run = None
        for lo, lo_open, hi, hi_open, sign in cells:
            if sign in keep:
                if run is None:
                    run = [lo, lo_open, hi, hi_open]
                else:
                    run[2], run[3] = hi, hi_open
            elif run is not None:
                parts.append(Interval._raw(run[0], run[2], run[1], run[3]))
                run = None
        if run is not None:
            parts.append(Interval._raw(run[0], run[2], run[1], run[3]))
        return IntervalSet._trusted(tuple(parts))

    def _level_set(self, t: Fraction, keep: tuple) -> IntervalSet:
        """Points whose value compares to ``t`` with a sign in ``keep`` (-1, 0, 1)."""
        return self._runs(self._sign_cells(t), keep)

    def level_sets(self, t) -> tuple:
        """``({f < t}, {f <= t}, {f > t}, {f >= t})`` from a single pass."""
        cells = self._sign_cells(as_rational(t))
        return (self._runs(cells, (-1,)), self._runs(cells, (-1, 0)),
                self._runs(cells, (1,)), self._runs(cells, (0, 1)))

    def superlevel(self, t, strict: bool = True) -> IntervalSet:
        """``f^{-1}((t, inf))`` when strict, else ``f^{-1}([t, inf))``."""
        return self._level_set(as_rational(t), (1,) if strict else (0, 1))

    def sublevel(self, t, strict: bool = True) -> IntervalSet:
        """``f^{-1}((-inf, t))`` when strict, else ``f^{-1}((-inf, t])``."""
        return self._level_set(as_rational(t), (-1,) if strict else (-1, 0))

    # -- algebra --------------------------------------------------------------

    def _check_space(self, other: "PwlFunction"):
        if self.space != other.space:
            raise SpaceMismatch(f"{self.space} vs {other.space}")

    def _merged(self, other: "PwlFunction") -> list:
        self._check_space(other)
        return sorted(set(self.xs) | set(other.xs))

    def __add__(self, other: "PwlFunction") -> "PwlFunction":
        xs = self._merged(other)
        return PwlFunction.from_points(self.space, [(x, self(x) + other(x)) for x in xs])

    def __neg__(self) -> "PwlFunction":
        return PwlFunction(self.space, self.xs, tuple(-y for y in self.ys))

    def __sub__(self, other: "PwlFunction") -> "PwlFunction":
        return self + (-other)

    def scale(self, c) -> "PwlFunction":
        c = as_rational(c)
        return PwlFunction.from_points(self.space, [(x, c * y) for x, y in zip(self.xs, self.ys)])

    def __rmul__(self, c) -> "PwlFunction":
        return self.scale(c)

    def shift(self, c) -> "PwlFunction":
        """``f + c`` (compact spaces only; on the line the result would not vanish)."""
        return self + PwlFunction.constant(self.space, c)

    def _extremum(self, other: "PwlFunction", pick) -> "PwlFunction":
        xs = self._merged(other)
        cands = set(xs)
        for x0, x1 in zip(xs, xs[1:]):
            d0, d1 = self(x0) - other(x0), self(x1) - other(x1)
            if d0 * d1 < 0:
                cands.add(x0 + d0 * (x1 - x0) / (d0 - d1))
        return PwlFunction.from_points(self.space,
                                       [(x, pick(self(x), other(x))) for x in sorted(cands)])

    def minimum(self, other: "PwlFunction") -> "PwlFunction":
        return self._extremum(other, min)

    def maximum(self, other: "PwlFunction") -> "PwlFunction":
        return self._extremum(other, max)

    def pos_part(self) -> "PwlFunction":
        return self.maximum(PwlFunction.zero(self.space))

    def neg_part(self) -> "PwlFunction":
        return (-self).maximum(PwlFunction.zero(self.space))

    def compose(self, phi: "PwlFunction") -> "PwlFunction":
        """``phi o f`` for a profile ``phi`` given on a compact interval covering f's range."""
        if not phi.space.is_compact:
            raise DomainTooSmall("a profile must live on a compact interval")
        lo, hi = self.range_bounds()
        if lo < phi.space.a or hi > phi.space.b:
            raise DomainTooSmall(f"profile domain {phi.space} does not cover [{fmt(lo)}, {fmt(hi)}]")
        if not self.space.is_compact and phi(ZERO) != 0:
            raise NotAnchoredAtZero("profile must vanish at 0 for functions on the line")
        cands = set(self.xs)
        for x0, y0, x1, y1 in self.segments():
            if y0 == y1:
                continue
            a, b = min(y0, y1), max(y0, y1)
            for c in phi.xs:
                if a < c < b:
                    cands.add(x0 + (c - y0) * (x1 - x0) / (y1 - y0))
        return PwlFunction.from_points(self.space, [(x, phi(self(x))) for x in sorted(cands)])

    # -- extrema and supports -------------------------------------------------

    def range_bounds(self) -> tuple:
        lo, hi = min(self.ys), max(self.ys)
        if not self.space.is_compact:
            lo, hi = min(lo, ZERO), max(hi, ZERO)
        return lo, hi

    def sup_norm(self) -> Fraction:
        lo, hi = self.range_bounds()
        return max(-lo, hi)

    def support(self) -> IntervalSet:
        nonzero = IntervalSet.of(Interval(-INF, ZERO, True, True), Interval(ZERO, INF, True, True))
        return self.preimage(nonzero).closure()

    def restricted_extrema(self, K) -> tuple:
        """(min, max) of f over a compact, non-empty interval set ``K``."""
        K = K if isinstance(K, IntervalSet) else IntervalSet.of(K)
        if K.is_empty:
            raise EmptySet("extrema over the empty set")
        if not K.is_compact():
            raise InvalidInterval(f"{K} is not compact")
        if not K.is_subset(self.space.whole()):
            raise NotContained(f"{K} not inside {self.space}")
        vals = [self(p) for p in K.endpoints()]
        vals += [y for x, y in zip(self.xs, self.ys) if K.contains(x)]
        return min(vals), max(vals)

    def is_nonnegative(self) -> bool:
        return self.range_bounds()[0] >= 0

    def is_nonpositive(self) -> bool:
        return self.range_bounds()[1] <= 0

    def dominated_by(self, other: "PwlFunction") -> bool:
        """Pointwise ``self <= other``."""
        return all(self(x) <= other(x) for x in self._merged(other))

    def product_zero(self, other: "PwlFunction") -> bool:
        """True iff ``f * g == 0`` everywhere."""
        xs = self._merged(other)
        pts = xs + [(a + b) / 2 for a, b in zip(xs, xs[1:])]
        return all(self(x) * other(x) == 0 for x in pts)

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        return {"space": self.space.to_json(),
                "breakpoints": [[fmt(x), fmt(y)] for x, y in zip(self.xs, self.ys)]}

    @classmethod
    def from_json(cls, data, space: Optional[Space] = None) -> "PwlFunction":
        sp = Space.from_json(data["space"]) if "space" in data else (space or Space.line())
        if space is not None and sp != space:
            raise SpaceMismatch("function space differs from scenario space")
        return cls.from_points(sp, [(x, y) for x, y in data["breakpoints"]])

    def __str__(self) -> str:
        pts = ", ".join(f"({fmt(x)}, {fmt(y)})" for x, y in zip(self.xs, self.ys))
        return f"pwl[{self.space}]({pts})"


NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"


@dataclass(frozen=True)
class MonotoneProfile:
    """A monotone piecewise-linear map ``phi`` on a compact interval, used to build cone elements."""

    fn: PwlFunction
    direction: str = NONDECREASING

    def __post_init__(self):
        if not self.fn.space.is_compact:
            raise DomainTooSmall("profiles live on compact intervals")
        ys = self.fn.ys
        steps = [b - a for a, b in zip(ys, ys[1:])]
        if self.direction == NONDECREASING:
            ok = all(s >= 0 for s in steps)
        elif self.direction == NONINCREASING:
            ok = all(s <= 0 for s in steps)
        else:
            raise ValueError(f"unknown direction {self.direction!r}")
        if not ok:
            raise RangeViolation(f"profile is not {self.direction}")

    @classmethod
    def from_points(cls, points: Sequence, direction: str = NONDECREASING) -> "MonotoneProfile":
        pts = sorted((as_rational(x), as_rational(y)) for x, y in points)
        return cls(PwlFunction.from_points(Space.compact(pts[0][0], pts[-1][0]), pts), direction)

    @classmethod
    def identity(cls, lo, hi) -> "MonotoneProfile":
        return cls(PwlFunction.identity(lo, hi))

    def __call__(self, t) -> Fraction:
        return self.fn(t)

    def combine(self, a, other: "MonotoneProfile", b) -> "MonotoneProfile":
        """``a*self + b*other`` for a, b >= 0 over the common domain."""
        if self.direction != other.direction:
            raise ValueError("profiles point in different directions")
        a, b = as_rational(a), as_rational(b)
        lo = max(self.fn.space.a, other.fn.space.a)
        hi = min(self.fn.space.b, other.fn.space.b)
        xs = sorted({x for x in self.fn.xs + other.fn.xs if lo <= x <= hi} | {lo, hi})
        pts = [(x, a * self(x) + b * other(x)) for x in xs]
        return MonotoneProfile(PwlFunction.from_points(Space.compact(lo, hi), pts), self.direction)


def evaluate(f: PwlFunction, x) -> Fraction:
    return f(x)


def superlevel(f: PwlFunction, t, strict: bool = True) -> IntervalSet:
    return f.superlevel(t, strict)


def sublevel(f: PwlFunction, t, strict: bool = True) -> IntervalSet:
    return f.sublevel(t, strict)


def combine(f: PwlFunction, g: PwlFunction, op: str) -> PwlFunction:
    if op == "add":
        return f + g
    if op == "min":
        return f.minimum(g)
    if op == "max":
        return f.maximum(g)
    raise ValueError(f"unknown op {op!r}")


def compose_monotone(phi: MonotoneProfile, f: PwlFunction) -> PwlFunction:
    return f.compose(phi.fn)


def cone_partition(f: PwlFunction, n: int) -> list:
    """Split ``f`` (range inside [0, 1]) into ``n`` ramps ``phi_i o f`` summing to ``f``.

    ``phi_i`` is 0 up to ``(i-1)/n``, has slope 1 up to ``i/n`` and is ``1/n`` after that.
    """
    if n < 1:
        raise ValueError("n must be positive")
    lo, hi = f.range_bounds()
    if lo < 0 or hi > 1:
        raise RangeViolation(f"range [{fmt(lo)}, {fmt(hi)}] not inside [0, 1]")
    step = Fraction(1, n)
    pieces = []
    for i in range(1, n + 1):
        pts = {ZERO: ZERO, step * (i - 1): ZERO, step * i: step, Fraction(1): step}
        phi = MonotoneProfile(PwlFunction.from_points(Space.compact(0, 1), pts.items()))
        pieces.append(compose_monotone(phi, f))
    return pieces


def range_bounds(f: PwlFunction) -> tuple:
    return f.range_bounds()


def support(f: PwlFunction) -> IntervalSet:
    return f.support()


def restricted_extrema(f: PwlFunction, K) -> tuple:
    return f.restricted_extrema(K)


def sum_functions(fs: Sequence[PwlFunction], space: Space) -> PwlFunction:
    total = PwlFunction.zero(space)
    for g in fs:
        total = total + g
    return total
