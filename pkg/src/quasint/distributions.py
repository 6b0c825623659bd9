"""Distribution functions of a function under a measure, and the measures they generate.

For a measure ``mu`` and a PWL function ``f`` the four functions

    L1(t) = mu(f < t)    L2(t) = mu(f <= t)
    R1(t) = mu(f > t)    R2(t) = mu(f >= t)

are piecewise affine in ``t`` with finitely many jumps for every catalog
measure.  They are stored as knot lists carrying left limit, value and right
limit.  The right measure ``r`` is the Lebesgue-Stieltjes measure of ``-R1``
and the left measure ``l`` that of ``L1``.
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from . import sampling
from .errors import DomainTooSmall, InvariantViolation, SpaceMismatch
from .intervals import INF, Interval, IntervalSet, Space
from .measures import Dtm
from .pwl import PwlFunction
from .rationals import as_rational, fmt
from .reports import CheckReport

ZERO = Fraction(0)
NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"


@dataclass(frozen=True)
class PiecewiseAffine:
    """Function of ``t`` given by knots ``(t, left_limit, value, right_limit)``.

    Between consecutive knots the function is affine; before the first knot it
    is constant ``left_limit`` of that knot, after the last one it is constant
    ``right_limit`` of the last knot.
    """

    knots: tuple

    def __post_init__(self):
        if not self.knots:
            raise InvariantViolation("need at least one knot")
        ts = [k[0] for k in self.knots]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvariantViolation("knots must be strictly increasing")

    @classmethod
    def constant(cls, c) -> "PiecewiseAffine":
        c = as_rational(c)
        return cls(((ZERO, c, c, c),))

    @property
    def ts(self) -> list:
        return [k[0] for k in self.knots]

    def _locate(self, t):
        ks = self.knots
        lo, hi = 0, len(ks)
        while lo < hi:
            mid = (lo + hi) // 2
            if ks[mid][0] < t:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def __call__(self, t) -> Fraction:
        ks = self.knots
        i = self._locate(t)
        if i < len(ks) and ks[i][0] == t:
            return ks[i][2]
        if i == 0:
            return ks[0][1]
        if i == len(ks):
            return ks[-1][3]
        t0, _, _, y0 = ks[i - 1]
        t1, y1, _, _ = ks[i]
        return y0 + (y1 - y0) * (t - t0) / (t1 - t0)

    def triple(self, t) -> tuple:
        """``(F(t-), F(t), F(t+))`` from a single lookup."""
        ks = self.knots
        i = self._locate(t)
        if i < len(ks) and ks[i][0] == t:
            return ks[i][1], ks[i][2], ks[i][3]
        if i == 0:
            v = ks[0][1]
        elif i == len(ks):
            v = ks[-1][3]
        else:
            t0, _, _, y0 = ks[i - 1]
            t1, y1, _, _ = ks[i]
            v = y0 + (y1 - y0) * (t - t0) / (t1 - t0)
        return v, v, v

    def left_limit(self, t) -> Fraction:
        i = self._locate(t)
        if i < len(self.knots) and self.knots[i][0] == t:
            return self.knots[i][1]
        return self(t)

    def right_limit(self, t) -> Fraction:
        i = self._locate(t)
        if i < len(self.knots) and self.knots[i][0] == t:
            return self.knots[i][3]
        return self(t)

    def slope_after(self, i: int) -> Fraction:
        """Slope on the open cell to the right of knot ``i`` (0 after the last one)."""
        if i >= len(self.knots) - 1:
            return ZERO
        t0, _, _, y0 = self.knots[i]
        t1, y1, _, _ = self.knots[i + 1]
        return (y1 - y0) / (t1 - t0)

    def integral(self, a, b) -> Fraction:
        """Exact ``int_a^b F(t) dt``."""
        a, b = as_rational(a), as_rational(b)
        if a > b:
            return -self.integral(b, a)
        pts = [a] + [t for t in self.ts if a < t < b] + [b]
        return sum(((q - p) * self((p + q) / 2) for p, q in zip(pts, pts[1:])), ZERO)

    def _merge(self, other: "PiecewiseAffine", op: Callable) -> "PiecewiseAffine":
        ts = sorted(set(self.ts) | set(other.ts))
        return PiecewiseAffine(tuple(
            (t, op(self.left_limit(t), other.left_limit(t)), op(self(t), other(t)),
             op(self.right_limit(t), other.right_limit(t))) for t in ts))

    def __add__(self, other: "PiecewiseAffine") -> "PiecewiseAffine":
        return self._merge(other, lambda x, y: x + y)

    def __sub__(self, other: "PiecewiseAffine") -> "PiecewiseAffine":
        return self._merge(other, lambda x, y: x - y)

    def __neg__(self) -> "PiecewiseAffine":
        return PiecewiseAffine(tuple((t, -l, -v, -r) for t, l, v, r in self.knots))

    def shift(self, c) -> "PiecewiseAffine":
        return PiecewiseAffine(tuple((t, l + c, v + c, r + c) for t, l, v, r in self.knots))

    def probe_points(self) -> list:
        """Knots, cell midpoints and one point beyond each end."""
        ts = self.ts
        pts = set(ts) | {(p + q) / 2 for p, q in zip(ts, ts[1:])} | {ts[0] - 1, ts[-1] + 1}
        return sorted(pts)

    def equals(self, other: "PiecewiseAffine") -> bool:
        """Exact functional equality, including one-sided limits."""
        ts = sorted(set(self.ts) | set(other.ts))
        probe = PiecewiseAffine(tuple((t, ZERO, ZERO, ZERO) for t in ts)).probe_points()
        return all(self.left_limit(t) == other.left_limit(t) and self(t) == other(t)
                   and self.right_limit(t) == other.right_limit(t) for t in probe)

    def direction(self) -> Optional[str]:
        """``NONDECREASING``/``NONINCREASING`` if monotone, else None (constants count as both)."""
        seq = [x for k in self.knots for x in k[1:]]
        ups = all(a <= b for a, b in zip(seq, seq[1:]))
        downs = all(a >= b for a, b in zip(seq, seq[1:]))
        if ups:
            return NONDECREASING
        if downs:
            return NONINCREASING
        return None

    def to_json(self) -> list:
        return [[fmt(t), fmt(l), fmt(v), fmt(r)] for t, l, v, r in self.knots]


@dataclass(frozen=True)
class MonotonePwFunction(PiecewiseAffine):
    direction_flag: str = NONDECREASING

    def __post_init__(self):
        super().__post_init__()
        seq = [x for k in self.knots for x in k[1:]]
        if self.direction_flag == NONDECREASING:
            ok = all(a <= b for a, b in zip(seq, seq[1:]))
        else:
            ok = all(a >= b for a, b in zip(seq, seq[1:]))
        if not ok:
            raise InvariantViolation(f"knots are not {self.direction_flag}")

    @classmethod
    def of(cls, fn: PiecewiseAffine, direction: str) -> "MonotonePwFunction":
        return cls(fn.knots, direction)

    def __neg__(self) -> "MonotonePwFunction":
        flipped = NONINCREASING if self.direction_flag == NONDECREASING else NONDECREASING
        return MonotonePwFunction(tuple((t, -l, -v, -r) for t, l, v, r in self.knots), flipped)


def assemble(g: Callable, critical: Sequence, direction: str) -> MonotonePwFunction:
    """Build the knot representation of ``g`` from its values near ``critical`` points.

    ``g`` must be affine on each open cell between consecutive critical points
    and constant outside them; one-sided limits at the critical points are
    extrapolated from two interior samples per cell and a third sample
    confirms that the cell really is affine.
    """
    ts = sorted(set(critical))
    values = [g(t) for t in ts]
    lefts = [None] * len(ts)
    rights = [None] * len(ts)
    lefts[0] = g(ts[0] - 1)
    rights[-1] = g(ts[-1] + 1)
    for i in range(len(ts) - 1):
        t0, t1 = ts[i], ts[i + 1]
        h = (t1 - t0) / 3
        w1, w2 = g(t0 + h), g(t0 + 2 * h)
        if g((t0 + t1) / 2) != (w1 + w2) / 2:
            raise InvariantViolation(f"not affine on ({fmt(t0)}, {fmt(t1)})")
        k = w2 - w1
        rights[i] = w1 - k
        lefts[i + 1] = w2 + k
    return MonotonePwFunction(tuple(zip(ts, lefts, values, rights)), direction)


# -- the bundle ----------------------------------------------------------------

@dataclass(frozen=True)
class DistributionBundle:
    mu: Dtm
    f: PwlFunction
    L1: MonotonePwFunction
    L2: MonotonePwFunction
    R1: MonotonePwFunction
    R2: MonotonePwFunction
    mass: Fraction
    hull: tuple
    E: tuple = field(default=())
    E1: tuple = field(default=())

    def functions(self) -> dict:
        return {"L1": self.L1, "L2": self.L2, "R1": self.R1, "R2": self.R2}

    def knots(self) -> list:
        ts = set()
        for F in self.functions().values():
            ts |= set(F.ts)
        return sorted(ts)

    def violations(self) -> list:
        """Representation invariants that fail (empty when the bundle is sound)."""
        L1, L2, R1, R2, m = self.L1, self.L2, self.R1, self.R2, self.mass
        a, b = self.hull
        bad = []
        ts = self.knots()
        grid = PiecewiseAffine(tuple((t, ZERO, ZERO, ZERO) for t in sorted(set(ts) | {a, b})))
        probe = grid.probe_points()
        if L1.direction_flag != NONDECREASING or L2.direction_flag != NONDECREASING:
            bad.append("L monotone")
        if R1.direction_flag != NONINCREASING or R2.direction_flag != NONINCREASING:
            bad.append("R monotone")
        for t in probe:
            l1, l2, r1, r2 = L1.triple(t), L2.triple(t), R1.triple(t), R2.triple(t)
            if l1[1] != l1[0]:
                bad.append(f"L1 left-continuous at {fmt(t)}")
            if r1[1] != r1[2]:
                bad.append(f"R1 right-continuous at {fmt(t)}")
            if not (l1[1] <= l2[1] and r1[1] <= r2[1]):
                bad.append(f"L1<=L2, R1<=R2 at {fmt(t)}")
            if l1[0] != l2[0] or r1[2] != r2[2]:
                bad.append(f"one-sided limits at {fmt(t)}")
            if any(x + y > m for x, y in zip(l1, r1)):
                bad.append(f"L1+R1<=mass at {fmt(t)}")
        if L1(a) != 0 or L2.left_limit(a) != 0:
            bad.append("L at a")
        if L2(b) != m or L1.right_limit(b) != m or L2.right_limit(b) != m:
            bad.append("L at b")
        if R2(a) != m or R1.left_limit(a) != m or R2.left_limit(a) != m:
            bad.append("R at a")
        if R1(b) != 0 or R2.right_limit(b) != 0:
            bad.append("R at b")
        if self.f.space.is_compact:
            if self.E or self.E1:
                bad.append("one-sided continuity of L2/R2 on a compact space")
        else:
            if any(t > 0 or t == a for t in self.E) or any(t < 0 or t == b for t in self.E1):
                bad.append("jump sets outside their half-lines")
        return bad

    def verify(self) -> "DistributionBundle":
        bad = self.violations()
        if bad:
            raise InvariantViolation("; ".join(bad))
        return self

    def csv_rows(self) -> list:
        ts = self.knots()
        pts = sorted(set(ts) | {(p + q) / 2 for p, q in zip(ts, ts[1:])})
        return [[fmt(t), fmt(self.L1(t)), fmt(self.L2(t)), fmt(self.R1(t)), fmt(self.R2(t))]
                for t in pts]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["t", "L1", "L2", "R1", "R2"])
        writer.writerows(self.csv_rows())
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"mass": fmt(self.mass), "hull": [fmt(x) for x in self.hull],
                "E": [fmt(t) for t in self.E], "E1": [fmt(t) for t in self.E1],
                **{k: F.to_json() for k, F in self.functions().items()}}


def critical_levels(mu: Dtm, f: PwlFunction) -> list:
    """Levels where any distribution function can jump or change slope."""
    levels = set(f.ys)
    for x in mu.landmarks():
        if f.space.contains(x):
            levels.add(f(x))
    if not f.space.is_compact:
        levels.add(ZERO)
    return sorted(levels)


@lru_cache(maxsize=4096)
def distribution_bundle(mu: Dtm, f: PwlFunction) -> DistributionBundle:
    if mu.space != f.space:
        raise SpaceMismatch(f"measure on {mu.space}, function on {f.space}")
    T = critical_levels(mu, f)
    seen = {}

    def at(t) -> tuple:
        # mu of {f<t}, {f<=t}, {f>t}, {f>=t}; level sets of a continuous function
        # are open or closed, so the admissibility test is skipped
        if t not in seen:
            seen[t] = tuple(mu.evaluate(A) for A in f.level_sets(t))
        return seen[t]

    L1 = assemble(lambda t: at(t)[0], T, NONDECREASING)
    L2 = assemble(lambda t: at(t)[1], T, NONDECREASING)
    R1 = assemble(lambda t: at(t)[2], T, NONINCREASING)
    R2 = assemble(lambda t: at(t)[3], T, NONINCREASING)
    E = tuple(t for t in R2.ts if R2(t) != R2.left_limit(t))
    E1 = tuple(t for t in L2.ts if L2(t) != L2.right_limit(t))
    bundle = DistributionBundle(mu, f, L1, L2, R1, R2, mu.total_mass(), f.range_bounds(), E, E1)
    return bundle.verify()


# -- Lebesgue-Stieltjes measures ------------------------------------------------

def _canonical_atoms(atoms) -> tuple:
    acc = {}
    for loc, mass in atoms:
        acc[loc] = acc.get(loc, ZERO) + mass
    return tuple(sorted((loc, m) for loc, m in acc.items() if m != 0))


def _canonical_density(pieces) -> tuple:
    out = []
    for lo, hi, v in sorted(p for p in pieces if p[2] != 0 and p[0] < p[1]):
        if out and out[-1][1] == lo and out[-1][2] == v:
            out[-1] = (out[-1][0], hi, v)
        else:
            out.append((lo, hi, v))
    return tuple(out)


@dataclass(frozen=True)
class StieltjesMeasure:
    """Finite signed measure: point atoms plus a piecewise-constant density."""

    atoms: tuple = ()
    density: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", _canonical_atoms(self.atoms))
        object.__setattr__(self, "density", _canonical_density(self.density))

    @classmethod
    def of_function(cls, F: PiecewiseAffine):
        atoms = [(t, r - l) for t, l, _, r in F.knots]
        dens = [(F.knots[i][0], F.knots[i + 1][0], F.slope_after(i)) for i in range(len(F.knots) - 1)]
        return cls(tuple(atoms), tuple(dens))

    def total(self) -> Fraction:
        return sum((m for _, m in self.atoms), ZERO) + sum(((hi - lo) * v for lo, hi, v in self.density), ZERO)

    def hull(self) -> Optional[tuple]:
        pts = [loc for loc, _ in self.atoms] + [x for lo, hi, _ in self.density for x in (lo, hi)]
        return (min(pts), max(pts)) if pts else None

    def support(self) -> IntervalSet:
        parts = [Interval.point(loc) for loc, _ in self.atoms]
        parts += [Interval.closed(lo, hi) for lo, hi, _ in self.density]
        return IntervalSet.of(parts)

    def measure_of(self, A: IntervalSet) -> Fraction:
        total = sum((m for loc, m in self.atoms if A.contains(loc)), ZERO)
        for lo, hi, v in self.density:
            total += v * A.intersect(IntervalSet.of(Interval.closed(lo, hi))).length()
        return total

    def integrate(self, h: Callable, breaks: Sequence = (), atom_value: Optional[Callable] = None,
                  within: Optional[tuple] = None) -> Fraction:
        """``int h dm`` where ``h`` is affine between the given ``breaks``.

        ``atom_value`` (default ``h``) gives the integrand at atoms, which lets
        callers use one-sided limits there.  ``within=(a, b)`` restricts to [a, b].
        """
        atom_value = atom_value or h
        a, b = within if within is not None else (-INF, INF)
        total = sum((m * atom_value(loc) for loc, m in self.atoms if a <= loc <= b), ZERO)
        for lo, hi, v in self.density:
            lo, hi = max(lo, a), min(hi, b)
            if lo >= hi:
                continue
            pts = [lo] + sorted(x for x in set(breaks) if lo < x < hi) + [hi]
            total += v * sum(((q - p) * h((p + q) / 2) for p, q in zip(pts, pts[1:])), ZERO)
        return total

    def to_json(self) -> dict:
        return {"atoms": [[fmt(loc), fmt(m)] for loc, m in self.atoms],
                "density": [[fmt(lo), fmt(hi), fmt(v)] for lo, hi, v in self.density]}

    def __str__(self) -> str:
        parts = [f"{fmt(m)}*delta({fmt(loc)})" for loc, m in self.atoms]
        parts += [f"{fmt(v)}*dx on [{fmt(lo)}, {fmt(hi)}]" for lo, hi, v in self.density]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class BoundaryMeasure(StieltjesMeasure):
    """Nonnegative Lebesgue-Stieltjes measure of a non-decreasing function."""

    def __post_init__(self):
        super().__post_init__()
        if any(m < 0 for _, m in self.atoms) or any(v < 0 for _, _, v in self.density):
            raise InvariantViolation("boundary measures are nonnegative")

    @classmethod
    def from_nondecreasing(cls, F: PiecewiseAffine) -> "BoundaryMeasure":
        base = StieltjesMeasure.of_function(F)
        return cls(base.atoms, base.density)

    @classmethod
    def from_json(cls, data) -> "BoundaryMeasure":
        atoms = tuple((as_rational(x), as_rational(m)) for x, m in data.get("atoms", []))
        dens = tuple((as_rational(a), as_rational(b), as_rational(v)) for a, b, v in data.get("density", []))
        return cls(atoms, dens)

    @classmethod
    def dirac(cls, x, mass=1) -> "BoundaryMeasure":
        return cls(((as_rational(x), as_rational(mass)),), ())

    @classmethod
    def uniform(cls, lo, hi, value=1) -> "BoundaryMeasure":
        return cls((), ((as_rational(lo), as_rational(hi), as_rational(value)),))


def right_measure(bundle: DistributionBundle) -> BoundaryMeasure:
    """Lebesgue-Stieltjes measure of ``-R1``."""
    return BoundaryMeasure.from_nondecreasing(-bundle.R1)


def left_measure(bundle: DistributionBundle) -> BoundaryMeasure:
    """Lebesgue-Stieltjes measure of ``L1``."""
    return BoundaryMeasure.from_nondecreasing(bundle.L1)


def measure_of(m: StieltjesMeasure, A) -> Fraction:
    A = A if isinstance(A, IntervalSet) else IntervalSet.of(A)
    return m.measure_of(A)


def stieltjes_integral(phi, m: StieltjesMeasure) -> Fraction:
    """``int phi dm`` for a PWL profile ``phi`` (a :class:`PwlFunction` or anything with ``.fn``)."""
    fn = getattr(phi, "fn", phi)
    hull = m.hull()
    if hull is None:
        return ZERO
    if fn.space.is_compact and (hull[0] < fn.space.a or hull[1] > fn.space.b):
        raise DomainTooSmall(f"profile on {fn.space} does not cover [{fmt(hull[0])}, {fmt(hull[1])}]")
    return m.integrate(fn, fn.xs)


def integral_of_identity(m: StieltjesMeasure) -> Fraction:
    """``int id dm``, through the same engine as :func:`stieltjes_integral`."""
    hull = m.hull()
    if hull is None:
        return ZERO
    lo, hi = hull
    return stieltjes_integral(PwlFunction.identity(lo, hi if hi > lo else lo + 1), m)


# -- criteria and checks -------------------------------------------------------

def rl_equal_criterion(bundle: DistributionBundle) -> tuple:
    """``(True, None)`` iff ``L1 + R1 = mass`` off a finite set; else ``(False, witness)``."""
    S = (bundle.L1 + bundle.R1).shift(-bundle.mass)
    ts = S.ts
    cells = [(-INF, ts[0])] + list(zip(ts, ts[1:])) + [(ts[-1], INF)]
    for lo, hi in cells:
        if lo == -INF:
            probe = [hi - 1]
        elif hi == INF:
            probe = [lo + 1]
        else:
            probe = [lo + (hi - lo) / 3, lo + 2 * (hi - lo) / 3]
        vals = [S(t) for t in probe]
        if any(v != 0 for v in vals):
            t = probe[0]
            return False, {"interval": Interval.open(lo, hi).to_json(), "t": fmt(t),
                           "L1_plus_R1": fmt(bundle.L1(t) + bundle.R1(t)), "mass": fmt(bundle.mass)}
    return True, None


def _random_target(rng: random.Random, hull: tuple) -> IntervalSet:
    a, b = hull
    window = (a - 1, b + 1)
    kind = rng.choice(("open", "compact"))
    return sampling.random_interval_set(rng, Space.line(), window, kind=kind, den=8)


def pushforward_check(mu: Dtm, f: PwlFunction, bundle: Optional[DistributionBundle] = None,
                      budget: int = 50, seed: int = 0, targets: Sequence = ()) -> CheckReport:
    """``mu(f^-1(A)) <= r(A), l(A)``; equality for structurally linear ``mu``."""
    bundle = bundle or distribution_bundle(mu, f)
    r, l = right_measure(bundle), left_measure(bundle)
    rng = random.Random(seed)
    pts = critical_levels(mu, f)
    fixed = [IntervalSet.of(Interval.open(p, q)) for p, q in zip(pts, pts[1:])]
    fixed += [IntervalSet.of(Interval.point(p)) for p in pts]
    sets = list(targets) + fixed + [_random_target(rng, bundle.hull) for _ in range(budget)]
    cases = 0
    for A in sets:
        pre = f.preimage(A)
        value = mu.eval(pre)
        rA, lA = r.measure_of(A), l.measure_of(A)
        cases += 1
        witness = {"A": A.to_json(), "mu_preimage": fmt(value), "r": fmt(rA), "l": fmt(lA)}
        if value > rA or value > lA:
            return CheckReport("pushforward", False, cases, {"inequality": True, **witness})
        if mu.is_linear:
            is_open = A.is_open(Space.line())
            avoids_zero = f.space.is_compact or not A.contains(ZERO)
            if (is_open or avoids_zero) and not (value == rA == lA):
                return CheckReport("pushforward", False, cases, {"equality": True, **witness})
    return CheckReport("pushforward", True, cases)


def integration_by_parts_check(F: PiecewiseAffine, G: PiecewiseAffine, a, b) -> CheckReport:
    """``int_[a,b] G(x+) dF + int_[a,b] F(x-) dG = F(b+)G(b+) - F(a-)G(a-)``, exactly."""
    a, b = as_rational(a), as_rational(b)
    mF, mG = StieltjesMeasure.of_function(F), StieltjesMeasure.of_function(G)
    breaks = sorted(set(F.ts) | set(G.ts) | {a, b})
    first = mF.integrate(G, breaks, atom_value=G.right_limit, within=(a, b))
    second = mG.integrate(F, breaks, atom_value=F.left_limit, within=(a, b))
    rhs = F.right_limit(b) * G.right_limit(b) - F.left_limit(a) * G.left_limit(a)
    lhs = first + second
    witness = None if lhs == rhs else {"lhs": fmt(lhs), "rhs": fmt(rhs), "a": fmt(a), "b": fmt(b),
                                       "F": F.to_json(), "G": G.to_json()}
    return CheckReport("integration_by_parts", lhs == rhs, 1, witness)


def random_monotone(rng: random.Random, direction: str = NONDECREASING, knots: int = 4,
                    lo=-2, hi=2) -> MonotonePwFunction:
    """Random monotone step-plus-affine function with rational data."""
    ts = sampling.distinct_points(rng, knots, lo, hi, 4)
    level = sampling.rational(rng, -2, 2, 4)
    out = []
    for t in ts:
        left = level
        up = sampling.rational(rng, 0, 1, 4) if rng.random() < 0.6 else ZERO
        split = sampling.rational(rng, 0, 1, 4)
        value = left + up * split
        right = left + up
        out.append((t, left, value, right))
        level = right + (sampling.rational(rng, 0, 1, 4) if rng.random() < 0.6 else ZERO)
    F = MonotonePwFunction(tuple(out), NONDECREASING)
    return F if direction == NONDECREASING else -F
