"""Recover a set function from a functional and compare it with the original measure.

For an open set ``U`` the value is the limit of ``rho`` on plateau functions
that sit inside ``U``; for a compact ``K`` it is the limit of ``rho`` on
functions that equal 1 on ``K`` and fall off over a width ``eps``.  The limit
along the width schedule is taken by :func:`limits.settle`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import NotAdmissibleSet, NotMonotoneInput
from .intervals import IntervalSet, Space
from .limits import Certificate, is_exact, settle
from .measures import Dtm
from .pwl import PwlFunction
from .quasi_integral import FunctionalHandle, induced_R
from .rationals import fmt, is_finite
from .reports import CheckReport

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class RampSchedule:
    widths: tuple = tuple(Fraction(1, 2 ** k) for k in range(2, 11))

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.widths)
        if len(ws) < 3 or any(w <= 0 for w in ws) or any(b >= a for a, b in zip(ws, ws[1:])):
            raise ValueError("widths must be positive, strictly decreasing, at least three")
        object.__setattr__(self, "widths", ws)


DEFAULT_SCHEDULE = RampSchedule()


@dataclass(frozen=True)
class ReconstructionResult:
    value: Fraction
    certificate: Certificate
    samples: tuple

    @property
    def exact(self) -> bool:
        return is_exact(self.certificate)

    def to_json(self) -> dict:
        return {"value": fmt(self.value), "certificate": self.certificate.to_json(),
                "samples": [[fmt(w), fmt(v)] for w, v in self.samples]}


def _part_points(part, eps: Fraction) -> list:
    lo, hi = part.lo, part.hi
    lo_closed = is_finite(lo) and not part.lo_open
    hi_closed = is_finite(hi) and not part.hi_open
    if not is_finite(lo):
        lo_cut = min(-1 / eps, hi - 2 * eps) if is_finite(hi) else -1 / eps
        left = [(lo_cut - eps / 2, ZERO), (lo_cut, ONE)]
        start = lo_cut
    elif lo_closed:
        left, start = [(lo, ONE)], lo
    else:
        left, start = [(lo + eps / 2, ZERO), (lo + eps, ONE)], lo + eps
    if not is_finite(hi):
        hi_cut = max(1 / eps, start + eps)
        right = [(hi_cut, ONE), (hi_cut + eps / 2, ZERO)]
        end = hi_cut
    elif hi_closed:
        right, end = [(hi, ONE)], hi
    else:
        right, end = [(hi - eps, ONE), (hi - eps / 2, ZERO)], hi - eps
    if start <= end:
        pts = dict(left)
        pts.update(dict(right))
        return sorted(pts.items())
    # the part is too short for a full plateau: emit a capped tent
    length = hi - lo
    if lo_closed and hi_closed:
        return [(lo, ONE), (hi, ONE)]
    if lo_closed:
        return [(lo, min(ONE, length / eps)), (hi - length / 2, ZERO)]
    if hi_closed:
        return [(lo + length / 2, ZERO), (hi, min(ONE, length / eps))]
    return [(lo + length / 4, ZERO), ((lo + hi) / 2, min(ONE, length / (2 * eps))),
            (hi - length / 4, ZERO)]


def plateau_inside(U: IntervalSet, eps, space: Optional[Space] = None) -> PwlFunction:
    """``0 <= f <= 1`` supported inside the open set ``U``, equal to 1 away from its boundary."""
    space = space or Space.line()
    eps = Fraction(eps)
    pts = []
    for part in U.parts:
        pts += _part_points(part, eps)
    if space.is_compact:
        if not pts or pts[0][0] > space.a:
            pts.insert(0, (space.a, ZERO))
        if pts[-1][0] < space.b:
            pts.append((space.b, ZERO))
    elif not pts:
        return PwlFunction.zero(space)
    return PwlFunction.from_points(space, pts)


def cover_outside(K: IntervalSet, eps, space: Optional[Space] = None) -> PwlFunction:
    """Equal to 1 on the compact set ``K``, falling linearly to 0 over width ``eps`` outside it."""
    space = space or Space.line()
    eps = Fraction(eps)
    g = PwlFunction.zero(Space.line())
    for part in K.parts:
        bump = PwlFunction.on_line({part.lo - eps: ZERO, part.lo: ONE, part.hi: ONE,
                                    part.hi + eps: ZERO}.items())
        g = g.maximum(bump)
    return g.restrict(space)


def _run(rho: FunctionalHandle, build, schedule: RampSchedule, increasing: bool) -> ReconstructionResult:
    samples = tuple((w, rho(build(w))) for w in schedule.widths)
    for (w0, v0), (w1, v1) in zip(samples, samples[1:]):
        if (v1 < v0) if increasing else (v1 > v0):
            raise NotMonotoneInput(f"samples not monotone between widths {fmt(w0)} and {fmt(w1)}: "
                                   f"{fmt(v0)} -> {fmt(v1)}")
    value, cert = settle(samples)
    return ReconstructionResult(value, cert, samples)


def reconstruct_open(rho: FunctionalHandle, U: IntervalSet,
                     schedule: RampSchedule = DEFAULT_SCHEDULE) -> ReconstructionResult:
    if not U.is_open(rho.space):
        raise NotAdmissibleSet(f"{U} is not open in {rho.space}")
    return _run(rho, lambda w: plateau_inside(U, w, rho.space), schedule, increasing=True)


def reconstruct_compact(rho: FunctionalHandle, K: IntervalSet,
                        schedule: RampSchedule = DEFAULT_SCHEDULE) -> ReconstructionResult:
    if not K.is_compact(rho.space):
        raise NotAdmissibleSet(f"{K} is not compact in {rho.space}")
    return _run(rho, lambda w: cover_outside(K, w, rho.space), schedule, increasing=False)


def reconstruct(rho: FunctionalHandle, A: IntervalSet,
                schedule: RampSchedule = DEFAULT_SCHEDULE) -> ReconstructionResult:
    if A.is_open(rho.space):
        return reconstruct_open(rho, A, schedule)
    return reconstruct_compact(rho, A, schedule)


def round_trip_check(mu: Dtm, sets: Iterable[IntervalSet],
                     schedule: RampSchedule = DEFAULT_SCHEDULE) -> CheckReport:
    """Reconstruct ``mu`` from its functional R on every set and compare exactly."""
    rho = induced_R(mu)
    table = []
    for A in sets:
        res = reconstruct(rho, A, schedule)
        expected = mu.eval(A)
        row = {"set": A.to_json(), "expected": fmt(expected), **res.to_json()}
        table.append(row)
        if not res.exact or res.value != expected:
            return CheckReport("round_trip", False, len(table), row, {"table": table})
    return CheckReport("round_trip", True, len(table), None, {"table": table})


def norm_estimate(rho: FunctionalHandle, schedule: RampSchedule = DEFAULT_SCHEDULE) -> Fraction:
    """Supremum of ``rho`` over plateaus ``0 <= f <= 1`` exhausting the space."""
    res = reconstruct_open(rho, rho.space.whole(), schedule)
    return res.value
