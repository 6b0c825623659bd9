"""Exact finite unions of intervals with rational endpoints.

An :class:`IntervalSet` is always canonical: parts are disjoint, sorted, and no
two parts could be merged into one interval.  Openness is tracked per endpoint.
Whether a set is open, closed or compact depends on the ambient :class:`Space`
(the whole line or a compact interval ``[a, b]``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import InvalidInterval, NotContained
from .rationals import Extended, as_extended, as_rational, fmt, is_finite

INF = math.inf


def _lower_key(value: Extended, is_open: bool):
    return (value, 1 if is_open else 0)


def _upper_key(value: Extended, is_open: bool):
    return (value, 0 if is_open else 1)


@dataclass(frozen=True)
class Interval:
    lo: Extended
    hi: Extended
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        lo, hi = self.lo, self.hi
        if type(lo) is not Fraction or type(hi) is not Fraction:
            lo, hi = as_extended(lo), as_extended(hi)
            object.__setattr__(self, "lo", lo)
            object.__setattr__(self, "hi", hi)
        if lo == INF or hi == -INF:
            raise InvalidInterval(f"bad infinite endpoint in {self}")
        if not is_finite(lo) and not self.lo_open or not is_finite(hi) and not self.hi_open:
            raise InvalidInterval("infinite endpoints must be open")
        if lo > hi or (lo == hi and (self.lo_open or self.hi_open)):
            raise InvalidInterval(f"empty or reversed interval {self!r}")

    @classmethod
    def _raw(cls, lo, hi, lo_open, hi_open) -> "Interval":
        # caller guarantees a valid, normalized description
        out = object.__new__(cls)
        object.__setattr__(out, "lo", lo)
        object.__setattr__(out, "hi", hi)
        object.__setattr__(out, "lo_open", lo_open)
        object.__setattr__(out, "hi_open", hi_open)
        return out

    @classmethod
    def make(cls, lo, hi, lo_open=False, hi_open=False) -> Optional["Interval"]:
        """Build an interval, returning ``None`` when the description is empty."""
        lo, hi = as_extended(lo), as_extended(hi)
        if lo > hi or (lo == hi and (lo_open or hi_open)):
            return None
        return cls(lo, hi, lo_open or not is_finite(lo), hi_open or not is_finite(hi))

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def open(cls, lo, hi) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x, False, False)

    @classmethod
    def line(cls) -> "Interval":
        return cls(-INF, INF, True, True)

    @property
    def is_bounded(self) -> bool:
        return is_finite(self.lo) and is_finite(self.hi)

    @property
    def is_compact(self) -> bool:
        return self.is_bounded and not self.lo_open and not self.hi_open

    @property
    def length(self) -> Extended:
        return self.hi - self.lo if self.is_bounded else INF

    def contains(self, x) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and self.lo_open:
            return False
        if x == self.hi and self.hi_open:
            return False
        return True

    __contains__ = contains

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo, lo_open = max((self.lo, self.lo_open), (other.lo, other.lo_open),
                          key=lambda e: _lower_key(*e))
        hi, hi_open = min((self.hi, self.hi_open), (other.hi, other.hi_open),
                          key=lambda e: _upper_key(*e))
        return Interval.make(lo, hi, lo_open, hi_open)

    def to_json(self) -> list:
        return [fmt(self.lo), fmt(self.hi), self.lo_open, self.hi_open]

    @classmethod
    def from_json(cls, data) -> "Interval":
        if len(data) == 2:
            return cls(as_extended(data[0]), as_extended(data[1]), False, False)
        if len(data) != 4:
            raise InvalidInterval(f"interval must have 2 or 4 entries: {data!r}")
        lo, hi = as_extended(data[0]), as_extended(data[1])
        return cls(lo, hi, bool(data[2]), bool(data[3]))

    def __str__(self) -> str:
        if self.lo == self.hi:
            return "{" + fmt(self.lo) + "}"
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{fmt(self.lo)}, {fmt(self.hi)}{right}"


@dataclass(frozen=True)
class Space:
    """The ambient space: the real line, or a compact interval ``[a, b]`` with a < b."""

    kind: str = "line"
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None

    def __post_init__(self):
        if self.kind == "line":
            if self.a is not None or self.b is not None:
                raise InvalidInterval("the line takes no bounds")
        elif self.kind == "compact":
            a, b = as_rational(self.a), as_rational(self.b)
            if not a < b:
                raise InvalidInterval("compact space needs a < b")
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        else:
            raise InvalidInterval(f"unknown space kind {self.kind!r}")

    @classmethod
    def line(cls) -> "Space":
        return cls("line")

    @classmethod
    def compact(cls, a, b) -> "Space":
        return cls("compact", as_rational(a), as_rational(b))

    @property
    def is_compact(self) -> bool:
        return self.kind == "compact"

    @property
    def ambient(self) -> Interval:
        if self.is_compact:
            return Interval.closed(self.a, self.b)
        return Interval.line()

    def whole(self) -> "IntervalSet":
        return IntervalSet((self.ambient,))

    def contains(self, x) -> bool:
        return self.ambient.contains(x)

    def to_json(self) -> dict:
        if self.is_compact:
            return {"kind": "compact", "bounds": [fmt(self.a), fmt(self.b)]}
        return {"kind": "line"}

    @classmethod
    def from_json(cls, data) -> "Space":
        if data is None or data == "line":
            return cls.line()
        kind = data.get("kind", "line")
        if kind == "line":
            return cls.line()
        if kind == "compact":
            a, b = data["bounds"]
            return cls.compact(as_rational(a), as_rational(b))
        raise InvalidInterval(f"unknown space kind {kind!r}")

    def __str__(self) -> str:
        return str(self.ambient) if self.is_compact else "R"


def _canonical(intervals: Iterable[Optional[Interval]]) -> tuple:
    items = sorted((iv for iv in intervals if iv is not None),
                   key=lambda iv: _lower_key(iv.lo, iv.lo_open))
    merged = []
    for iv in items:
        if merged:
            cur = merged[-1]
            touching = iv.lo < cur.hi or (iv.lo == cur.hi and not (cur.hi_open and iv.lo_open))
            if touching:
                hi, hi_open = max((cur.hi, cur.hi_open), (iv.hi, iv.hi_open),
                                  key=lambda e: _upper_key(*e))
                merged[-1] = Interval(cur.lo, hi, cur.lo_open, hi_open)
                continue
        merged.append(iv)
    return tuple(merged)


@dataclass(frozen=True)
class IntervalSet:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        if _canonical(parts) != parts:
            raise InvalidInterval("IntervalSet parts are not canonical; use IntervalSet.of")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *intervals: Optional[Interval]) -> "IntervalSet":
        if len(intervals) == 1 and not isinstance(intervals[0], (Interval, type(None))):
            intervals = tuple(intervals[0])
        return cls(_canonical(intervals))

    @classmethod
    def _trusted(cls, parts: tuple) -> "IntervalSet":
        # parts already canonical; skips the validation pass
        out = object.__new__(cls)
        object.__setattr__(out, "parts", parts)
        return out

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet._trusted(_canonical(self.parts + other.parts))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for p in self.parts:
            for q in other.parts:
                if q.lo > p.hi:
                    break
                out.append(p.intersect(q))
        return IntervalSet._trusted(_canonical(out))

    __or__ = union
    __and__ = intersect

    def contains(self, x) -> bool:
        return any(p.contains(x) for p in self.parts)

    __contains__ = contains

    def is_subset(self, other: "IntervalSet") -> bool:
        return all(any(_interval_within(p, q) for q in other.parts) for p in self.parts)

    def complement(self, ambient) -> "IntervalSet":
        """Complement relative to ``ambient`` (a :class:`Space` or :class:`Interval`)."""
        amb = ambient.ambient if isinstance(ambient, Space) else ambient
        if not self.is_subset(IntervalSet((amb,))):
            raise NotContained(f"{self} is not inside {amb}")
        gaps = []
        cur, cur_open = amb.lo, amb.lo_open
        for p in self.parts:
            gaps.append(Interval.make(cur, p.lo, cur_open, not p.lo_open))
            cur, cur_open = p.hi, not p.hi_open
        gaps.append(Interval.make(cur, amb.hi, cur_open, amb.hi_open))
        return IntervalSet(_canonical(gaps))

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersect(other.complement(Interval.line()))

    def is_open(self, space: Space) -> bool:
        amb = space.ambient
        if not self.is_subset(space.whole()):
            return False
        for p in self.parts:
            if not p.lo_open and not (p.lo == amb.lo and not amb.lo_open):
                return False
            if not p.hi_open and not (p.hi == amb.hi and not amb.hi_open):
                return False
        return True

    def is_closed(self, space: Space) -> bool:
        if not self.is_subset(space.whole()):
            return False
        return self.complement(space).is_open(space)

    def is_compact(self, space: Optional[Space] = None) -> bool:
        if space is not None and not self.is_subset(space.whole()):
            return False
        return all(p.is_compact for p in self.parts)

    def length(self) -> Extended:
        return sum((p.length for p in self.parts), Fraction(0))

    def closure(self) -> "IntervalSet":
        return IntervalSet.of(Interval.make(p.lo, p.hi, not is_finite(p.lo), not is_finite(p.hi))
                              for p in self.parts)

    def endpoints(self) -> list:
        pts = set()
        for p in self.parts:
            pts.update(e for e in (p.lo, p.hi) if is_finite(e))
        return sorted(pts)

    def hull(self) -> Optional[Interval]:
        if not self.parts:
            return None
        first, last = self.parts[0], self.parts[-1]
        return Interval(first.lo, last.hi, first.lo_open, last.hi_open)

    def neighborhood(self, eps, space: Space) -> "IntervalSet":
        """Open ``eps``-neighbourhood, clipped to ``space``."""
        grown = IntervalSet.of(Interval.make(p.lo - eps, p.hi + eps, True, True) for p in self.parts)
        return grown.intersect(space.whole())

    def shrink(self, eps, bound) -> "IntervalSet":
        """Compact inner approximation of an open set.

        Open finite ends are pulled in by ``eps``, closed ones (which only occur at the
        boundary of a compact ambient) are kept, and infinite ends are cut at +/-bound.
        """
        out = []
        for p in self.parts:
            if is_finite(p.lo):
                lo = p.lo + eps if p.lo_open else p.lo
            else:
                lo = -bound
            if is_finite(p.hi):
                hi = p.hi - eps if p.hi_open else p.hi
            else:
                hi = bound
            out.append(Interval.make(lo, hi))
        return IntervalSet.of(out)

    def to_json(self) -> list:
        return [p.to_json() for p in self.parts]

    @classmethod
    def from_json(cls, data) -> "IntervalSet":
        return cls.of([Interval.from_json(item) for item in data])

    def __str__(self) -> str:
        return " u ".join(str(p) for p in self.parts) if self.parts else "{}"


def _interval_within(p: Interval, q: Interval) -> bool:
    if _lower_key(p.lo, p.lo_open) < _lower_key(q.lo, q.lo_open):
        return False
    return _upper_key(p.hi, p.hi_open) <= _upper_key(q.hi, q.hi_open)


def as_set(value) -> IntervalSet:
    if isinstance(value, IntervalSet):
        return value
    if isinstance(value, Interval):
        return IntervalSet((value,))
    return IntervalSet.of(value)


def union(a, b) -> IntervalSet:
    return as_set(a).union(as_set(b))


def intersect(a, b) -> IntervalSet:
    return as_set(a).intersect(as_set(b))


def complement_within(a, ambient) -> IntervalSet:
    return as_set(a).complement(ambient)


def is_subset(a, b) -> bool:
    return as_set(a).is_subset(as_set(b))


def is_open(a, space: Optional[Space] = None) -> bool:
    return as_set(a).is_open(space or Space.line())


def is_compact(a, space: Optional[Space] = None) -> bool:
    return as_set(a).is_compact(space)
