"""Finite deficient topological measures that can be evaluated exactly.

A measure is a small expression tree over four node types.  ``eval`` accepts
any set that is open or closed in the measure's space; the validators below
search for counterexamples to the defining axioms.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import sampling
from .errors import InvalidInterval, NotAdmissibleSet, NotContained, ScenarioError
from .intervals import Interval, IntervalSet, Space, as_set
from .limits import is_exact, settle
from .rationals import as_rational, fmt
from .reports import CheckReport

ZERO = Fraction(0)
REGULARITY_WIDTHS = tuple(Fraction(1, 2 ** k) for k in range(2, 11))


class Dtm:
    """Base class for measure nodes.  Subclasses implement :meth:`evaluate`."""

    space: Space

    def evaluate(self, A: IntervalSet) -> Fraction:
        raise NotImplementedError

    def landmarks(self) -> set:
        """Finite set of points where the measure changes behaviour."""
        raise NotImplementedError

    @property
    def is_linear(self) -> bool:
        """True when the node is (structurally) an ordinary Borel measure."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def admissible(self, A: IntervalSet) -> bool:
        if not A.is_subset(self.space.whole()):
            return False
        return A.is_open(self.space) or A.is_closed(self.space)

    def eval(self, A) -> Fraction:
        A = as_set(A)
        if not A.is_subset(self.space.whole()):
            raise NotContained(f"{A} is not inside {self.space}")
        if not (A.is_open(self.space) or A.is_closed(self.space)):
            raise NotAdmissibleSet(f"{A} is neither open nor closed in {self.space}")
        return self.evaluate(A)

    __call__ = eval

    def total_mass(self) -> Fraction:
        return self.evaluate(self.space.whole())

    def terms(self) -> tuple:
        return ((Fraction(1), self),)

    def __add__(self, other: "Dtm") -> "Dtm":
        return combo(self.terms() + other.terms())

    def __rmul__(self, c) -> "Dtm":
        c = as_rational(c)
        return combo(tuple((c * a, m) for a, m in self.terms()))

    def _require_inside(self, A: IntervalSet):
        if not A.is_subset(self.space.whole()):
            raise NotContained(f"{A} is not inside {self.space}")


@dataclass(frozen=True)
class SimpleContains(Dtm):
    """``mu(A) = 1`` if the connected compact set ``D`` lies in ``A``, else 0."""

    D: Interval
    space: Space = Space.line()

    def __post_init__(self):
        if not self.D.is_compact:
            raise InvalidInterval(f"D must be a compact interval, got {self.D}")
        self._require_inside(IntervalSet((self.D,)))

    def evaluate(self, A: IntervalSet) -> Fraction:
        return Fraction(1) if IntervalSet((self.D,)).is_subset(A) else ZERO

    def landmarks(self) -> set:
        return {self.D.lo, self.D.hi}

    @property
    def is_linear(self) -> bool:
        return self.D.lo == self.D.hi

    def to_json(self) -> dict:
        return {"kind": "simple", "D": [fmt(self.D.lo), fmt(self.D.hi)]}

    def __str__(self) -> str:
        return f"simple{self.D}"


@dataclass(frozen=True)
class Dirac(Dtm):
    x: Fraction
    space: Space = Space.line()

    def __post_init__(self):
        object.__setattr__(self, "x", as_rational(self.x))
        self._require_inside(IntervalSet((Interval.point(self.x),)))

    def evaluate(self, A: IntervalSet) -> Fraction:
        return Fraction(1) if A.contains(self.x) else ZERO

    def landmarks(self) -> set:
        return {self.x}

    @property
    def is_linear(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": "dirac", "x": fmt(self.x)}

    def __str__(self) -> str:
        return f"dirac({fmt(self.x)})"


@dataclass(frozen=True)
class LebesgueOn(Dtm):
    """Lebesgue measure restricted to the compact interval ``I``."""

    I: Interval
    space: Space = Space.line()

    def __post_init__(self):
        if not self.I.is_compact or self.I.lo == self.I.hi:
            raise InvalidInterval(f"I must be a non-degenerate compact interval, got {self.I}")
        self._require_inside(IntervalSet((self.I,)))

    def evaluate(self, A: IntervalSet) -> Fraction:
        return A.intersect(IntervalSet((self.I,))).length()

    def landmarks(self) -> set:
        return {self.I.lo, self.I.hi}

    @property
    def is_linear(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": "lebesgue", "I": [fmt(self.I.lo), fmt(self.I.hi)]}

    def __str__(self) -> str:
        return f"lebesgue{self.I}"


@dataclass(frozen=True)
class ConicCombo(Dtm):
    """``sum c_i * mu_i`` with ``c_i >= 0``; nested combos are flattened by :func:`combo`."""

    items: tuple
    space: Space = Space.line()

    def __post_init__(self):
        for c, m in self.items:
            if c < 0:
                raise ScenarioError("conic coefficients must be nonnegative")
            if m.space != self.space:
                raise ScenarioError("all terms of a combination must share one space")

    def evaluate(self, A: IntervalSet) -> Fraction:
        return sum((c * m.evaluate(A) for c, m in self.items), ZERO)

    def landmarks(self) -> set:
        out = set()
        for _, m in self.items:
            out |= m.landmarks()
        return out

    def terms(self) -> tuple:
        return self.items

    @property
    def is_linear(self) -> bool:
        return all(m.is_linear for c, m in self.items if c)

    def to_json(self) -> dict:
        return {"kind": "combo", "terms": [[fmt(c), m.to_json()] for c, m in self.items]}

    def __str__(self) -> str:
        return " + ".join(f"{fmt(c)}*{m}" for c, m in self.items) or "0"


def combo(terms: Iterable) -> Dtm:
    """Build a flattened conic combination; a single unit term is returned bare."""
    flat = []
    for c, m in terms:
        c = as_rational(c)
        if c < 0:
            raise ScenarioError("conic coefficients must be nonnegative")
        for c2, m2 in m.terms():
            flat.append((c * c2, m2))
    if not flat:
        raise ScenarioError("empty combination")
    spaces = {m.space for _, m in flat}
    if len(spaces) != 1:
        raise ScenarioError("all terms of a combination must share one space")
    if len(flat) == 1 and flat[0][0] == 1:
        return flat[0][1]
    return ConicCombo(tuple(flat), flat[0][1].space)


def _compact_interval(data) -> Interval:
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise ScenarioError(f"expected [lo, hi], got {data!r}")
    return Interval.closed(as_rational(data[0]), as_rational(data[1]))


def dtm_from_json(data, space: Optional[Space] = None) -> Dtm:
    space = space or Space.line()
    if not isinstance(data, dict) or "kind" not in data:
        raise ScenarioError(f"measure must be an object with a 'kind': {data!r}")
    kind = data["kind"]
    if kind == "simple":
        return SimpleContains(_compact_interval(data["D"]), space)
    if kind == "dirac":
        return Dirac(as_rational(data["x"]), space)
    if kind == "lebesgue":
        return LebesgueOn(_compact_interval(data["I"]), space)
    if kind == "combo":
        terms = data.get("terms") or []
        return combo((as_rational(c), dtm_from_json(m, space)) for c, m in terms)
    raise ScenarioError(f"unknown measure kind {kind!r}")


def evaluate(mu: Dtm, A) -> Fraction:
    return mu.eval(A)


def total_mass(mu: Dtm) -> Fraction:
    return mu.total_mass()


# -- catalog and random measures ---------------------------------------------

def catalog(space: Optional[Space] = None) -> list:
    """Named measures used by the suites; all live on ``space`` (default: the line)."""
    space = space or Space.line()
    if space.is_compact:
        a, b = space.a, space.b
        m = (a + b) / 2
        q = (b - a) / 4
        return [
            ("simple_mid", SimpleContains(Interval.closed(m - q, m + q), space)),
            ("simple_left", SimpleContains(Interval.closed(a, m), space)),
            ("lebesgue", LebesgueOn(Interval.closed(a, b), space)),
            ("dirac_a", Dirac(a, space)),
            ("combo_simple_dirac", 2 * SimpleContains(Interval.closed(a, m), space) + 3 * Dirac(b, space)),
            ("combo_lebesgue_simple", LebesgueOn(Interval.closed(a, m), space)
             + SimpleContains(Interval.closed(m - q, b), space)),
        ]
    return [
        ("simple_0_1", SimpleContains(Interval.closed(0, 1))),
        ("simple_1_2", SimpleContains(Interval.closed(1, 2))),
        ("lebesgue_0_1", LebesgueOn(Interval.closed(0, 1))),
        ("dirac_half", Dirac(Fraction(1, 2))),
        ("combo_2simple_3dirac", 2 * SimpleContains(Interval.closed(0, 1)) + 3 * Dirac(0)),
        ("combo_lebesgue_simple", LebesgueOn(Interval.closed(-1, 1))
         + SimpleContains(Interval.closed(Fraction(1, 2), Fraction(3, 2)))),
        ("combo_two_diracs", Dirac(0) + Dirac(1)),
    ]


_COEFFS = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def _random_node(rng: random.Random, space: Space, window, kinds) -> Dtm:
    lo, hi = sampling.window_for(space, window)
    kind = rng.choice(kinds)
    if kind == "dirac":
        return Dirac(sampling.rational(rng, lo, hi), space)
    a, b = sampling.distinct_points(rng, 2, lo, hi)
    if kind == "simple":
        if rng.random() < 0.1:
            b = a
        return SimpleContains(Interval.closed(a, b), space)
    return LebesgueOn(Interval.closed(a, b), space)


def random_dtm(rng: random.Random, space: Optional[Space] = None, window=None,
               kinds=("simple", "dirac", "lebesgue"), max_terms: int = 3) -> Dtm:
    space = space or Space.line()
    k = rng.randint(1, max_terms)
    nodes = [_random_node(rng, space, window, kinds) for _ in range(k)]
    if k == 1 and rng.random() < 0.5:
        return nodes[0]
    return combo((rng.choice(_COEFFS), m) for m in nodes)


def random_topological(rng: random.Random, space: Optional[Space] = None, window=None) -> Dtm:
    """Random conic combination of Dirac and Lebesgue nodes (always a measure)."""
    return random_dtm(rng, space, window, kinds=("dirac", "lebesgue"))


# -- validators ---------------------------------------------------------------

def _j(A: IntervalSet) -> list:
    return A.to_json()


def _landmark_points(mu: Dtm) -> list:
    pts = sorted(mu.landmarks())
    if mu.space.is_compact:
        pts = sorted(set(pts) | {mu.space.a, mu.space.b})
    return pts


def _structured_compact_pairs(mu: Dtm) -> list:
    """Disjoint compact pairs built from landmarks: ``([p_i, p_j], [p_k, p_l])`` with j < k."""
    pts = _landmark_points(mu)
    pairs = []
    for i, j, k, l in itertools.combinations(range(len(pts)), 4):
        pairs.append((IntervalSet.of(Interval.closed(pts[i], pts[j])),
                      IntervalSet.of(Interval.closed(pts[k], pts[l]))))
    for i, j in itertools.combinations(range(len(pts)), 2):
        pairs.append((IntervalSet.of(Interval.point(pts[i])), IntervalSet.of(Interval.point(pts[j]))))
    return pairs


def _random_disjoint_compacts(rng: random.Random, space: Space, window=None) -> tuple:
    K = sampling.random_interval_set(rng, space, window, kind="compact", parts=rng.randint(2, 4))
    parts = list(K.parts)
    if len(parts) < 2:
        return IntervalSet.of(parts), IntervalSet.empty()
    rng.shuffle(parts)
    cut = rng.randint(1, len(parts) - 1)
    return IntervalSet.of(parts[:cut]), IntervalSet.of(parts[cut:])


def _limit_check(mu: Dtm, target: IntervalSet, approximants, increasing: bool):
    samples = [(w, mu.eval(A)) for w, A in approximants]
    values = [v for _, v in samples]
    steps = list(zip(values, values[1:]))
    monotone = all(a <= b for a, b in steps) if increasing else all(a >= b for a, b in steps)
    value, cert = settle(samples)
    expected = mu.eval(target)
    ok = monotone and is_exact(cert) and value == expected
    return ok, {"set": _j(target), "value": fmt(expected), "limit": fmt(value),
                "samples": [[fmt(w), fmt(v)] for w, v in samples]}


def inner_approximants(U: IntervalSet, widths=REGULARITY_WIDTHS) -> list:
    return [(w, U.shrink(w, 1 / w)) for w in widths]


def outer_approximants(K: IntervalSet, space: Space, widths=REGULARITY_WIDTHS) -> list:
    return [(w, K.neighborhood(w, space)) for w in widths]


def validate_dtm(mu: Dtm, budget: int = 200, seed: int = 0, window=None) -> CheckReport:
    """Falsification search over the axioms of a deficient topological measure.

    Each of five checks (finite additivity on compact pairs, inner regularity on
    open sets, outer regularity on compact sets, superadditivity and
    monotonicity) runs on landmark-derived sets first and then on ``budget``
    random sets.  The first violation is returned as the witness.
    """
    rng = random.Random(seed)
    space = mu.space
    cases = 0

    def fail(check, **witness):
        return CheckReport("validate_dtm", False, cases, {"check": check, **witness})

    # (a) additivity on disjoint compact sets
    pairs = _structured_compact_pairs(mu)
    pairs += [_random_disjoint_compacts(rng, space, window) for _ in range(budget)]
    for C, K in pairs:
        cases += 1
        whole, a, b = mu.eval(C | K), mu.eval(C), mu.eval(K)
        if whole != a + b:
            return fail("additivity", C=_j(C), K=_j(K), union_value=fmt(whole),
                        values=[fmt(a), fmt(b)])

    pts = _landmark_points(mu)
    structured_open = []
    for p, q in zip(pts, pts[1:]):
        structured_open.append(IntervalSet.of(Interval.open(p, q)).intersect(space.whole()))
    if pts:
        around = Interval(pts[0] - 1, pts[-1] + 1, True, True)
        structured_open.append(IntervalSet.of(around).intersect(space.whole()))
        structured_open = [U for U in structured_open if U.is_open(space)]

    # (b) inner regularity
    opens = structured_open + [sampling.random_interval_set(rng, space, window) for _ in range(budget)]
    for U in opens:
        cases += 1
        ok, info = _limit_check(mu, U, inner_approximants(U), increasing=True)
        if not ok:
            return fail("inner_regularity", **info)

    # (c) outer regularity
    compacts = [IntervalSet.of(Interval.closed(p, q)) for p, q in zip(pts, pts[1:])]
    compacts += [IntervalSet.of(Interval.point(p)) for p in pts]
    compacts += [sampling.random_interval_set(rng, space, window, kind="compact")
                 for _ in range(budget)]
    for K in compacts:
        cases += 1
        ok, info = _limit_check(mu, K, outer_approximants(K, space), increasing=False)
        if not ok:
            return fail("outer_regularity", **info)

    # (d) superadditivity over disjoint families inside an open set
    for _ in range(budget):
        cases += 1
        lo, hi = sampling.window_for(space, window)
        cuts = sampling.distinct_points(rng, 2 * rng.randint(1, 3), lo, hi)
        family = []
        for a, b in zip(cuts[::2], cuts[1::2]):
            iv = Interval.open(a, b) if rng.random() < 0.5 else Interval.closed(a, b)
            piece = IntervalSet.of(iv).intersect(space.whole())
            if mu.admissible(piece):
                family.append(piece)
        if not family:
            continue
        union = IntervalSet.empty()
        for piece in family:
            union = union | piece
        A = union.neighborhood(sampling.rational(rng, 0, Fraction(1, 2)) + Fraction(1, 16), space)
        A = A | sampling.random_interval_set(rng, space, window)
        total = sum((mu.eval(piece) for piece in family), ZERO)
        if total > mu.eval(A):
            return fail("superadditivity", A=_j(A), family=[_j(p) for p in family],
                        value=fmt(mu.eval(A)), sum=fmt(total))

    # (e) monotonicity
    for _ in range(budget):
        cases += 1
        kind = rng.choice(("open", "compact"))
        A = sampling.random_interval_set(rng, space, window, kind=kind)
        B = A | sampling.random_interval_set(rng, space, window)
        if kind == "compact":
            B = A.neighborhood(Fraction(1, 8), space) | B
            if not mu.admissible(B):
                B = A.neighborhood(Fraction(1, 8), space)
        if mu.eval(A) > mu.eval(B):
            return fail("monotonicity", A=_j(A), B=_j(B), values=[fmt(mu.eval(A)), fmt(mu.eval(B))])

    return CheckReport("validate_dtm", True, cases)


def is_topological_measure(mu: Dtm, budget: int = 200, seed: int = 0, window=None) -> CheckReport:
    """Search compact ``K`` inside open ``U`` with ``mu(U) > mu(K) + mu(U minus K)``."""
    rng = random.Random(seed)
    space = mu.space
    pts = _landmark_points(mu)
    probes = []
    if pts:
        U0 = IntervalSet.of(Interval(pts[0] - 1, pts[-1] + 1, True, True)).intersect(space.whole())
        ext = [pts[0] - Fraction(1, 2)] + pts + [pts[-1] + Fraction(1, 2)]
        cells = list(zip(pts, pts[1:])) + [(ext[0], ext[1]), (ext[-2], ext[-1])]
        for p, q in cells:
            m = (p + q) / 2
            probes += [(U0, Interval.closed(p, m)), (U0, Interval.closed(m, q))]
        for p, q in itertools.combinations(pts, 2):
            probes.append((U0, Interval.closed(p, q)))
        probes = [(U, IntervalSet.of(K).intersect(space.whole())) for U, K in probes]
    for _ in range(budget):
        U = sampling.random_interval_set(rng, space, window)
        K = sampling.random_interval_set(rng, space, window, kind="compact")
        probes.append((U, _compact_inside(K, U)))
    cases = 0
    for U, K in probes:
        if K.is_empty or not K.is_subset(U) or not U.is_open(space) or not K.is_compact(space):
            continue
        cases += 1
        rest = U.difference(K)
        lhs, k_val, r_val = mu.eval(U), mu.eval(K), mu.eval(rest)
        if lhs > k_val + r_val:
            return CheckReport("is_topological_measure", False, cases,
                               {"U": _j(U), "K": _j(K), "values": [fmt(lhs), fmt(k_val), fmt(r_val)]})
    return CheckReport("is_topological_measure", True, cases)


def _compact_inside(K: IntervalSet, U: IntervalSet) -> IntervalSet:
    """Parts of the closed set ``K & closure`` that fit inside ``U`` after trimming."""
    out = []
    for part in K.intersect(U).parts:
        trimmed = Interval.make(part.lo, part.hi, False, False)
        if part.lo_open or part.hi_open:
            w = (part.hi - part.lo) / 4
            trimmed = Interval.make(part.lo + (w if part.lo_open else 0),
                                    part.hi - (w if part.hi_open else 0))
        if trimmed is not None and IntervalSet.of(trimmed).is_subset(U):
            out.append(trimmed)
    return IntervalSet.of(out)
