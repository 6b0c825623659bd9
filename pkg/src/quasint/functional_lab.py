"""Falsification tests that place a functional in the class hierarchy.

Each *clause* is one axiom pattern (homogeneity, monotonicity, orthogonal
additivity on a sign pattern, conic linearity, ...).  A clause is exercised on
random inputs built to satisfy its hypothesis exactly; the first violation is
kept as a self-contained witness that :func:`replay_witness` can re-check.
Classes are conjunctions of clauses.  A Pass only means no counterexample was
found within the budget.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import sampling
from .errors import InvariantViolation, NotMonotoneInput, QuasintError
from .intervals import Interval, IntervalSet, Space
from .pwl import NONDECREASING, NONINCREASING, MonotoneProfile, PwlFunction
from .quasi_integral import NONNEGATIVE_CC, FunctionalHandle
from .rationals import as_rational, fmt
from .reconstruction import norm_estimate
from .reports import CheckReport

ZERO = Fraction(0)
ONE = Fraction(1)

PASS, FAIL, NA = "pass", "fail", "not_applicable"

CLASSES = ("d", "c", "s", "r", "l", "p_conic", "n_conic", "quasi_linear", "linear")

# class -> clauses it is the conjunction of
CLASS_CLAUSES = {
    "d": ("hom_pos_nonneg", "mono_nonneg", "orth_nonneg"),
    "c": ("hom_pos_nonneg", "mono_nonneg", "orth_nonneg", "orth_posneg"),
    "s": ("hom_any_sign", "mono_nonneg", "orth_nonneg", "orth_posneg"),
    "r": ("hom_pos", "mono_nonneg", "orth_nonneg", "orth_posneg", "constant"),
    "l": ("hom_pos", "mono_nonpos", "orth_nonpos", "orth_posneg", "constant"),
    "p_conic": ("orth_nonneg", "mono_nonneg", "cone_plus"),
    "n_conic": ("orth_nonpos", "mono_nonpos", "cone_minus"),
    "quasi_linear": ("hom_any_sign", "subalgebra", "positive"),
    "linear": ("additive", "hom_any_sign", "positive"),
}

# (stronger, weaker): a Pass for the first with a Fail for the second is inconsistent
IMPLICATIONS = (
    ("linear", "quasi_linear"), ("quasi_linear", "s"), ("s", "r"), ("s", "l"), ("s", "c"),
    ("r", "c"), ("c", "d"), ("p_conic", "r"), ("n_conic", "l"),
)

COMPACT_ONLY = {"constant", "c_level"}


# -- case generation -------------------------------------------------------------

@dataclass
class Case:
    """Concrete inputs for one relation; ``relation`` says how to test them."""

    kind: str
    relation: str  # "combo" (rho(a f + b g) = a rho(f) + b rho(g)), "order" (rho(f) <= rho(g)), "positive"
    f: PwlFunction
    g: Optional[PwlFunction] = None
    a: Fraction = ONE
    b: Fraction = ONE

    def to_json(self) -> dict:
        out = {"kind": self.kind, "relation": self.relation, "f": self.f.to_json()}
        if self.g is not None:
            out["g"] = self.g.to_json()
        if self.relation == "combo":
            out["a"], out["b"] = fmt(self.a), fmt(self.b)
        return out

    @classmethod
    def from_json(cls, data) -> "Case":
        g = PwlFunction.from_json(data["g"]) if "g" in data else None
        return cls(data["kind"], data["relation"], PwlFunction.from_json(data["f"]), g,
                   as_rational(data.get("a", "1")), as_rational(data.get("b", "1")))


def _window(space: Space, window=None) -> tuple:
    return sampling.window_for(space, window)


def _split(rng: random.Random, space: Space, window=None) -> tuple:
    lo, hi = _window(space, window)
    cut = sampling.rational(rng, lo + (hi - lo) / 4, hi - (hi - lo) / 4, 8)
    return lo, cut, hi


def _nonneg(rng, space, window=None):
    return sampling.random_pwl(rng, space, window, sign="nonneg")


def _scalar(rng: random.Random, positive: bool = True) -> Fraction:
    a = sampling.rational(rng, Fraction(1, 4), 3, 4)
    return a if positive or rng.random() < 0.5 else -a


def generate_case(kind: str, seed, space: Optional[Space] = None, window=None,
                  sign: int = 1) -> Case:
    """Random inputs satisfying one hypothesis pattern exactly.

    ``seed`` is an integer or a ``random.Random``.  ``sign`` = -1 reflects the
    nonnegative patterns to nonpositive ones.  The result is checked against
    its pattern before it is returned.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    space = space or Space.line()
    case = _build(kind, rng, space, window, sign)
    problem = pattern_violation(case, sign)
    if problem:
        raise InvariantViolation(f"{kind} generator produced an invalid case: {problem}")
    return case


def pattern_violation(case: Case, sign: int = 1) -> Optional[str]:
    """Why ``case`` does not satisfy its hypothesis pattern, or None."""
    f, g, kind = case.f, case.g, case.kind
    if kind == "DominatedPair":
        if not (f.dominated_by(g) and (g.is_nonpositive() if sign < 0 else f.is_nonnegative())):
            return "expected g <= f with both on one side of 0"
    elif kind == "DisjointSupportPair":
        same = (f.is_nonnegative() and g.is_nonnegative()) if sign > 0 else (
            f.is_nonpositive() and g.is_nonpositive())
        if not (f.product_zero(g) and same):
            return "supports overlap or signs differ"
    elif kind == "PosNegOrthogonal":
        mixed = (f.is_nonnegative() and g.is_nonpositive()) or (f.is_nonpositive() and g.is_nonnegative())
        if not (f.product_zero(g) and mixed):
            return "expected fg = 0 with opposite signs"
    elif kind == "ConstantShift":
        if len(set(g.ys)) != 1:
            return "shift is not constant"
    elif kind == "LevelC":
        c = max(f.ys)
        plateau = f.preimage(IntervalSet.of(Interval.point(c)))
        if not (g.is_nonnegative() and c > 0 and g.support().is_subset(plateau)):
            return "f is not at its level c on supp g"
    elif kind == "ConePair":
        if case.a < 0 or case.b < 0:
            return "negative cone coefficient"
    return None


def _build(kind: str, rng: random.Random, space: Space, window, sign: int) -> Case:
    if kind == "DominatedPair":
        f = _nonneg(rng, space, window)
        if rng.random() < 0.5:
            g = sampling.rational(rng, 0, 1, 4) * f
        else:
            g = f.minimum(_nonneg(rng, space, window))
        if sign < 0:  # -f <= -g <= 0
            return Case(kind, "order", -f, -g)
        return Case(kind, "order", g, f)
    if kind == "DisjointSupportPair":
        lo, cut, hi = _split(rng, space, window)
        f = sampling.random_tent(rng, space, lo, cut, sign)
        g = sampling.random_tent(rng, space, cut, hi, sign)
        if rng.random() < 0.5:
            f, g = g, f
        return Case(kind, "combo", f, g)
    if kind == "PosNegOrthogonal":
        lo, cut, hi = _split(rng, space, window)
        s = 1 if rng.random() < 0.5 else -1
        f = sampling.random_tent(rng, space, lo, cut, s)
        g = sampling.random_tent(rng, space, cut, hi, -s)
        return Case(kind, "combo", f, g)
    if kind == "ConePair":
        h = sampling.random_pwl(rng, space, window)
        lo, hi = h.range_bounds()
        direction = NONDECREASING if sign > 0 else NONINCREASING
        line = not space.is_compact
        phi = MonotoneProfile(sampling.random_profile(rng, lo, hi, line, direction), direction)
        psi = MonotoneProfile(sampling.random_profile(rng, lo, hi, line, direction), direction)
        a, b = sampling.rational(rng, 0, 3, 4), sampling.rational(rng, 0, 3, 4)
        return Case(kind, "combo", h.compose(phi.fn), h.compose(psi.fn), a, b)
    if kind == "SubalgebraPair":
        h = sampling.random_pwl(rng, space, window)
        lo, hi = h.range_bounds()
        line = not space.is_compact
        return Case(kind, "combo", h.compose(sampling.random_profile(rng, lo, hi, line)),
                    h.compose(sampling.random_profile(rng, lo, hi, line)))
    if kind == "ConstantShift":
        f = sampling.random_pwl(rng, space, window)
        c = PwlFunction.constant(space, sampling.rational(rng, -2, 2, 4))
        return Case(kind, "combo", f, c)
    if kind == "LevelC":
        lo, hi = _window(space, window)
        c = sampling.rational(rng, Fraction(1, 4), 2, 4)
        p, q, r, s = sampling.distinct_points(rng, 4, lo, hi, 8)
        g = sampling.random_tent(rng, space, q, r, 1)
        # f = c on [q, r], at most c elsewhere
        top = PwlFunction.on_line({p: ZERO, q: c, r: c, s: ZERO}.items()).restrict(space)
        if space.is_compact:
            top = top.maximum(_nonneg(rng, space).minimum(PwlFunction.constant(space, c)))
        return Case(kind, "combo", top, g)
    if kind == "Homogeneity":
        f = _nonneg(rng, space, window) if sign > 0 else sampling.random_pwl(rng, space, window)
        return Case(kind, "combo", f, PwlFunction.zero(space), _scalar(rng, positive=sign != 0), ZERO)
    if kind == "AnyPair":
        return Case(kind, "combo", sampling.random_pwl(rng, space, window),
                    sampling.random_pwl(rng, space, window))
    if kind == "Nonnegative":
        return Case(kind, "positive", _nonneg(rng, space, window))
    raise ValueError(f"unknown case kind {kind!r}")


# -- clauses -----------------------------------------------------------------------

@dataclass(frozen=True)
class Clause:
    name: str
    kind: str
    sign: int = 1
    needs_negative: bool = False


CLAUSES = {c.name: c for c in (
    Clause("hom_pos_nonneg", "Homogeneity", 1),
    Clause("hom_pos", "Homogeneity", 2, needs_negative=True),
    Clause("hom_any_sign", "Homogeneity", 0, needs_negative=True),
    Clause("mono_nonneg", "DominatedPair", 1),
    Clause("mono_nonpos", "DominatedPair", -1, needs_negative=True),
    Clause("orth_nonneg", "DisjointSupportPair", 1),
    Clause("orth_nonpos", "DisjointSupportPair", -1, needs_negative=True),
    Clause("orth_posneg", "PosNegOrthogonal", 1, needs_negative=True),
    Clause("cone_plus", "ConePair", 1, needs_negative=True),
    Clause("cone_minus", "ConePair", -1, needs_negative=True),
    Clause("constant", "ConstantShift", 1, needs_negative=True),
    Clause("c_level", "LevelC", 1),
    Clause("subalgebra", "SubalgebraPair", 1, needs_negative=True),
    Clause("additive", "AnyPair", 1, needs_negative=True),
    Clause("positive", "Nonnegative", 1),
)}


def _case_for(clause: Clause, rng: random.Random, space: Space, window) -> Case:
    if clause.kind == "Homogeneity":
        f_sign = 1 if clause.sign == 1 else -1  # sign 2 / 0: any f
        case = generate_case("Homogeneity", rng, space, window, sign=f_sign)
        if clause.sign == 0:
            case.a = _scalar(rng, positive=False)
        return case
    return generate_case(clause.kind, rng, space, window, sign=clause.sign)


def evaluate_case(rho: Callable, case: Case) -> tuple:
    """``(holds, lhs, rhs)`` for one case."""
    if case.relation == "combo":
        lhs = rho(case.a * case.f + case.b * case.g)
        rhs = case.a * rho(case.f) + case.b * rho(case.g)
        return lhs == rhs, lhs, rhs
    if case.relation == "order":
        lhs, rhs = rho(case.f), rho(case.g)
        return lhs <= rhs, lhs, rhs
    if case.relation == "positive":
        lhs = rho(case.f)
        return lhs >= 0, lhs, ZERO
    raise ValueError(f"unknown relation {case.relation!r}")


@dataclass
class ClauseVerdict:
    status: str
    cases: int = 0
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"status": self.status, "cases": self.cases}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def check_clause(rho: FunctionalHandle, name: str, budget: int, seed: int, window=None) -> ClauseVerdict:
    clause = CLAUSES[name]
    space = rho.space
    if name in COMPACT_ONLY and not space.is_compact:
        return ClauseVerdict(NA)
    if clause.needs_negative and rho.domain_tag == NONNEGATIVE_CC:
        return ClauseVerdict(NA)
    rng = random.Random(f"{seed}:{name}")
    for i in range(budget):
        case = _case_for(clause, rng, space, window)
        ok, lhs, rhs = evaluate_case(rho, case)
        if not ok:
            witness = {"clause": name, **case.to_json(), "lhs": fmt(lhs), "rhs": fmt(rhs)}
            return ClauseVerdict(FAIL, i + 1, witness)
    return ClauseVerdict(PASS, budget)


def replay_witness(rho: Callable, witness: dict) -> bool:
    """True when the recorded inputs still violate their relation under ``rho``."""
    ok, _, _ = evaluate_case(rho, Case.from_json(witness))
    return not ok


# -- classification ------------------------------------------------------------------

@dataclass
class ClassificationReport:
    verdicts: dict
    clauses: dict
    hierarchy_consistent: bool
    norm: Optional[Fraction]
    violations: list = field(default_factory=list)

    def status(self, cls: str) -> str:
        return self.verdicts[cls].status

    def to_json(self) -> dict:
        return {"verdicts": {k: v.to_json() for k, v in self.verdicts.items()},
                "clauses": {k: v.to_json() for k, v in self.clauses.items()},
                "hierarchy_consistent": self.hierarchy_consistent,
                "hierarchy_violations": self.violations,
                "norm": fmt(self.norm) if self.norm is not None else "unknown"}


def _class_verdict(names, clauses: dict) -> ClauseVerdict:
    applicable = [clauses[n] for n in names if clauses[n].status != NA]
    failed = next((v for v in applicable if v.status == FAIL), None)
    if failed is not None:
        return ClauseVerdict(FAIL, failed.cases, failed.witness)
    if not applicable:
        return ClauseVerdict(NA)
    return ClauseVerdict(PASS, sum(v.cases for v in applicable))


def hierarchy_violations(verdicts: dict) -> list:
    return [f"{a} => {b}" for a, b in IMPLICATIONS
            if verdicts[a].status == PASS and verdicts[b].status == FAIL]


def classify(rho: FunctionalHandle, budget: int = 40, seed: int = 0, window=None,
             with_norm: bool = True) -> ClassificationReport:
    clauses = {name: check_clause(rho, name, budget, seed, window) for name in CLAUSES}
    verdicts = {cls: _class_verdict(CLASS_CLAUSES[cls], clauses) for cls in CLASSES}
    bad = hierarchy_violations(verdicts)
    norm = None
    if with_norm and rho.declared_monotone:
        try:
            norm = norm_estimate(rho)
        except (NotMonotoneInput, QuasintError):
            norm = None
    return ClassificationReport(verdicts, clauses, not bad, norm, bad)


def quasi_linearity_check(rho: FunctionalHandle, f: PwlFunction, budget: int = 100,
                          seed: int = 0) -> CheckReport:
    """Additivity of ``rho`` on pairs ``phi o f``, ``psi o f`` for arbitrary PWL profiles."""
    rng = random.Random(f"{seed}:quasi_linearity")
    lo, hi = f.range_bounds()
    line = not f.space.is_compact
    for i in range(budget):
        case = Case("SubalgebraPair", "combo", f.compose(sampling.random_profile(rng, lo, hi, line)),
                    f.compose(sampling.random_profile(rng, lo, hi, line)))
        ok, lhs, rhs = evaluate_case(rho, case)
        if not ok:
            return CheckReport("quasi_linearity", False, i + 1,
                               {"clause": "subalgebra", **case.to_json(), "lhs": fmt(lhs), "rhs": fmt(rhs)})
    return CheckReport("quasi_linearity", True, budget)
