"""Quasi-integrals R and L of a PWL function against a measure, and identity checks.

``R(f)`` integrates the identity against the right measure ``r`` and ``L(f)``
against the left measure ``l``.  Both are computed from the distribution
functions and then recomputed through the Stieltjes engine; a disagreement is
an internal error.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .distributions import (distribution_bundle, integral_of_identity, left_measure,
                            right_measure)
from .errors import InvariantViolation, ProductNotPwl, RangeViolation, SpaceMismatch
from .intervals import Interval, IntervalSet, Space
from .measures import ConicCombo, Dirac, Dtm, LebesgueOn, SimpleContains, combo
from .pwl import NONDECREASING, MonotoneProfile, PwlFunction, cone_partition
from .rationals import as_rational, fmt
from .reports import CheckReport

ZERO = Fraction(0)

NONNEGATIVE_CC = "nonnegative_cc"
CC = "cc"
CONTINUOUS_ON_COMPACT = "continuous_on_compact"

# provenances whose functionals are known to be monotone on nonnegative functions
MONOTONE_PROVENANCE = {"induced_R", "induced_L", "min_over_D", "max_over_D", "linear_integral"}


def quasi_integral_R(mu: Dtm, f: PwlFunction) -> Fraction:
    b = distribution_bundle(mu, f)
    lo, hi = b.hull
    value = b.R1.integral(lo, hi) + lo * b.mass
    if integral_of_identity(right_measure(b)) != value:
        raise InvariantViolation("R from R1 disagrees with the Stieltjes integral of id")
    return value


def quasi_integral_L(mu: Dtm, f: PwlFunction) -> Fraction:
    b = distribution_bundle(mu, f)
    lo, hi = b.hull
    value = -b.L1.integral(lo, hi) + hi * b.mass
    if integral_of_identity(left_measure(b)) != value:
        raise InvariantViolation("L from L1 disagrees with the Stieltjes integral of id")
    return value


def linear_integral(mu: Dtm, f: PwlFunction) -> Fraction:
    """``int f dmu`` evaluated directly from the node structure (linear nodes only)."""
    if f.space != mu.space:
        raise SpaceMismatch(f"measure on {mu.space}, function on {f.space}")
    if isinstance(mu, Dirac):
        return f(mu.x)
    if isinstance(mu, SimpleContains) and mu.D.lo == mu.D.hi:
        return f(mu.D.lo)
    if isinstance(mu, LebesgueOn):
        lo, hi = mu.I.lo, mu.I.hi
        pts = [lo] + [x for x in f.xs if lo < x < hi] + [hi]
        return sum(((q - p) * (f(p) + f(q)) / 2 for p, q in zip(pts, pts[1:])), ZERO)
    if isinstance(mu, ConicCombo):
        return sum((c * linear_integral(m, f) for c, m in mu.items), ZERO)
    raise ValueError(f"{mu} is not a linear measure")


def oracle_min_max(D, f: PwlFunction) -> tuple:
    """``(min_D f, max_D f)`` by direct inspection of breakpoints and the ends of D."""
    D = D if isinstance(D, IntervalSet) else IntervalSet.of(D)
    return f.restricted_extrema(D)


# -- functional handles ---------------------------------------------------------

@dataclass(frozen=True)
class FunctionalHandle:
    """A functional ``f -> value`` together with the domain it is defined on."""

    space: Space
    domain_tag: str
    evaluator: Callable = field(compare=False)
    provenance: tuple = ("user", "")

    def admits(self, f: PwlFunction) -> bool:
        if f.space != self.space:
            return False
        return self.domain_tag != NONNEGATIVE_CC or f.is_nonnegative()

    def __call__(self, f: PwlFunction) -> Fraction:
        if f.space != self.space:
            raise SpaceMismatch(f"functional on {self.space}, function on {f.space}")
        if self.domain_tag == NONNEGATIVE_CC and not f.is_nonnegative():
            raise RangeViolation("functional is only defined on nonnegative functions")
        return self.evaluator(f)

    @property
    def kind(self) -> str:
        return self.provenance[0]

    @property
    def declared_monotone(self) -> bool:
        return self.kind in MONOTONE_PROVENANCE

    def describe(self) -> str:
        return f"{self.provenance[0]}({self.provenance[1]})"


def _tag(space: Space) -> str:
    return CONTINUOUS_ON_COMPACT if space.is_compact else CC


def induced_R(mu: Dtm) -> FunctionalHandle:
    return FunctionalHandle(mu.space, _tag(mu.space), lambda f: quasi_integral_R(mu, f),
                            ("induced_R", str(mu)))


def induced_L(mu: Dtm) -> FunctionalHandle:
    return FunctionalHandle(mu.space, _tag(mu.space), lambda f: quasi_integral_L(mu, f),
                            ("induced_L", str(mu)))


def min_over(D: Interval, space: Optional[Space] = None) -> FunctionalHandle:
    space = space or Space.line()
    return FunctionalHandle(space, _tag(space), lambda f: oracle_min_max(D, f)[0],
                            ("min_over_D", str(D)))


def max_over(D: Interval, space: Optional[Space] = None) -> FunctionalHandle:
    space = space or Space.line()
    return FunctionalHandle(space, _tag(space), lambda f: oracle_min_max(D, f)[1],
                            ("max_over_D", str(D)))


def linear_functional(mu: Dtm) -> FunctionalHandle:
    if not mu.is_linear:
        raise ValueError(f"{mu} is not a linear measure")
    return FunctionalHandle(mu.space, _tag(mu.space), lambda f: linear_integral(mu, f),
                            ("linear_integral", str(mu)))


def user_functional(space: Space, fn: Callable, description: str,
                    domain_tag: Optional[str] = None) -> FunctionalHandle:
    return FunctionalHandle(space, domain_tag or _tag(space), fn, ("user", description))


# -- checks -----------------------------------------------------------------------

def _report(name: str, ok: bool, **witness) -> CheckReport:
    return CheckReport(name, ok, 1, None if ok else {k: _js(v) for k, v in witness.items()})


def _js(v):
    if isinstance(v, Fraction):
        return fmt(v)
    if hasattr(v, "to_json"):
        return v.to_json()
    return v


def conic_check_on_cone(mu: Dtm, f: PwlFunction, phi: MonotoneProfile, psi: MonotoneProfile,
                        a, b) -> CheckReport:
    """Conic linearity of R on ``A+(f)`` (or of L on ``A-(f)`` for non-increasing profiles)."""
    a, b = as_rational(a), as_rational(b)
    if a < 0 or b < 0:
        raise RangeViolation("cone coefficients must be nonnegative")
    if phi.direction != psi.direction:
        raise ValueError("profiles must share a direction")
    q = quasi_integral_R if phi.direction == NONDECREASING else quasi_integral_L
    g1, g2 = f.compose(phi.fn), f.compose(psi.fn)
    lhs = q(mu, a * g1 + b * g2)
    rhs = a * q(mu, g1) + b * q(mu, g2)
    return _report("conic_on_cone", lhs == rhs, f=f, phi=phi.fn, psi=psi.fn, a=a, b=b,
                   lhs=lhs, rhs=rhs)


def partition_identity_check(mu: Dtm, f: PwlFunction, n: int) -> CheckReport:
    pieces = cone_partition(f, n)
    total = sum((quasi_integral_R(mu, p) for p in pieces), ZERO)
    whole = quasi_integral_R(mu, f)
    return _report("partition_identity", total == whole, f=f, n=n, sum=total, value=whole)


def duality_check(mu: Dtm, f: PwlFunction) -> CheckReport:
    lhs, rhs = quasi_integral_L(mu, -f), -quasi_integral_R(mu, f)
    return _report("duality", lhs == rhs, f=f, L_of_neg=lhs, neg_R=rhs)


def pwl_product(f: PwlFunction, g: PwlFunction) -> PwlFunction:
    """``f * g`` when on every segment at most one factor has non-zero slope."""
    xs = f._merged(g)
    for p, q in zip(xs, xs[1:]):
        if f(p) != f(q) and g(p) != g(q):
            raise ProductNotPwl(f"both factors slope on [{fmt(p)}, {fmt(q)}]")
    return PwlFunction.from_points(f.space, [(x, f(x) * g(x)) for x in xs])


def rho_g(rho: FunctionalHandle, g: PwlFunction, f: PwlFunction) -> Fraction:
    """``rho(f * g)`` for ``g >= 0`` when the product is again PWL."""
    if not g.is_nonnegative():
        raise RangeViolation("g must be nonnegative")
    return rho(pwl_product(f, g))


def lipschitz_check(mu: Dtm, f: PwlFunction, g: PwlFunction) -> CheckReport:
    """``|R(f) - R(g)| <= ||f - g|| * mu(K)`` with K the union of the supports."""
    if not (f.is_nonnegative() and g.is_nonnegative()):
        raise RangeViolation("both functions must be nonnegative")
    K = f.support() | g.support()
    bound = (f - g).sup_norm() * (mu.eval(K) if K else ZERO)
    gap = abs(quasi_integral_R(mu, f) - quasi_integral_R(mu, g))
    return _report("lipschitz", gap <= bound, f=f, g=g, K=K, gap=gap, bound=bound)


def conic_in_measure_check(mu: Dtm, nu: Dtm, a, b, f: PwlFunction) -> CheckReport:
    a, b = as_rational(a), as_rational(b)
    mix = combo(((a, mu), (b, nu)))
    lhs = quasi_integral_R(mix, f)
    rhs = a * quasi_integral_R(mu, f) + b * quasi_integral_R(nu, f)
    return _report("conic_in_measure", lhs == rhs, f=f, a=a, b=b, lhs=lhs, rhs=rhs)


def order_check(mu: Dtm, sigma: Dtm, f: PwlFunction) -> CheckReport:
    """``R_{mu + sigma}(f) >= R_mu(f)`` for ``f >= 0``."""
    if not f.is_nonnegative():
        raise RangeViolation("order check needs f >= 0")
    big, small = quasi_integral_R(mu + sigma, f), quasi_integral_R(mu, f)
    return _report("order", big >= small, f=f, bigger=big, smaller=small)
