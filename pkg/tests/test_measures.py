import random
from dataclasses import dataclass
from fractions import Fraction as F

import pytest

from quasint import sampling
from quasint.errors import InvalidInterval, NotAdmissibleSet, NotContained, ScenarioError
from quasint.intervals import Interval, IntervalSet, Space
from quasint.measures import (Dirac, Dtm, LebesgueOn, SimpleContains, catalog, dtm_from_json,
                              is_topological_measure, validate_dtm)

O, C = Interval.open, Interval.closed
S = IntervalSet.of
SC01 = SimpleContains(C(0, 1))


@dataclass(frozen=True)
class DisconnectedSimple(Dtm):
    """The invalid variant: value 1 when the two-piece set D lies inside A."""

    D: IntervalSet
    space: Space = Space.line()

    def evaluate(self, A):
        return F(1) if self.D.is_subset(A) else F(0)

    def landmarks(self):
        return set(self.D.endpoints())

    @property
    def is_linear(self):
        return False

    def to_json(self):
        return {"kind": "disconnected", "D": self.D.to_json()}


def test_eval_examples():
    assert SC01(S(O(-1, 2))) == 1 and SC01(S(O(0, 2))) == 0
    assert LebesgueOn(C(0, 1))(S(O(F(1, 4), F(3, 4)))) == F(1, 2)
    assert (2 * SC01 + Dirac(0))(S(C(0, 1))) == 3


def test_total_mass():
    assert SC01.total_mass() == 1
    assert LebesgueOn(C(0, 1)).total_mass() == 1
    assert (2 * SC01 + 3 * Dirac(0)).total_mass() == 5


def test_eval_guards():
    with pytest.raises(NotAdmissibleSet):
        SC01(S(Interval(0, 1, False, True)))
    on_unit = SimpleContains(C(0, F(1, 2)), Space.compact(0, 1))
    assert on_unit(S(Interval(0, 1, False, True))) == 1  # [0,1) is open in [0,1]
    with pytest.raises(NotContained):
        on_unit(S(C(0, 2)))
    with pytest.raises(InvalidInterval):
        SimpleContains(O(0, 1))
    with pytest.raises(InvalidInterval):
        LebesgueOn(C(1, 1))


def test_json_expressions():
    mu = dtm_from_json({"kind": "combo", "terms": [["2", {"kind": "simple", "D": ["0", "1"]}],
                                                   ["3", {"kind": "dirac", "x": "0"}]]})
    assert mu == 2 * SC01 + 3 * Dirac(0)
    assert dtm_from_json(mu.to_json()) == mu
    assert dtm_from_json({"kind": "lebesgue", "I": ["0", "1"]}) == LebesgueOn(C(0, 1))
    with pytest.raises(ScenarioError):
        dtm_from_json({"kind": "nope"})


def test_validate_catalog():
    for space in (Space.line(), Space.compact(0, 1)):
        for name, mu in catalog(space):
            rep = validate_dtm(mu, 60, seed=1)
            assert rep.passed, (name, rep.witness)


def test_broken_variant_is_caught():
    bad = DisconnectedSimple(S(C(0, 1), C(2, 3)))
    rep = validate_dtm(bad, 50, seed=0)
    assert not rep.passed
    w = rep.witness
    assert w["C"] == [["0", "1", False, False]] and w["K"] == [["2", "3", False, False]]
    # direct evaluation of the witness: the union holds D, neither piece does
    assert bad(S(C(0, 1), C(2, 3))) == 1 and bad(S(C(0, 1))) == 0 and bad(S(C(2, 3))) == 0


def test_topological_measure_test():
    rep = is_topological_measure(SC01, 50, seed=0)
    assert not rep.passed
    assert rep.witness["U"] == [["-1", "2", True, True]]
    assert rep.witness["K"] == [["0", "1/2", False, False]]
    assert SC01(S(O(-1, 2))) == 1
    assert SC01(S(C(0, F(1, 2)))) == 0 and SC01(S(O(-1, 2)).intersect(
        S(C(0, F(1, 2))).complement(Interval.line()))) == 0
    assert is_topological_measure(LebesgueOn(C(0, 1)), 50).passed
    assert is_topological_measure(Dirac(F(1, 2)), 50).passed


def test_monotone_and_empty():
    rng = random.Random(9)
    for _ in range(1000):
        _, mu = rng.choice(catalog())
        A = sampling.random_interval_set(rng, Space.line(), kind=rng.choice(("open", "compact")))
        B = A | sampling.random_interval_set(rng, Space.line(), kind="open") if A.is_open(Space.line()) \
            else A | sampling.random_interval_set(rng, Space.line(), kind="compact")
        assert mu(A) <= mu(B)
        assert mu(IntervalSet.empty()) == 0


def test_conic_in_measure_argument():
    rng = random.Random(10)
    names = dict(catalog())
    for _ in range(300):
        mu, nu = rng.choice(list(names.values())), rng.choice(list(names.values()))
        a, b = sampling.rational(rng, 0, 3, 4), sampling.rational(rng, 0, 3, 4)
        A = sampling.random_interval_set(rng, Space.line(), kind=rng.choice(("open", "compact")))
        mix = a * mu + b * nu if a and b else None
        if mix is not None:
            assert mix(A) == a * mu(A) + b * nu(A)


def test_simple_on_compacts_is_containment():
    rng = random.Random(12)
    for _ in range(300):
        a, b = sampling.distinct_points(rng, 2, -2, 3)
        mu = SimpleContains(C(a, b))
        K = sampling.random_interval_set(rng, Space.line(), kind="compact")
        assert (mu(K) == 1) == S(C(a, b)).is_subset(K)
