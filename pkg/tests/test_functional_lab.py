import json
import random
from fractions import Fraction as F

import pytest

from oracles import grid
from quasint.functional_lab import (CLASSES, IMPLICATIONS, Case, check_clause, classify,
                                    evaluate_case, generate_case, hierarchy_violations,
                                    quasi_linearity_check, replay_witness)
from quasint.intervals import Interval, Space
from quasint.measures import Dirac, LebesgueOn, SimpleContains
from quasint.pwl import PwlFunction
from quasint.quasi_integral import (NONNEGATIVE_CC, induced_L, induced_R, linear_functional,
                                    min_over, user_functional)

C = Interval.closed
SC01 = SimpleContains(C(0, 1))
PTS = grid(-4, 5, 16)
HAT = PwlFunction.on_line([(-1, 0), (0, 1), (1, 0)])


@pytest.mark.parametrize("space", [Space.line(), Space.compact(-1, 2)], ids=["line", "compact"])
def test_generated_cases_satisfy_their_patterns(space):
    rng = random.Random(51)
    pts = [x for x in PTS if space.contains(x)]
    for _ in range(40):
        dom = generate_case("DominatedPair", rng, space)
        assert all(0 <= dom.f(x) <= dom.g(x) for x in pts)
        neg = generate_case("DominatedPair", rng, space, sign=-1)
        assert all(neg.f(x) <= neg.g(x) <= 0 for x in pts)
        dis = generate_case("DisjointSupportPair", rng, space)
        assert all(dis.f(x) * dis.g(x) == 0 and dis.f(x) >= 0 and dis.g(x) >= 0 for x in pts)
        pn = generate_case("PosNegOrthogonal", rng, space)
        assert all(pn.f(x) * pn.g(x) == 0 for x in pts)
        up = all(pn.f(x) >= 0 and pn.g(x) <= 0 for x in pts)
        down = all(pn.f(x) <= 0 and pn.g(x) >= 0 for x in pts)
        assert up or down
        cone = generate_case("ConePair", rng, space)
        assert cone.a >= 0 and cone.b >= 0
        if space.is_compact:
            shift = generate_case("ConstantShift", rng, space)
            assert len({shift.g(x) for x in pts}) == 1
            lv = generate_case("LevelC", rng, space)
            c = max(lv.f.ys)
            assert all(lv.f(x) == c for x in pts if lv.g(x) > 0)


def test_same_seed_same_case():
    a = generate_case("AnyPair", 7)
    b = generate_case("AnyPair", 7)
    assert a.to_json() == b.to_json()
    assert Case.from_json(json.loads(json.dumps(a.to_json()))).to_json() == a.to_json()
    with pytest.raises(ValueError):
        generate_case("NoSuchPattern", 0)


def test_evaluate_case_relations():
    R = induced_R(SC01)
    f = PwlFunction.on_line([(-1, 0), (0, 1), (1, 0)])
    g = PwlFunction.on_line([(0, 0), (1, 1), (2, 0)])
    holds, lhs, rhs = evaluate_case(R, Case("AnyPair", "combo", f, g))
    assert (holds, lhs, rhs) == (False, 1, 0)
    assert evaluate_case(R, Case("DominatedPair", "order", F(1, 2) * f, f))[0]
    assert evaluate_case(R, Case("Nonnegative", "positive", f))[0]


def test_simple_measure_classification():
    rep = classify(induced_R(SC01), budget=30, seed=0)
    for cls in ("d", "c", "r", "p_conic"):
        assert rep.status(cls) == "pass", cls
    for cls in ("s", "l", "n_conic", "quasi_linear", "linear"):
        assert rep.status(cls) == "fail", cls
    assert rep.hierarchy_consistent and rep.norm == 1
    w = rep.verdicts["linear"].witness
    assert w is not None and replay_witness(induced_R(SC01), w)

    left = classify(induced_L(SC01), budget=30, seed=0)
    assert left.status("l") == left.status("n_conic") == "pass"
    assert left.status("r") == left.status("p_conic") == "fail"
    assert left.hierarchy_consistent


def test_linear_functionals_pass_everything():
    for rho in (linear_functional(LebesgueOn(C(0, 1))), induced_R(2 * Dirac(F(1, 2)))):
        rep = classify(rho, budget=20, seed=3)
        assert all(rep.status(cls) == "pass" for cls in CLASSES)
        assert rep.to_json()["norm"] in ("1", "2")


def test_min_over_matches_induced_functional():
    a = classify(min_over(C(0, 1)), budget=20, seed=4)
    b = classify(induced_R(SC01), budget=20, seed=4)
    assert {c: a.status(c) for c in CLASSES} == {c: b.status(c) for c in CLASSES}


def test_witnesses_replay():
    for rho in (induced_R(SC01), induced_L(SC01)):
        rep = classify(rho, budget=25, seed=5)
        for name, v in rep.clauses.items():
            if v.witness is not None:
                assert replay_witness(rho, v.witness), name


def test_deterministic_reports():
    a = classify(induced_R(SC01), budget=15, seed=9).to_json()
    b = classify(induced_R(SC01), budget=15, seed=9).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_compact_only_clauses():
    R = induced_R(SC01)
    assert check_clause(R, "constant", 10, 0).status == "not_applicable"
    assert check_clause(R, "c_level", 10, 0).status == "not_applicable"
    unit = Space.compact(0, 1)
    Rc = induced_R(SimpleContains(C(0, 1), unit))
    assert check_clause(Rc, "constant", 20, 0).status == "pass"
    assert check_clause(Rc, "c_level", 20, 0).status == "pass"


def test_nonnegative_domain_skips_signed_clauses():
    R = induced_R(SC01)
    rho = user_functional(Space.line(), R, "R on f >= 0", NONNEGATIVE_CC)
    rep = classify(rho, budget=10, seed=0, with_norm=False)
    assert rep.clauses["orth_posneg"].status == "not_applicable"
    assert rep.status("d") == "pass"
    assert rep.to_json()["norm"] == "unknown"


def test_quasi_linearity_witness_for_simple_measure():
    rep = quasi_linearity_check(induced_R(SC01), HAT, budget=100, seed=0)
    assert not rep.passed
    assert replay_witness(induced_R(SC01), rep.witness)
    assert quasi_linearity_check(linear_functional(Dirac(0)), HAT, budget=30).passed


def test_hierarchy_violation_detection():
    class V:
        def __init__(self, status):
            self.status = status
    verdicts = {c: V("pass") for c in CLASSES}
    assert hierarchy_violations(verdicts) == []
    verdicts["d"] = V("fail")
    bad = hierarchy_violations(verdicts)
    assert "c => d" in bad and len(bad) == sum(1 for _, b in IMPLICATIONS if b == "d")
