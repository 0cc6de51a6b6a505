from fractions import Fraction

import pytest

from gsnc.divisors import (CoveringHypothesisError, QDivisor, boundary_divisor, covering_plan,
                           is_permissible, restrict_then_roundup_check, round_up)
from gsnc.generators import nodal_with_boundary_point, p1_two_points

ALL = {"in_boundary": True, "distinct_components": True, "smooth_traces": True}


def test_permissibility():
    m = nodal_with_boundary_point().model
    ok, w = is_permissible(m, QDivisor.of({"b1": 1}, meets_strata=("L1",)))
    assert ok and w == []
    ok, w = is_permissible(m, QDivisor.of({"b1": 1}, contains_strata=("L1.L2",)))
    assert not ok and w == ["L1.L2"]
    assert is_permissible(m, boundary_divisor(m))[0]
    with pytest.raises(KeyError):
        is_permissible(m, QDivisor.of({"zz": 1}))


def test_round_up_examples():
    assert round_up(QDivisor.of({"d1": "1/2", "d2": "-1/3"})).coefficients == {"d1": 1, "d2": 0}
    d = QDivisor.of({"d1": 2, "d2": -3})
    assert round_up(d).coefficients == d.coefficients
    assert round_up(QDivisor.of({"d1": "-5/2"})).coefficients == {"d1": -2}


def test_restrict_then_roundup():
    d = QDivisor.of({"d1": "1/2", "d2": "7/3"})
    assert restrict_then_roundup_check(d, "Y", {"d1": {"t1": 1}, "d2": {"t2": 1}})
    assert restrict_then_roundup_check(QDivisor.of({"d1": 3}), "Y", {"d1": {"t1": 1}})
    with pytest.raises(ValueError, match="multiplicity 2"):
        restrict_then_roundup_check(d, "Y", {"d1": {"t1": 2}})
    with pytest.raises(ValueError, match="share"):
        restrict_then_roundup_check(d, "Y", {"d1": {"t": 1}, "d2": {"t": 1}})


def test_covering_plan_examples():
    plan = covering_plan(QDivisor.of({"d1": "3/4", "d2": "5/6"}, hypotheses=ALL))
    assert dict(plan.multiplicities) == {"d1": 4, "d2": 6}
    assert plan.total_degree == 24 and dict(plan.pullback) == {"d1": 3, "d2": 5}
    assert plan.lcm_degree == 12
    plan = covering_plan(QDivisor.of({"d1": 2, "d2": -1}, hypotheses=ALL))
    assert set(plan.multiplicities.values()) == {1} and plan.total_degree == 1
    plan = covering_plan(QDivisor.of({"d1": "7/10"}, hypotheses=ALL))
    assert plan.multiplicities["d1"] == 10 and plan.pullback["d1"] == 7


def test_covering_plan_hypotheses():
    with pytest.raises(CoveringHypothesisError, match=r"\(1\) in_boundary.*\(3\) smooth_traces"):
        covering_plan(QDivisor.of({"d1": "1/2"}))
    p = p1_two_points()
    plan = covering_plan(p.divisors[0], p.model)
    assert plan.total_degree == 24
    with pytest.raises(CoveringHypothesisError, match=r"\(3\)"):
        covering_plan(QDivisor.of({"b0": "1/2"}), p.model)


def test_integrality():
    assert QDivisor.of({"a": Fraction(4, 2)}).is_integral()
