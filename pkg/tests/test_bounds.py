"""Closed-form bounds evaluated with mpmath."""

import pytest
from pydantic import ValidationError

from classbound.errors import CapExceeded, ExcludedDegree, HypothesisFailed
from classbound.gfmod.bounds import (
    BoundFunction,
    BoundParams,
    check_lemd4_thresholds,
    corf3_constant_check,
    eval_lemd2_bounds,
    eval_noncoprime_bounds,
    lemd4b_hypothesis_rhs,
    theoremC_numeric,
)
from classbound.gfmod.verifiers import verify_leme2_bound


def test_block_constants():
    params = BoundParams(p=2, n=2, f=1, V1=25)
    assert float(params.A1) == pytest.approx(2902.4, abs=0.1)
    assert float(params.A2) == pytest.approx(606.8, abs=0.1)
    assert params.V == 625


def test_lemd2_bounds():
    a1, a2 = eval_lemd2_bounds(BoundParams(p=2, n=3, f=1, V1=25))
    assert float(a1) == pytest.approx(2902.4 * 25, rel=1e-4)
    assert float(a2) == pytest.approx(606.8 * 25, rel=1e-4)
    with pytest.raises(HypothesisFailed):
        eval_lemd2_bounds(BoundParams(p=3, n=2, f=1))


def test_B_must_be_one_or_six():
    assert BoundParams(B=6).B == 6
    with pytest.raises(ValidationError):
        BoundParams(B=2)


def test_bound_function():
    assert float(BoundFunction(kind="xlogx", C=1.0)(8)) == pytest.approx(24.0)
    assert float(BoundFunction(C=2.0)(5)) == pytest.approx(10.0)
    assert BoundFunction(kind="xlogx").describe() == "1.0*x*log2(x)"


@pytest.mark.parametrize("log_w,a_holds,b_holds", [(47, True, True), (46, False, True), (19, False, True), (18, False, False)])
def test_lemd4_thresholds(log_w, a_holds, b_holds):
    part_a, part_b = check_lemd4_thresholds(2 ** log_w, 2)
    assert part_a.holds is a_holds
    assert part_b.holds is b_holds
    assert part_a.lemma == "lemd4a" and part_b.lemma == "lemd4b"


def test_lemd4b_hypothesis_grows_with_V():
    assert lemd4b_hypothesis_rhs(10 ** 40, 2 ** 47, 2) > 0
    assert lemd4b_hypothesis_rhs(625, 25, 2) < 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_theoremC_numeric_step(n):
    assert theoremC_numeric(n).holds


def test_theoremC_numeric_values():
    assert theoremC_numeric(3).lhs == pytest.approx(15038.2, abs=0.1)
    record = theoremC_numeric(4)
    assert record.lhs == pytest.approx(25.98, abs=0.01)
    assert record.rhs == pytest.approx(28.5, abs=0.1)
    with pytest.raises(ExcludedDegree):
        theoremC_numeric(2)


def test_corf3_constant():
    record = corf3_constant_check()
    assert record.holds
    assert record.rhs == pytest.approx(0.031969, abs=1e-5)


def test_theorem7_4_hypothesis():
    params = BoundParams(n=2, V1=25, n1=4, C1=0, C2=1)
    record = eval_noncoprime_bounds(params, "theorem7_4")
    assert record.lemma == "theorem7_4-hypothesis"
    assert record.holds
    assert record.rhs == pytest.approx(58.05, abs=0.01)


def test_noncoprime_conclusion_on_a_count():
    params = BoundParams(n=2, V1=25, n1=4, C1=0, C2=1)
    record = eval_noncoprime_bounds(params, "theorem7_4", k_GV=100)
    assert record.lemma == "theorem7_4"
    assert record.holds
    with pytest.raises(HypothesisFailed):
        eval_noncoprime_bounds(BoundParams(n=2, V1=25, n1=100, C2=1), "theorem7_4", k_GV=10)


def test_theoremd1():
    record = eval_noncoprime_bounds(BoundParams(group_order=96, W=25), "theoremd1")
    assert record.holds
    assert record.rhs == pytest.approx(116.1, abs=0.1)


def test_noncoprime_missing_data_and_exclusions():
    with pytest.raises(HypothesisFailed):
        eval_noncoprime_bounds(BoundParams(n=5), "corf3")
    with pytest.raises(HypothesisFailed):
        eval_noncoprime_bounds(BoundParams(n=3, n1=4, t0=20), "corf3")
    with pytest.raises(HypothesisFailed):
        eval_noncoprime_bounds(BoundParams(n=5, n1=4, t0=20, fstar_alternating=True), "corf3")
    with pytest.raises(ValueError):
        eval_noncoprime_bounds(BoundParams(n1=4), "theoremZ")


def test_corf3_hypothesis():
    assert eval_noncoprime_bounds(BoundParams(n=5, V1=25, n1=4, t0=20), "corf3").holds


def test_leme2_projection_bounds(L):
    assert verify_leme2_bound(5).lhs == 2400
    assert verify_leme2_bound(7).holds
    with pytest.raises(HypothesisFailed):
        verify_leme2_bound(2)
    with pytest.raises(CapExceeded):
        verify_leme2_bound(3, list(L.generators))
