# 검증 suite (operator / kernel) 테스트

import math

import pytest

from app.core.exceptions import ParameterError
from app.schemas.reports import CheckResult, CheckStatus
from app.services.checks import run_kernel_suite, run_operator_suite

OPERATOR_CHECKS = {
    "oracle_agreement",
    "factorization",
    "smoothing_mode1",
    "ha_mode1",
    "skew_adjoint",
    "ha_l2_contraction",
    "poisson_l2_contraction",
    "ha_zero_mean",
    "parity",
    "smoothing_derivative_refinement",
}


def test_check_result_margins():
    assert CheckResult.upper("x", 1.0, 2.0).passed
    assert not CheckResult.lower("x", 1.0, 2.0).passed
    failed = CheckResult.from_margin("x", float("nan"))
    assert failed.status is CheckStatus.FAIL
    assert math.isfinite(failed.margin)
    assert CheckResult.upper("x", 0.5, 1.0, location=0.25).line() == "x\tpass\t0.5\t0.25"


def test_operator_suite_passes():
    report = run_operator_suite(1.0, 64)
    assert {check.name for check in report.checks} == OPERATOR_CHECKS
    failed = [(c.name, c.margin, c.detail) for c in report.checks if not c.passed]
    assert failed == []
    assert report.passed


def test_operator_suite_validates_parameters():
    with pytest.raises(ParameterError):
        run_operator_suite(-1.0, 64)
    with pytest.raises(ParameterError):
        run_operator_suite(1.0, 63)


def test_kernel_suite_passes():
    report = run_kernel_suite(1.0, 1.5, 1.5)
    failed = [(c.name, c.margin, c.detail) for c in report.checks if not c.passed]
    assert failed == []
    assert report.key_constant is not None and report.key_constant > 0
    names = {check.name for check in report.checks}
    assert {"ka_decreasing", "qa_derivative_is_ka", "ga_endpoint_zeros", "crossing_point"} <= names
    assert sum(check.name == "kernel_bound" for check in report.checks) == 3


@pytest.mark.parametrize("q", [1.0, 2.5])
def test_kernel_suite_rejects_q(q):
    with pytest.raises(ParameterError):
        run_kernel_suite(1.0, q, 1.5)


@pytest.mark.slow
@pytest.mark.parametrize("a", [0.1, 1.0, 10.0])
def test_operator_suite_acceptance(a):
    """n = 256, a ∈ {0.1, 1, 10}: 오라클 일치 1e-7 포함 전부 통과"""
    assert run_operator_suite(a, 256).passed


@pytest.mark.slow
@pytest.mark.parametrize("a", [0.05, 1.0, 10.0])
@pytest.mark.parametrize("q", [1.1, 1.5, 1.9])
def test_kernel_suite_acceptance(a, q):
    report = run_kernel_suite(a, q, 1.5)
    assert report.passed, [c.name for c in report.checks if not c.passed]
