# 커널 K_a / Q_a / G_a 및 부등식 검증 테스트

import numpy as np
import pytest

from app.core.exceptions import DomainError, ParameterError, PreconditionError
from app.services import kernel_analysis as ka
from app.services.profiles import ONE_MINUS_COS, ProfileFunction, blowup_family
from app.services.quadrature import weighted_boundary_integral


def test_kernel_ka_value_and_pole():
    assert ka.kernel_ka(1.0, 1.0) == pytest.approx(1.0 / (2.0 * np.pi))
    with pytest.raises(DomainError):
        ka.kernel_ka(0.0, 1.0)
    with pytest.raises(ParameterError):
        ka.kernel_ka(1.0, -2.0)


def test_kernel_qa_value_and_singularity():
    """Q_a(a) = -log 2 / (2π)"""
    assert ka.kernel_qa(2.0, 2.0) == pytest.approx(-np.log(2.0) / (2.0 * np.pi))
    with pytest.raises(DomainError):
        ka.kernel_qa(np.array([1.0, 0.0]), 1.0)


def test_kernel_ga_domain():
    with pytest.raises(DomainError):
        ka.kernel_ga(1.0, 1.0, 1.0)
    with pytest.raises(ParameterError):
        ka.kernel_ga(2.0, 1.0, 1.0)
    with pytest.raises(ParameterError):
        ka.kernel_ga(1.0, 2.5, 1.0)


def test_kernel_ga_endpoints_vanish():
    for x in (0.01, 0.5, ka.HALF_PI):
        assert abs(ka.kernel_ga(x, 0.0, 1.0)) <= 1e-12
        assert abs(ka.kernel_ga(x, 2.0 * x, 1.0)) <= 1e-12
    assert ka.kernel_ga(0.5, 0.4, 1.0) < 0.0


@pytest.mark.parametrize("a", [0.05, 1.0, 10.0])
def test_kernel_property_checks_pass(a):
    assert ka.verify_ka_decreasing(a).passed
    assert ka.verify_qa_derivative(a).passed
    assert ka.verify_ga_endpoints(a).passed
    for x in (np.pi / 8, np.pi / 4, np.pi / 2):
        assert all(check.passed for check in ka.verify_ga_shape(x, a))


@pytest.mark.parametrize("a", [0.05, 1.0, 10.0])
@pytest.mark.parametrize("q", [1.1, 1.5, 1.9, 1.999])
def test_q_claims_pass(a, q):
    checks = ka.verify_ga_q_claims(a, q)
    failed = [c.name for c in checks if not c.passed]
    assert failed == []


def test_crossing_point():
    """x_* = 2πq / ((q+1)(q-1)), q = 1.5 → 2.4π"""
    assert ka.crossing_point(1.5) == pytest.approx(2.4 * np.pi)
    assert abs(ka.ga_crossing_difference(ka.crossing_point(1.5, 3.0), 1.5, 3.0)) <= 1e-10


@pytest.mark.parametrize("q", [1.0, 2.0, 2.5])
def test_crossing_point_rejects_q(q):
    with pytest.raises(ParameterError):
        ka.crossing_point(q)


def test_verify_rejects_small_sample_count():
    with pytest.raises(ParameterError):
        ka.verify_ga_shape(0.5, 1.0, m=10)


def test_profile_class_membership(family):
    for f in family:
        assert ka.profile_in_blowup_class(f)
    odd = ProfileFunction("sine", np.sin, np.cos)
    assert not ka.profile_in_blowup_class(odd)


def test_kernel_bound_holds_for_family(family):
    """H_a f(x) ≤ ∫₀^{2x} f'(y) G_a(x,y) dy, 몇 개 x 에서"""
    for f in family:
        for x in (0.2, 0.9, ka.HALF_PI):
            result = ka.check_kernel_bound(f, 1.0, x)
            assert result.holds, (f.name, x, result.lhs, result.rhs)


def test_kernel_bound_rejects_non_class():
    odd = ProfileFunction("sine", np.sin, np.cos)
    with pytest.raises(PreconditionError):
        ka.check_kernel_bound(odd, 1.0, 0.5)
    with pytest.raises(ParameterError):
        ka.check_kernel_bound(ONE_MINUS_COS, 1.0, 2.0)


def test_key_constant_positive_and_scale_invariant():
    """a = 1, σ = 3/2 에서 양수, 정규화 없이 적분한 비율이 f ↦ λf 에 불변"""
    base = ka.estimate_key_constant(1.0, 1.5, [ONE_MINUS_COS])
    assert base > 0.0
    for factor in (7.0, 0.03):
        scaled = ka.estimate_key_constant(1.0, 1.5, [ONE_MINUS_COS.scaled(factor)])
        assert scaled == pytest.approx(base, rel=1e-7)


def test_key_constant_raw_integrals_scale_quadratically():
    """두 적분 각각은 λ² 로 변함 (비율만 불변)"""
    f = ONE_MINUS_COS
    g = ONE_MINUS_COS.scaled(3.0)
    rhs_f = weighted_boundary_integral(lambda x: f(x) ** 2, 2.5)
    rhs_g = weighted_boundary_integral(lambda x: g(x) ** 2, 2.5)
    assert rhs_g == pytest.approx(9.0 * rhs_f, rel=1e-12)


def test_key_constant_family_minimum():
    family = blowup_family()
    each = [ka.estimate_key_constant(1.0, 1.5, [f]) for f in family]
    assert ka.estimate_key_constant(1.0, 1.5, family) == min(each)


def test_key_constant_validation():
    with pytest.raises(ParameterError):
        ka.estimate_key_constant(1.0, 1.5, [])
    with pytest.raises(ParameterError):
        ka.estimate_key_constant(1.0, 0.0, [ONE_MINUS_COS])
    with pytest.raises(PreconditionError):
        ka.estimate_key_constant(1.0, 1.5, [ProfileFunction("sine", np.sin, np.cos)])
