# app/services/checks.py

"""
검증 suite (operator-check / kernel-check 본체)
- run_operator_suite: 연산자 성질 + 적분 오라클 일치
- run_kernel_suite: 커널 성질 + 부등식 + 경험적 상수
- 실패한 성질은 예외가 아닌 CheckResult(fail) 로 기록
"""

import logging

import numpy as np

from app.core.config import QuadraturePolicy
from app.core.exceptions import AppError, ParameterError
from app.schemas.reports import CheckResult, KernelReport, OperatorReport
from app.services import kernel_analysis as ka
from app.services.grid_spectral import (
    PeriodicField,
    make_grid,
    parseval_l2,
    reflect,
    spectral_derivative,
)
from app.services.operators import (
    apply_ha_quadrature,
    apply_ha_spectral,
    apply_hilbert,
    apply_poisson,
    operator_identity_check,
)
from app.services.profiles import (
    ONE_MINUS_COS,
    SIN_HALF_CUBED,
    blowup_family,
    field_profile,
    random_band_limited,
)

logger = logging.getLogger(__name__)

ORACLE_TOL = 1e-7
MODE1_TOL = 1e-10
SKEW_TOL = 1e-10
MAX_ORACLE_MODE = 8
RANDOM_FIELDS = 10
ORACLE_POINTS = 16
KERNEL_BOUND_POINTS = 32
SHAPE_XS = (np.pi / 8, np.pi / 4, np.pi / 2)


# ============================================================
# operator suite
# ============================================================


def _mode(kind: str, k: int):
    if kind == "sin":
        return lambda x: np.sin(k * np.asarray(x, dtype=np.float64))
    return lambda x: np.cos(k * np.asarray(x, dtype=np.float64))


def _oracle_check(a: float, n: int, rng: np.random.Generator) -> CheckResult:
    """스펙트럴 H_a 와 적분 오라클의 최대 차이 (sin kx, cos kx, k ≤ 8 + 무작위 필드)."""
    grid = make_grid(n)
    stride = max(1, n // ORACLE_POINTS)
    index = np.arange(0, n, stride)
    xs = np.asarray(grid.points)[index]

    cases: list[tuple[str, PeriodicField, object]] = []
    for k in range(1, MAX_ORACLE_MODE + 1):
        for kind in ("sin", "cos"):
            func = _mode(kind, k)
            cases.append((f"{kind}{k}x", PeriodicField.from_function(grid, func), func))
    for i in range(RANDOM_FIELDS):
        f = random_band_limited(grid, rng)
        cases.append((f"random{i}", f, field_profile(f)))

    worst, worst_x, worst_case = 0.0, None, ""
    for name, f, func in cases:
        spectral = apply_ha_spectral(f, a).values[index]
        oracle = apply_ha_quadrature(func, a, xs)
        errors = np.abs(spectral - oracle)
        i = int(np.argmax(errors))
        if not np.isfinite(errors[i]) or errors[i] > worst:
            worst, worst_x, worst_case = float(errors[i]), float(xs[i]), name
    return CheckResult.upper(
        "oracle_agreement", worst, ORACLE_TOL, location=worst_x, detail=f"worst case {worst_case}"
    )


def _refinement_check(a: float, n: int) -> CheckResult:
    """‖(H - H_a)∂x f‖∞ 가 격자 세분에서 안정 (f = |sin(x/2)|³)."""
    values = []
    for size in (n, 2 * n):
        f = SIN_HALF_CUBED.sample(make_grid(size))
        df = spectral_derivative(f)
        diff = apply_hilbert(df).values - apply_ha_spectral(df, a).values
        values.append(float(np.max(np.abs(diff))))
    change = abs(values[1] - values[0])
    return CheckResult.upper(
        "smoothing_derivative_refinement",
        change,
        1e-3 * max(1.0, values[0]),
        detail=f"norm n={n}: {values[0]:.6e}, n={2 * n}: {values[1]:.6e}",
    )


def run_operator_suite(a: float, n: int, seed: int = 0) -> OperatorReport:
    """
    연산자 성질 suite (a 하나, 격자 n)

    Raise:
    - ParameterError: a ≤ 0, n 이 홀수/8 미만
    """
    grid = make_grid(n)
    rng = np.random.default_rng(seed)
    checks: list[CheckResult] = []

    checks.append(_oracle_check(a, n, rng))

    f = random_band_limited(grid, rng)
    g = random_band_limited(grid, rng)
    residuals = operator_identity_check(f, a)
    scale = max(1.0, float(np.max(np.abs(f.values))))
    checks.append(CheckResult.upper("factorization", residuals.factorization, 1e-12 * scale))

    mode1 = PeriodicField.from_function(grid, np.sin)
    mode1_norm = parseval_l2(mode1)
    mode1_res = operator_identity_check(mode1, a)
    checks.append(
        CheckResult.upper(
            "smoothing_mode1",
            abs(mode1_res.smoothing_l2 / mode1_norm - np.exp(-a)),
            MODE1_TOL,
            detail=f"ratio {mode1_res.smoothing_l2 / mode1_norm!r}",
        )
    )
    checks.append(
        CheckResult.upper(
            "ha_mode1",
            abs(mode1_res.ha_l2 / mode1_norm - (-np.expm1(-a))),
            MODE1_TOL,
            detail=f"ratio {mode1_res.ha_l2 / mode1_norm!r}",
        )
    )

    ha_f = apply_ha_spectral(f, a)
    ha_g = apply_ha_spectral(g, a)
    skew = abs(
        float(np.dot(ha_f.values, g.values) + np.dot(f.values, ha_g.values)) * grid.dx
    )
    checks.append(CheckResult.upper("skew_adjoint", skew, SKEW_TOL))

    checks.append(
        CheckResult.upper("ha_l2_contraction", parseval_l2(ha_f), parseval_l2(f) * (1 + 1e-14))
    )
    checks.append(
        CheckResult.upper(
            "poisson_l2_contraction",
            parseval_l2(apply_poisson(f, a)),
            parseval_l2(f) * (1 + 1e-14),
        )
    )
    checks.append(CheckResult.upper("ha_zero_mean", abs(float(np.mean(ha_f.values))), 1e-14 * scale))

    even = ONE_MINUS_COS.sample(grid)
    odd = PeriodicField.from_function(grid, lambda x: np.sin(x) + 0.3 * np.sin(2 * x))
    ha_even = apply_ha_spectral(even, a)
    ha_odd = apply_ha_spectral(odd, a)
    parity = max(
        float(np.max(np.abs(ha_even.values + reflect(ha_even).values))),
        float(np.max(np.abs(ha_odd.values - reflect(ha_odd).values))),
    )
    checks.append(CheckResult.upper("parity", parity, 1e-12))

    checks.append(_refinement_check(a, n))

    report = OperatorReport(a=a, n=n, checks=checks)
    logger.info("Operator suite a=%g n=%d passed=%s", a, n, report.passed)
    return report


# ============================================================
# kernel suite
# ============================================================


def _kernel_bound_check(f, a: float, xs: np.ndarray) -> CheckResult:
    worst_margin, worst_x = np.inf, None
    for x in xs:
        result = ka.check_kernel_bound(f, a, float(x))
        margin = result.rhs + ka.KERNEL_BOUND_TOL - result.lhs
        if margin < worst_margin:
            worst_margin, worst_x = margin, float(x)
    return CheckResult.from_margin(
        "kernel_bound", worst_margin, location=worst_x, detail=f"f={f.name}, a={a:g}"
    )


def run_kernel_suite(
    a: float,
    q: float,
    sigma: float,
    m: int = 1000,
    bound_points: int = KERNEL_BOUND_POINTS,
) -> KernelReport:
    """
    커널 성질 suite (a 하나)

    Raise:
    - ParameterError: a ≤ 0, q ∉ (1,2), sigma ≤ 0
    """
    a = ka.require_a(a)
    q = ka.require_q(q)
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma!r}")

    checks: list[CheckResult] = [
        ka.verify_ka_decreasing(a, m),
        ka.verify_qa_derivative(a),
        ka.verify_ga_endpoints(a),
    ]
    for x in SHAPE_XS:
        checks.extend(ka.verify_ga_shape(x, a, m))
    checks.extend(ka.verify_ga_q_claims(a, q, m))

    xs = np.linspace(ka.HALF_PI / bound_points, ka.HALF_PI, bound_points)
    for f in blowup_family():
        try:
            checks.append(_kernel_bound_check(f, a, xs))
        except AppError as e:
            checks.append(CheckResult.from_margin("kernel_bound", -1.0, detail=e.message))

    key_constant = None
    try:
        key_constant = ka.estimate_key_constant(a, sigma, blowup_family())
        checks.append(
            CheckResult.lower(
                "key_constant_positive",
                key_constant,
                np.finfo(float).tiny,
                detail=f"sigma={sigma:g}",
            )
        )
    except AppError as e:
        checks.append(CheckResult.from_margin("key_constant_positive", -1.0, detail=e.message))

    report = KernelReport(a=a, q=q, sigma=sigma, checks=checks, key_constant=key_constant)
    logger.info(
        "Kernel suite a=%g q=%g sigma=%g passed=%s (singular eps %g)",
        a,
        q,
        sigma,
        report.passed,
        QuadraturePolicy.SINGULAR_EPS,
    )
    return report
