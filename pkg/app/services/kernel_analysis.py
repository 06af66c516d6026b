# app/services/kernel_analysis.py

"""
커널 K_a, Q_a, G_a 및 blow-up 증명에 쓰이는 커널 성질의 수치 검증

    K_a(y)   = a² / (π y (y² + a²))
    Q_a(y)   = (1/π)·log(|y| / √(y² + a²))          (K_a 의 원시함수)
    G_a(x,y) = (1/2π)·[ log(1 + a²/x²)   - log(1 + a²/(x-y)²)
                      + log(1 + a²/(2π-x)²) - log(1 + a²/(x-y+2π·sgn(y-x))²) ]

- verify_* 함수는 실패를 예외가 아닌 CheckResult로 기록
"""

import logging

import numpy as np

from app.core.config import QuadraturePolicy
from app.core.exceptions import DomainError, NumericError, ParameterError, PreconditionError
from app.schemas.reports import CheckResult, KernelBoundResult
from app.services.operators import apply_ha_quadrature, kernel_ka
from app.services.profiles import ProfileFunction
from app.services.quadrature import HALF_PI, adaptive_integral, weighted_boundary_integral

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

# 검증 허용오차
GA_NONPOSITIVE_TOL = 1e-14
GA_ZERO_TOL = 1e-12
CROSSING_TOL = 1e-10
SELECTION_TOL = 1e-12
KERNEL_BOUND_TOL = 1e-8
SHAPE_EXCLUSION = 1e-8


def require_a(a: float) -> float:
    a = float(a)
    if not np.isfinite(a) or a <= 0:
        raise ParameterError(f"a must be positive, got {a!r}")
    return a


def require_q(q: float) -> float:
    q = float(q)
    if not 1.0 < q < 2.0:
        raise ParameterError(f"q must lie in (1, 2), got {q!r}")
    return q


# ============================================================
# 닫힌 형태 커널
# ============================================================


def kernel_qa(y, a: float):
    """
    Q_a(y) = -(1/2π)·log(1 + a²/y²), y ≠ 0

    Raise:
    - DomainError: y = 0 (로그 특이점)
    """
    a = require_a(a)
    y_arr = np.asarray(y, dtype=np.float64)
    if np.any(y_arr == 0.0):
        raise DomainError("Q_a has a logarithmic singularity at y = 0")
    value = -np.log1p((a / y_arr) ** 2) / TWO_PI
    return float(value) if value.ndim == 0 else value


def _ga(x, y, a: float):
    """G_a 정의역 검사 없는 벡터 버전 (x > π/2 에서도 사용)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    t = x - y
    shifted = t + TWO_PI * np.sign(y - x)
    a2 = a * a
    return (
        np.log1p(a2 / (x * x))
        - np.log1p(a2 / (t * t))
        + np.log1p(a2 / ((TWO_PI - x) ** 2))
        - np.log1p(a2 / (shifted * shifted))
    ) / TWO_PI


def kernel_ga(x: float, y: float, a: float) -> float:
    """
    G_a(x, y), 0 < x ≤ π/2, 0 ≤ y ≤ 2x, y ≠ x

    Raise:
    - ParameterError: x, y 범위 밖
    - DomainError: y = x (음의 무한대 로그 특이점)
    """
    a = require_a(a)
    x = float(x)
    y = float(y)
    if not 0.0 < x <= HALF_PI:
        raise ParameterError(f"x must lie in (0, pi/2], got {x!r}")
    if not 0.0 <= y <= 2.0 * x:
        raise ParameterError(f"y must lie in [0, 2x], got {y!r}")
    if y == x:
        raise DomainError("G_a has a logarithmic singularity at y = x")
    return float(_ga(x, y, a))


def ga_crossing_difference(x, q: float, a: float):
    """
    G_a(x, qx) - G_a(x, x/q) 의 닫힌 형태

        (1/2π)·log[ (1 + q²a²/P²)(1 + q²a²/A²) / ((1 + a²/P²)(1 + a²/B²)) ]
        P = (q-1)x,  A = 2πq + (1-q)x,  B = 2π + (1-q)x
    """
    x = np.asarray(x, dtype=np.float64)
    p = (q - 1.0) * x
    big_a = TWO_PI * q + (1.0 - q) * x
    big_b = TWO_PI + (1.0 - q) * x
    a2 = a * a
    q2a2 = q * q * a2
    value = (
        np.log1p(q2a2 / (p * p))
        + np.log1p(q2a2 / (big_a * big_a))
        - np.log1p(a2 / (p * p))
        - np.log1p(a2 / (big_b * big_b))
    ) / TWO_PI
    return float(value) if value.ndim == 0 else value


def crossing_point(q: float, a: float = 1.0) -> float:
    """
    x_* = 2πq / ((q+1)(q-1)), G_a(x,qx)와 G_a(x,x/q)가 같아지는 점

    - x_* > π/2, x_* < 2π/(q-1) 을 확인
    - 차이 공식이 x_* 에서 0 (≤ 1e-10) 임을 확인

    Raise:
    - ParameterError: q ∉ (1, 2)
    - NumericError: 위 확인 실패
    """
    q = require_q(q)
    a = require_a(a)
    x_star = TWO_PI * q / ((q + 1.0) * (q - 1.0))

    if not HALF_PI < x_star < TWO_PI / (q - 1.0):
        raise NumericError(f"crossing point {x_star!r} outside (pi/2, 2pi/(q-1))")
    residual = abs(ga_crossing_difference(x_star, q, a))
    if residual > CROSSING_TOL:
        raise NumericError(f"crossing difference {residual:.3e} at x_* exceeds {CROSSING_TOL}")
    return x_star


# ============================================================
# 성질 검증 (실패는 기록)
# ============================================================


def verify_ga_shape(x: float, a: float, m: int = 1000) -> list[CheckResult]:
    """
    고정 x 에서 y ↦ G_a(x, y) 의 모양
    - [0, x) 에서 감소, (x, 2x] 에서 증가, 전 구간 G_a ≤ 1e-14
    - y = x 의 1e-8 근방 제외, 한쪽당 m 개 샘플
    """
    a = require_a(a)
    if m < 100:
        raise ParameterError(f"sample count must be at least 100, got {m}")
    if not 0.0 < x <= HALF_PI:
        raise ParameterError(f"x must lie in (0, pi/2], got {x!r}")

    left = np.linspace(0.0, x - SHAPE_EXCLUSION, m)
    right = np.linspace(x + SHAPE_EXCLUSION, 2.0 * x, m)
    g_left = _ga(x, left, a)
    g_right = _ga(x, right, a)

    step_left = np.diff(g_left)
    step_right = np.diff(g_right)
    worst_left = int(np.argmax(step_left))
    worst_right = int(np.argmin(step_right))

    ys = np.concatenate([left, right])
    gs = np.concatenate([g_left, g_right])
    worst_sign = int(np.argmax(gs))

    tag = f"x={x:.6g}, a={a:g}"
    return [
        CheckResult.upper(
            "ga_decreasing_left",
            float(step_left[worst_left]),
            0.0,
            location=float(left[worst_left]),
            detail=tag,
        ),
        CheckResult.lower(
            "ga_increasing_right",
            float(step_right[worst_right]),
            0.0,
            location=float(right[worst_right]),
            detail=tag,
        ),
        CheckResult.upper(
            "ga_nonpositive",
            float(gs[worst_sign]),
            GA_NONPOSITIVE_TOL,
            location=float(ys[worst_sign]),
            detail=tag,
        ),
    ]


def verify_ga_endpoints(a: float, xs: np.ndarray | None = None) -> CheckResult:
    """G_a(x, 0) = G_a(x, 2x) = 0 (log 간격 x 격자)"""
    a = require_a(a)
    if xs is None:
        xs = np.geomspace(1e-3, HALF_PI, 64)
    defects = np.maximum(np.abs(_ga(xs, 0.0, a)), np.abs(_ga(xs, 2.0 * xs, a)))
    worst = int(np.argmax(defects))
    return CheckResult.upper(
        "ga_endpoint_zeros",
        float(defects[worst]),
        GA_ZERO_TOL,
        location=float(xs[worst]),
        detail=f"a={a:g}",
    )


def verify_ga_q_claims(a: float, q: float, m: int = 1000) -> list[CheckResult]:
    """
    q-비교 성질
    - x ∈ (0, π/2]: G_a(x,qx) ≥ G_a(x,x/q)
    - x ∈ (0, 2π/q]: -G_a(x,qx) 감소
    - |G_a(2π/q, 2π)| ≤ 1e-10
    - -G_a(π/2, qπ/2) > 0
    - crossing point x_* > π/2 이고 차이 공식이 x_* 에서 0
    """
    a = require_a(a)
    q = require_q(q)
    if m < 100:
        raise ParameterError(f"sample count must be at least 100, got {m}")
    tag = f"a={a:g}, q={q:g}"

    xs = np.linspace(HALF_PI / m, HALF_PI, m)
    selection = _ga(xs, q * xs, a) - _ga(xs, xs / q, a)
    worst_sel = int(np.argmin(selection))

    x_end = TWO_PI / q
    xs_long = np.linspace(x_end / m, x_end, m)
    neg_g = -_ga(xs_long, q * xs_long, a)
    steps = np.diff(neg_g)
    worst_step = int(np.argmax(steps))

    endpoint = abs(float(_ga(x_end, TWO_PI, a)))
    at_half_pi = -float(_ga(HALF_PI, q * HALF_PI, a))

    checks = [
        CheckResult.lower(
            "ga_max_selection",
            float(selection[worst_sel]),
            -SELECTION_TOL,
            location=float(xs[worst_sel]),
            detail=tag,
        ),
        CheckResult.upper(
            "neg_ga_qx_decreasing",
            float(steps[worst_step]),
            0.0,
            location=float(xs_long[worst_step]),
            detail=tag,
        ),
        CheckResult.upper("ga_zero_at_two_pi", endpoint, CROSSING_TOL, location=x_end, detail=tag),
        CheckResult.lower(
            "neg_ga_half_pi_positive",
            at_half_pi,
            np.finfo(float).tiny,
            location=HALF_PI,
            detail=tag,
        ),
    ]

    try:
        x_star = crossing_point(q, a)
        checks.append(
            CheckResult.upper(
                "crossing_point",
                abs(ga_crossing_difference(x_star, q, a)),
                CROSSING_TOL,
                location=x_star,
                detail=tag,
            )
        )
    except NumericError as e:
        checks.append(CheckResult.from_margin("crossing_point", -1.0, detail=e.message))
    return checks


def verify_qa_derivative(a: float, h: float = 1e-5) -> CheckResult:
    """중심 차분 (Q_a(y+h) - Q_a(y-h)) / 2h ≈ K_a(y), 상대오차 1e-6, y ∈ [0.1, 10]"""
    a = require_a(a)
    ys = np.geomspace(0.1, 10.0, 64)
    fd = (kernel_qa(ys + h, a) - kernel_qa(ys - h, a)) / (2.0 * h)
    exact = kernel_ka(ys, a)
    rel = np.abs(fd - exact) / np.abs(exact)
    worst = int(np.argmax(rel))
    return CheckResult.upper(
        "qa_derivative_is_ka", float(rel[worst]), 1e-6, location=float(ys[worst]), detail=f"a={a:g}"
    )


def verify_ka_decreasing(a: float, m: int = 1000) -> CheckResult:
    """K_a 가 (0, 20a] 에서 강감소"""
    a = require_a(a)
    ys = np.linspace(20.0 * a / m, 20.0 * a, m)
    steps = np.diff(kernel_ka(ys, a))
    worst = int(np.argmax(steps))
    return CheckResult.upper(
        "ka_decreasing", float(steps[worst]), 0.0, location=float(ys[worst]), detail=f"a={a:g}"
    )


# ============================================================
# 부등식 검증
# ============================================================


def profile_in_blowup_class(f: ProfileFunction, tol: float = 1e-10, samples: int = 2048) -> bool:
    """
    해석적 함수 핸들의 blow-up class 판정
    - min f ≥ -tol, |f(0)| ≤ tol, 짝함수, [0,π) 에서 f' ≥ -tol·(1 + max|f'|)
    """
    xs = np.linspace(0.0, np.pi, samples, endpoint=False)
    values = np.asarray(f(xs), dtype=np.float64)
    mirrored = np.asarray(f(-xs), dtype=np.float64)
    slopes = np.asarray(f.derivative(xs), dtype=np.float64)
    slope_scale = 1.0 + float(np.max(np.abs(slopes)))
    return bool(
        np.all(np.isfinite(values))
        and float(np.min(values)) >= -tol
        and abs(float(f(0.0))) <= tol
        and float(np.max(np.abs(values - mirrored))) <= tol
        and float(np.min(slopes)) >= -tol * slope_scale
    )


def _require_class(f: ProfileFunction) -> None:
    if not profile_in_blowup_class(f):
        raise PreconditionError(f"function {f.name!r} is not in the blow-up class")


def check_kernel_bound(f: ProfileFunction, a: float, x: float) -> KernelBoundResult:
    """
    H_a f(x) ≤ ∫₀^{2x} f'(y)·G_a(x,y) dy

    - lhs: 주기 적분 오라클
    - rhs: y = x ± ε 에서 분할한 적응 구적 + 특이 구간 해석 보정
        ∫_{x-ε}^{x+ε} f'(y) G_a dy ≈ f'(x)·[(2ε/π)(log ε - 1) + 2ε·S(x)]
        S(x) = G_a 의 y = x 에서의 매끄러운 부분

    Raise:
    - PreconditionError: f 가 blow-up class 밖
    - ParameterError: x ∉ (0, π/2]
    """
    a = require_a(a)
    x = float(x)
    if not 0.0 < x <= HALF_PI:
        raise ParameterError(f"x must lie in (0, pi/2], got {x!r}")
    _require_class(f)

    eps = QuadraturePolicy.SINGULAR_EPS
    lhs = apply_ha_quadrature(f, a, x)

    def integrand(y: float) -> float:
        return float(f.derivative(y)) * float(_ga(x, y, a))

    left = adaptive_integral(integrand, 0.0, x - eps)
    right = adaptive_integral(integrand, x + eps, 2.0 * x)

    a2 = a * a
    smooth = (
        np.log1p(a2 / (x * x))
        - np.log(a2)
        + np.log1p(a2 / ((TWO_PI - x) ** 2))
        - np.log1p(a2 / (TWO_PI**2))
    ) / TWO_PI
    correction = float(f.derivative(x)) * (
        (2.0 * eps / np.pi) * (np.log(eps) - 1.0) + 2.0 * eps * smooth
    )
    rhs = left + right + correction

    holds = lhs <= rhs + KERNEL_BOUND_TOL
    logger.debug("kernel_bound f=%s a=%g x=%.6f lhs=%.10e rhs=%.10e", f.name, a, x, lhs, rhs)
    return KernelBoundResult(x=x, lhs=float(lhs), rhs=float(rhs), holds=bool(holds))


def estimate_key_constant(a: float, sigma: float, family: list[ProfileFunction]) -> float:
    """
    -∫₀^{π/2} H_a f·f'/x^σ dx ≥ C·∫₀^{π/2} f²/x^{1+σ} dx 의 경험적 하한 C

    - 두 적분 모두 graded Gauss-Legendre, H_a f 는 적분 오라클
    - family 최솟값 반환, 양수 여부는 호출측에서 판정

    Raise:
    - ParameterError: family 가 비었거나 전부 0
    - PreconditionError: blow-up class 밖 함수 포함
    """
    a = require_a(a)
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma!r}")
    if not family:
        raise ParameterError("function family must be nonempty")

    samples = np.linspace(-np.pi, np.pi, 4097)
    ratios: list[float] = []
    for f in family:
        _require_class(f)
        if not np.any(f(samples)):
            logger.warning("Skipping identically zero family member %s", f.name)
            continue

        def lhs_integrand(x: np.ndarray, f=f) -> np.ndarray:
            return -apply_ha_quadrature(f, a, x) * f.derivative(x)

        lhs = weighted_boundary_integral(lhs_integrand, sigma)
        rhs = weighted_boundary_integral(lambda x, f=f: f(x) ** 2, 1.0 + sigma)
        ratio = lhs / rhs
        logger.info("Key constant ratio f=%s a=%g sigma=%g: %.6e", f.name, a, sigma, ratio)
        ratios.append(ratio)

    if not ratios:
        raise ParameterError("function family has no nonzero member")
    return float(min(ratios))
