# app/schemas/reports.py
"""
검증 리포트 스키마
- class CheckStatus(str, Enum)
- class CheckResult(BaseModel)
- class KernelReport(BaseModel)
- class IdentityResiduals(BaseModel)
- class OperatorReport(BaseModel)
- class KernelBoundResult(BaseModel)

margin 규약:
- margin ≥ 0 이면 pass (허용오차까지 남은 여유)
- 측정값이 non-finite면 fail, margin은 -float max
"""

import math
import sys
from enum import Enum

from pydantic import BaseModel, Field

_WORST_MARGIN = -sys.float_info.max


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"


class CheckResult(BaseModel):
    """검사 1건: 이름, 상태, 최악 위치, margin"""

    name: str = Field(..., description="check name")
    status: CheckStatus = Field(..., description="pass / fail")
    margin: float = Field(..., description="signed slack, >= 0 means pass")
    location: float | None = Field(None, description="worst-case sample location")
    detail: str = Field("", description="free-form context")

    @classmethod
    def from_margin(
        cls,
        name: str,
        margin: float,
        location: float | None = None,
        detail: str = "",
    ) -> "CheckResult":
        margin = float(margin)
        if not math.isfinite(margin):
            return cls(
                name=name,
                status=CheckStatus.FAIL,
                margin=_WORST_MARGIN,
                location=location,
                detail=detail or "non-finite measurement",
            )
        status = CheckStatus.PASS if margin >= 0 else CheckStatus.FAIL
        return cls(name=name, status=status, margin=margin, location=location, detail=detail)

    @classmethod
    def upper(cls, name: str, value: float, bound: float, **kwargs) -> "CheckResult":
        """value ≤ bound"""
        return cls.from_margin(name, bound - value, **kwargs)

    @classmethod
    def lower(cls, name: str, value: float, bound: float, **kwargs) -> "CheckResult":
        """value ≥ bound"""
        return cls.from_margin(name, value - bound, **kwargs)

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    def line(self) -> str:
        """kernel-check 출력 한 줄: name, status, margin, location"""
        location = "-" if self.location is None else repr(self.location)
        return f"{self.name}\t{self.status.value}\t{self.margin!r}\t{location}"


class KernelReport(BaseModel):
    """kernel 검사 묶음 (a 하나 기준)"""

    a: float = Field(..., gt=0)
    q: float = Field(..., gt=1, lt=2)
    sigma: float = Field(..., gt=0)
    checks: list[CheckResult] = Field(default_factory=list)
    key_constant: float | None = Field(None, description="empirical lower bound estimate")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class IdentityResiduals(BaseModel):
    """
    operator_identity_check 결과
    - factorization: ‖H_a f − H(f − P_a f)‖∞
    - smoothing_l2: ‖(H − H_a) f‖₂
    - ha_l2: ‖H_a f‖₂
    """

    factorization: float
    smoothing_l2: float
    ha_l2: float


class OperatorReport(BaseModel):
    """operator 검사 묶음 (a 하나, 격자 크기 n 기준)"""

    a: float = Field(..., gt=0)
    n: int = Field(..., ge=8)
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class KernelBoundResult(BaseModel):
    """H_a f(x) ≤ ∫₀^{2x} f'(y) G_a(x,y) dy 비교"""

    x: float
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs
