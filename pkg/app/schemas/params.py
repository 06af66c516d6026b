# app/schemas/params.py
"""
물리/해석 파라미터 스키마
- class OperatorParams(BaseModel)
- class ModelParams(OperatorParams)
"""

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import RunDefaults


class OperatorParams(BaseModel):
    """
    속도 연산자 파라미터
    - a: 경계층 두께 (x와 같은 길이 단위)
    - g: 중력 상수 (속도 스케일)
    """

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    a: float = Field(RunDefaults.A, gt=0, description="boundary-layer thickness a > 0")
    g: float = Field(RunDefaults.G, gt=0, description="gravitational constant g > 0")


class ModelParams(OperatorParams):
    """
    해석용 파라미터 묶음
    - sigma: Prop 유형 부등식의 가중치 지수 (기본 3/2)
    - delta: J(t) 가중치 지수, sigma = 1 + delta
    - q: crossing 비교 비율, 1 < q < 2
    - s: Ḣˢ 진단 차수 (정수 ≥ 2)
    """

    sigma: float = Field(RunDefaults.SIGMA, gt=0, description="weight exponent sigma > 0")
    delta: float = Field(RunDefaults.DELTA, gt=0, lt=1, description="J weight exponent in (0,1)")
    q: float = Field(RunDefaults.Q, gt=1, lt=2, description="comparison ratio in (1,2)")
    s: int = Field(RunDefaults.S, ge=2, description="Sobolev order s >= 2")
