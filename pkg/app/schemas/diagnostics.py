# app/schemas/diagnostics.py
"""
진단 스키마
- class DiagnosticsRecord(BaseModel)
- class RiccatiFit(BaseModel)
- class SymmetryReport(BaseModel)
"""

from pydantic import BaseModel, ConfigDict, Field

# CSV 컬럼 순서 (고정)
DIAGNOSTICS_COLUMNS: tuple[str, ...] = (
    "t",
    "linf",
    "l2",
    "hs",
    "mean",
    "slope_max",
    "slope_argmax",
    "bkm",
    "j_value",
    "tail_fraction",
)


class DiagnosticsRecord(BaseModel):
    """
    출력 시각 1개의 스칼라 진단
    - j_value: blow-up class 밖의 데이터면 nan
    """

    model_config = ConfigDict(frozen=True)

    t: float = Field(..., ge=0, description="time")
    linf: float = Field(..., description="max |rho|")
    l2: float = Field(..., description="L2 norm via Parseval")
    hs: float = Field(..., description="homogeneous H^s seminorm")
    mean: float = Field(..., description="grid mean")
    slope_max: float = Field(..., description="max |d_x rho| on the grid")
    slope_argmax: float = Field(..., description="grid point of slope_max")
    bkm: float = Field(..., ge=0, description="accumulated integral of slope_max")
    j_value: float = Field(..., description="weighted boundary functional J")
    tail_fraction: float = Field(..., description="spectral tail energy share")

    def row(self) -> list[float]:
        return [getattr(self, name) for name in DIAGNOSTICS_COLUMNS]


class RiccatiFit(BaseModel):
    """
    J' ≥ c·J² 비교 fit 결과
    - conclusive=False 이면 c_hat ≤ 0 이고 t_star_bound는 None
    """

    c_hat: float = Field(..., description="min over interior samples of J'/J^2")
    t_star_bound: float | None = Field(None, description="t0 + 1/(c_hat J(t0))")
    residual: float = Field(..., ge=0, description="max relative excess of the comparison curve")
    conclusive: bool = Field(..., description="c_hat > 0")
    samples: int = Field(..., ge=0, description="number of (t, J) samples used")


class SymmetryReport(BaseModel):
    """짝함수성/단조성 결함 (추세 플롯용 원시값)"""

    evenness_defect: float = Field(..., description="max_j |f(x_j) - f(-x_j)|")
    min_value: float = Field(..., description="min f")
    origin_value: float = Field(..., description="|f(0)|")
    min_slope_right: float = Field(..., description="min d_x f on [0, pi)")
