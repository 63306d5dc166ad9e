from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

CentralityMethod = Literal["zec", "hec", "cec"]


class CentralityReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    method: CentralityMethod
    eigenvalue: float = Field(alias="lambda")
    iterations: int = Field(ge=0)
    residual: float
    scores: list[float]


class KendallRow(BaseModel):
    method_a: CentralityMethod
    method_b: CentralityMethod
    k: int = Field(ge=2)
    tau_b: float = Field(ge=-1.0, le=1.0)
