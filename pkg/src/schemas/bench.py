from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

Algorithm = Literal["explicit", "ordered", "unordered", "genfn"]
Operation = Literal["ttsv1", "ttsv2"]
BenchStatus = Literal["ok", "timeout", "oom-guard"]


class BenchRecord(BaseModel):
    dataset: str
    algorithm: Algorithm
    op: Operation
    r: int = Field(ge=0)
    wall_ns: int | None = Field(default=None, ge=0)
    status: BenchStatus
    edge_size: int | None = None
    edges: int | None = None

    @model_validator(mode="after")
    def _wall_time_matches_status(self) -> BenchRecord:
        if (self.wall_ns is not None) != (self.status == "ok"):
            raise ValueError("wall_ns must be present exactly when status is ok")
        return self
