from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

from src.schemas.bench import BenchRecord


@dataclass(slots=True)
class HarnessHealth:
    name: str
    runs: int = 0
    ok: int = 0
    timeouts: int = 0
    guarded: int = 0
    last_error: str | None = None
    started_at: datetime | None = None
    last_run_at: datetime | None = None
    metrics: dict[str, int] = field(default_factory=dict)

    def mark_start(self) -> None:
        self.started_at = datetime.now(timezone.utc)

    def record(self, row: BenchRecord) -> None:
        self.runs += 1
        self.last_run_at = datetime.now(timezone.utc)
        if row.status == "ok":
            self.ok += 1
        elif row.status == "timeout":
            self.timeouts += 1
        else:
            self.guarded += 1
        key = f"{row.algorithm}:{row.status}"
        self.metrics[key] = self.metrics.get(key, 0) + 1

    def mark_error(self, error: Exception) -> None:
        self.last_error = str(error)

    def payload(self) -> dict[str, object]:
        return {
            "name": self.name,
            "runs": self.runs,
            "ok": self.ok,
            "timeouts": self.timeouts,
            "guarded": self.guarded,
            "last_error": self.last_error,
            "started_at": self.started_at.isoformat() if self.started_at else None,
            "last_run_at": self.last_run_at.isoformat() if self.last_run_at else None,
            "metrics": self.metrics,
        }
