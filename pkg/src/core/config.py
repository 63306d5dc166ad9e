from __future__ import annotations

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="HT_", env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    threads: int = 1

    explicit_entry_budget: int = 10**8
    ordered_tuple_budget: int = 5_000_000
    subset_cap: int = 24
    direct_convolution_threshold: int = 32

    hec_tol: float = 1e-8
    zec_tol: float = 1e-6
    zec_step: float = 0.5
    max_iter: int = 1000
    inner_max_iter: int = 10000

    cp_steps: int = 500
    cp_initial_step: float = 1.0
    cp_grad_tol: float = 1e-8
    cp_restarts: int = 8

    high_degree_fraction: float = 0.2
    bench_timeout_seconds: float = 3600.0
    kendall_cutoffs_csv: str = "5,10,25,50,100"

    log_level: str = "INFO"

    def kendall_cutoffs(self) -> list[int]:
        if not self.kendall_cutoffs_csv.strip():
            return []
        return [int(token.strip()) for token in self.kendall_cutoffs_csv.split(",") if token.strip()]


settings = Settings()
