# app/config.py
from pydantic_settings import BaseSettings, SettingsConfigDict


class AppConfig(BaseSettings):
    PROJECT_NAME: str = "lca"
    PROJECT_VERSION: str = "1.0.0"
    PROJECT_DESCRIPTION: str = "Exact lambda-bracket engine for finite Lie conformal algebras"
    REPORT_SCHEMA_VERSION: str = "1.0"
    DEG_DEFAULT: int = 3
    CENTER_DEGREE_MARGIN: int = 2
    DELTA_BOUND_RAISE: int = 2
    ENVELOPE_MAX_ROUNDS: int = 32
    CROSS_CHECK_GCTDER: bool = True
    LOG_LEVEL: str = "WARNING"

    # bounds used by the report ledger
    REPORT_VIR_DEG_D: int = 3
    REPORT_VIR_DEG_X: int = 3
    REPORT_CUR_DEG_D: int = 1
    REPORT_CUR_DEG_X: int = 2
    REPORT_MAX_SOLVER_RANK: int = 3

    model_config = SettingsConfigDict(env_prefix="LCA_", env_file=".env", extra="allow")
