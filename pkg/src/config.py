from typing import Optional

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    app_name: str = "mcat"

    # Numeric equality for vec instances
    tolerance: Optional[float] = None  # MCAT_TOLERANCE, beats the document value
    default_tolerance: float = 1e-9
    rank_rtol: float = 1e-9
    singular_rtol: float = 1e-12

    # Jacobi SVD kernel
    svd_max_sweeps: int = 100
    svd_eps: float = 1e-14

    # Caps
    max_dim: int = 64
    max_card: int = 8
    max_split_units: int = 18

    # CLI defaults
    default_policy: str = "nondegenerate"
    default_seed: int = 1
    default_trials: int = 200
    log_level: str = "WARNING"

    class Config:
        env_prefix = "MCAT_"
        env_file = ".env"
        extra = "ignore"


settings = Settings()
