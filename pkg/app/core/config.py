"""
Application configuration settings
"""

from pydantic_settings import BaseSettings
from typing import List


class Settings(BaseSettings):
    """Application settings"""

    # Project Information
    PROJECT_NAME: str = "Cominuscule Compactification Verifier"
    VERSION: str = "1.0.0"
    API_V1_STR: str = "/api/v1"

    # Logging
    LOG_LEVEL: str = "WARNING"

    # Sweep Configuration
    MAX_SWEEP_RANK: int = 8
    NEGATIVE_CONTROL_MAX_RANK: int = 6
    SWEEP_MAX_WORKERS: int = 1

    # Oracle Configuration
    ORACLE_MAX_GROUP_ORDER: int = 10_000
    ORACLE_TYPES: List[str] = ["A3", "B3", "C3", "D4"]

    # Engine limits
    ISOMORPHISM_MAX_NODES: int = 9
    DELTA_LEVEL_BOUND: int = 2

    class Config:
        env_file = ".env"
        case_sensitive = True


# Create settings instance
settings = Settings()
