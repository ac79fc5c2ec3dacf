import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, Field

ENV_PREFIX = "LOCALGLOBAL_"


class Settings(BaseModel):
    """Tunable limits. Defaults match the desk-scale fixtures."""

    search_bound: int = Field(default=20, ge=1)
    torsion_max_order: int = Field(default=16, ge=1)
    point_count_cap: int = Field(default=200_000, ge=5)
    jobs: int = Field(default=1, ge=1)
    log_level: str = "INFO"
    box_bound: int = Field(default=10, ge=1)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build Settings from the environment, reading a local .env first."""
    load_dotenv()
    values = {}
    for name in Settings.model_fields:
        raw = os.environ.get(ENV_PREFIX + name.upper())
        if raw is not None:
            values[name] = raw
    return Settings(**values)
