"""
Configuration

Settings are read from CWFCHECK_* environment variables and an optional .env
file in the working directory; the environment wins over the file. CLI flags
default to these values.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

ENV_PREFIX = "CWFCHECK_"


class Settings(BaseModel):
    """Runtime settings for the checker and the CLI"""

    model_config = ConfigDict(extra="ignore", frozen=True)

    # Sampling and report defaults
    max_level: int = Field(default=3, ge=0)
    budget: int = Field(default=1000, ge=1)
    seed: int = 0
    output_format: Literal["text", "machine"] = "text"
    log_level: str = "WARNING"

    # Enumeration guard for finsemicat.enumerate_semicats
    max_enum_morphisms: int = Field(default=4, ge=0)
    max_enum_objects: int = Field(default=4, ge=0)

    # Finite standard model limits
    representability_enum_limit: int = Field(default=20000, ge=1)
    max_context_environments: int = Field(default=64, ge=1)

    @classmethod
    def from_env(cls, env_file: Optional[Union[str, Path]] = ".env") -> "Settings":
        """Build settings from the environment, falling back to env_file"""
        source: Dict[str, Any] = {}
        if env_file is not None and Path(env_file).exists():
            source.update(dotenv_values(env_file))
            logger.debug(f"Loaded .env from: {env_file}")
        source.update(os.environ)
        values = {}
        for name in cls.model_fields:
            key = ENV_PREFIX + name.upper()
            if source.get(key) is not None:
                values[name] = source[key]
        return cls(**values)


@lru_cache()
def get_settings() -> Settings:
    """Return the process-wide settings object"""
    return Settings.from_env()
