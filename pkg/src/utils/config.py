"""
Configuration management for the skew quadric toolkit.

Defaults live in ``config.json`` at the repository root; any field can be
overridden through an environment variable ``SKEWQ_<FIELD>`` (an optional
``.env`` file is read first).
"""
import json
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.json"
ENV_PREFIX = "SKEWQ_"


class Settings(BaseModel):
    """Validated runtime settings."""
    search_budget: int = Field(100_000, ge=1)
    oracle_max_generators: int = Field(12, ge=0)
    pointscheme_max_vertices: int = Field(12, ge=1)
    classify_max_vertices: int = Field(8, ge=1)
    default_max_degree: int = Field(8, ge=0)
    threads: int = Field(1, ge=1)
    seed: int = 0
    log_level: str = "WARNING"
    n7_trace_budget: int = Field(2000, ge=1)


@lru_cache(maxsize=1)
def load_config(config_path: Path) -> Dict[str, Any]:
    """
    Load configuration from JSON file.

    Args:
        config_path: Path to config.json file

    Returns:
        Dict containing configuration settings
    """
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except Exception as e:
        raise RuntimeError(f"Failed to load config from {config_path}: {e}")


@lru_cache(maxsize=None)
def get_settings(config_path: Optional[Path] = None) -> Settings:
    """Merge config.json with SKEWQ_* environment overrides; cached until ``get_settings.cache_clear()``."""
    load_dotenv()
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    raw: Dict[str, Any] = dict(load_config(path)) if path.exists() else {}
    for name in Settings.model_fields:
        value = os.getenv(ENV_PREFIX + name.upper())
        if value is not None:
            raw[name] = value
    return Settings(**raw)
