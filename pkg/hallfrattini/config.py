"""
Engine configuration: YAML file, .env file and one environment override.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

BOUNDS_ENV_VAR = "HALLFRATTINI_BOUNDS"
DEFAULT_CONFIG_PATH = Path(__file__).parent.parent / "config" / "engine_config.yaml"

logger = logging.getLogger(__name__)


class Limits(BaseModel):
    """Resource bounds for explicit computation."""
    closure_oracle_bound: int = Field(default=5000, description="Largest order cross-checked by naive closure")
    brute_normalizer_bound: int = Field(default=10_000, description="Largest order scanned element-wise")
    enumeration_bound: int = Field(default=2000, description="Largest order for subgroup class enumeration")
    max_degree: int = Field(default=100_000, description="Largest permutation degree for explicit builds")
    max_order: int = Field(default=100_000_000, description="Largest group order for explicit builds")

    @field_validator("*")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("bounds must be positive")
        return value


class CorpusSettings(BaseModel):
    """Corpus runner settings."""
    max_order: int = 400
    workers: int = 4
    pi_policy: str = "all"
    groups: List[str] = Field(default_factory=list)

    @field_validator("pi_policy")
    @classmethod
    def _policy(cls, value: str) -> str:
        if value not in ("all", "singletons"):
            raise ValueError("pi_policy must be 'all' or 'singletons'")
        return value


class LoggingSettings(BaseModel):
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class EngineSettings(BaseModel):
    """Top-level settings object."""
    limits: Limits = Field(default_factory=Limits)
    corpus: CorpusSettings = Field(default_factory=CorpusSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)


_active: Optional[EngineSettings] = None


def setup_logging(level: str = "INFO", fmt: Optional[str] = None) -> logging.Logger:
    """Install a single stream handler on the package logger."""
    pkg_logger = logging.getLogger("hallfrattini")
    pkg_logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    # Remove existing handlers to prevent duplicate logs
    for h in list(pkg_logger.handlers):
        pkg_logger.removeHandler(h)

    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(fmt or LoggingSettings().format))
    pkg_logger.addHandler(handler)
    return pkg_logger


def _load_yaml(config_path: Path) -> Dict[str, Any]:
    """Load configuration from YAML file."""
    try:
        if config_path.exists():
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
            logger.info(f"Configuration loaded from {config_path}")
            return data
        logger.warning(f"Configuration file not found: {config_path}")
        return {}
    except (OSError, yaml.YAMLError) as e:
        logger.error(f"Error loading configuration: {e}")
        return {}


def parse_bounds_override(text: str) -> Dict[str, int]:
    """
    Parse the bounds override variable.

    Args:
        text: Comma-separated ``key=value`` pairs, e.g. ``enumeration_bound=3000``

    Returns:
        Mapping of limit names to integer values
    """
    overrides: Dict[str, int] = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in Limits.model_fields:
            raise ValueError(f"Invalid bound override: {item!r}")
        overrides[key] = int(float(value.strip()))
    return overrides


def load_settings(config_path: Optional[str] = None) -> EngineSettings:
    """
    Build settings from defaults, the YAML file and the environment.

    Args:
        config_path: Path to configuration file (default: config/engine_config.yaml)

    Returns:
        Validated settings
    """
    load_dotenv()
    data = _load_yaml(Path(config_path) if config_path else DEFAULT_CONFIG_PATH)

    try:
        settings = EngineSettings.model_validate(data)
    except ValidationError as e:
        logger.error(f"Invalid configuration, using defaults: {e}")
        settings = EngineSettings()

    override = os.environ.get(BOUNDS_ENV_VAR, "").strip()
    if override:
        merged = settings.limits.model_dump()
        merged.update(parse_bounds_override(override))
        settings = settings.model_copy(update={"limits": Limits.model_validate(merged)})
        logger.info(f"Resource bounds overridden from {BOUNDS_ENV_VAR}")
    return settings


def get_settings() -> EngineSettings:
    """Return the process-wide settings, loading them on first use."""
    global _active
    if _active is None:
        _active = load_settings()
    return _active


def set_settings(settings: Optional[EngineSettings]) -> None:
    """Replace the process-wide settings (None forces a reload on next use)."""
    global _active
    _active = settings


def limits() -> Limits:
    return get_settings().limits
