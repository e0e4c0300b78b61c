"""Run configuration: JSON file plus command-line overrides"""

import json
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError, model_validator

from core.harness.types import Group
from core.observability.logging_config import get_logger, timing_decorator

from .exceptions import ConfigError

logger = get_logger(__name__)


class ToleranceConfig(BaseModel):
    """Default absolute tolerances per identity class"""

    lemma: float = Field(default=1e-25, gt=0)
    alternating: float = Field(default=1e-20, gt=0)
    positive: float = Field(default=1e-18, gt=0)
    quadrature: float = Field(default=1e-20, gt=0)
    new_integrals: float = Field(default=1e-18, gt=0)
    fourier: float = Field(default=1e-10, gt=0)
    weighted: float = Field(default=1e-18, gt=0)
    property: float = Field(default=1e-27, gt=0)


class Config(BaseModel):
    """Verification run configuration"""

    # Selection (empty means everything)
    groups: list[Group] = Field(default_factory=list)
    ids: list[str] = Field(default_factory=list)

    # Theorem grid extent
    n_max: int = Field(default=8, ge=2, le=40)
    m_max: int = Field(default=3, ge=1, le=10)

    # Budgets
    tol: float | None = Field(default=None, gt=0)
    budget_terms: int = Field(default=100_000, ge=64)
    quad_level: int = Field(default=12, ge=3, le=12)

    # Execution and output
    jobs: int = Field(default=1, ge=1, le=64)
    format: Literal["text", "json", "csv"] = "text"
    out: Path | None = None
    list_only: bool = False

    tolerances: ToleranceConfig = Field(default_factory=ToleranceConfig)

    @model_validator(mode="after")
    def _check_grid(self) -> "Config":
        if self.n_max < 2 * self.m_max - 1:
            raise ValueError(
                f"n_max={self.n_max} leaves the m={self.m_max} weighted grid empty"
            )
        return self

    def public_dict(self) -> dict[str, Any]:
        """Return the JSON-safe view embedded in reports."""
        return json.loads(self.model_dump_json())

    @classmethod
    @timing_decorator(name="config_load")
    def load(cls, path: Path | None = None, **overrides: Any) -> "Config":
        """
        Load configuration from an optional JSON file and apply overrides

        Args:
            path: JSON file whose keys mirror the Config fields
            **overrides: Values that win over the file (None values are ignored)

        Returns:
            Config: Validated configuration

        Raises:
            ConfigError: If the file cannot be read or validation fails
        """
        data: dict[str, Any] = {}
        if path is not None:
            try:
                data = json.loads(Path(path).read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError(f"Cannot read config file {path}: {e}") from e
            if not isinstance(data, dict):
                raise ConfigError(f"Config file {path} must hold a JSON object")

        data.update({key: value for key, value in overrides.items() if value is not None})

        try:
            config = cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

        logger.debug(
            f"Config loaded: n_max={config.n_max}, m_max={config.m_max}, "
            f"jobs={config.jobs}, format={config.format}"
        )
        return config
