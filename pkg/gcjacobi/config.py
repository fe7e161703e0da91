"""Desk-scale limits and the optional custom antiinvolution matrix."""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class Limits(BaseModel):
    """Default sweep ranges; every CLI flag overrides the matching field."""

    s_max: int = Field(default=3, ge=0)
    size_max: int = Field(default=2, ge=1)
    submodule_size_max: int = Field(default=3, ge=1)
    degree: int = Field(default=4, ge=0)
    jacobi_n_max: int = Field(default=15, ge=0)
    reduced_m_max: int = Field(default=6, ge=0)
    workers: int = Field(default=1, ge=1)


class Settings(BaseModel):
    """Everything a config file may set."""

    limits: Limits = Field(default_factory=Limits)
    star_matrix: list[list[str]] | None = None


def load_settings(path: Path | None) -> Settings:
    """Read settings from a JSON file, or return the defaults."""
    if path is None:
        return Settings()
    logger.debug("Loading settings from %s", path)
    return Settings.model_validate_json(path.read_text(encoding="utf-8"))
