import os
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Tuple

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator, model_validator

from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import AInftyToolkitError

DEFAULTS_PATH = Path(__file__).resolve().parent.parent / "config" / "defaults.yaml"


class Limits(BaseModel):
    max_words: int = 200_000
    max_functors: int = 4096
    max_simplices: int = 100_000


class VerifyDefaults(BaseModel):
    truncation: int = 3
    window: Tuple[int, int] = (-2, 1)
    relation_arity: int = 4
    cone_window: Tuple[int, int] = (-3, 2)


class Settings(BaseModel):
    ring: str = "F2"
    truncation: int = 3
    window: Tuple[int, int] = (-4, 2)
    arity: int = 4
    nerve_dimension: int = 3
    max_arity: int = 6
    threads: int = 1
    log_level: str = "WARNING"
    report_schema_version: int = 1
    database_url: str = "sqlite:///ainfty_runs.db"
    limits: Limits = Limits()
    verify: VerifyDefaults = VerifyDefaults()


@lru_cache(maxsize=None)
def load_settings(path: Optional[str] = None) -> Settings:
    """
    Settings from the defaults file, overlaid with the environment (a .env file is honoured).
    """
    load_dotenv()
    source = Path(path) if path else DEFAULTS_PATH
    with source.open(encoding="utf-8") as handle:
        data = yaml.safe_load(handle) or {}
    if os.getenv("AINFTY_LOG_LEVEL"):
        data["log_level"] = os.getenv("AINFTY_LOG_LEVEL")
    if os.getenv("AINFTY_THREADS"):
        data["threads"] = int(os.getenv("AINFTY_THREADS"))
    if os.getenv("DATABASE_URL"):
        data["database_url"] = os.getenv("DATABASE_URL")
    return Settings.model_validate(data)


class RunOptions(BaseModel):
    """Validated command options; built before any computation starts."""
    ring: str
    truncation: int = Field(ge=1)
    window: Tuple[int, int]
    arity: int = Field(ge=1)
    nerve_dimension: int = Field(ge=1, le=3)
    max_arity: int = 6
    output_format: str = "text"
    invert: List[str] = []
    lemma: Optional[str] = None

    @field_validator("ring")
    @classmethod
    def _known_ring(cls, value: str) -> str:
        try:
            Ring.parse(value)
        except AInftyToolkitError as exc:
            raise ValueError(str(exc)) from exc
        return value

    @field_validator("output_format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("text", "json"):
            raise ValueError("format must be text or json")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "RunOptions":
        lo, hi = self.window
        if lo > hi:
            raise ValueError(f"window [{lo}, {hi}] is empty")
        if self.arity > self.max_arity:
            raise ValueError(f"arity {self.arity} exceeds the bound {self.max_arity}")
        return self

    def parsed_ring(self) -> Ring:
        return Ring.parse(self.ring)
