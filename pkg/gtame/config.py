"""Configuration for sampling runs.

Defaults come from the environment (after loading a local ``.env``) and can
be overridden per call or by CLI flags.
"""

from __future__ import annotations

import hashlib
import logging
import os
from typing import Any, Literal

import numpy as np
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigurationError
from .linalg import DEFAULT_PRIME, MAX_PRIME, is_prime, previous_prime

load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from e


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

ISO_ROUNDS = 20
AGREEMENT_THRESHOLD = 0.6


def log_level() -> str:
    """GTAME_LOG_LEVEL, read when logging is configured."""
    level = os.getenv("GTAME_LOG_LEVEL", "WARNING").upper()
    if level not in LOG_LEVELS:
        raise ConfigurationError(f"GTAME_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {level!r}")
    return level


def seed_from_environment() -> int | None:
    """Seed explicitly pinned through GTAME_SEED, if any."""
    if os.getenv("GTAME_SEED") in (None, ""):
        return None
    return _env_int("GTAME_SEED", 0)


def derive_stream(seed: int, *parts: Any) -> np.random.Generator:
    """Independent generator keyed by seed and a purpose tuple.

    Parts must be built from ints, strings and tuples of those so that their
    repr is stable across processes.
    """
    key = repr((int(seed), *parts)).encode()
    digest = hashlib.blake2b(key, digest_size=16).digest()
    return np.random.default_rng(int.from_bytes(digest, "little"))


class SampleConfig(BaseModel):
    """Parameters of every Monte-Carlo estimate."""

    model_config = ConfigDict(frozen=True)

    prime: int = Field(
        default_factory=lambda: _env_int("GTAME_PRIME", DEFAULT_PRIME), description="Primary field size"
    )
    seed: int = Field(
        default_factory=lambda: _env_int("GTAME_SEED", 0), ge=0, description="Root of all sampling streams"
    )
    samples: int = Field(
        default_factory=lambda: _env_int("GTAME_SAMPLES", 7), ge=1, description="General elements per estimate"
    )
    rounds: int = Field(
        default_factory=lambda: _env_int("GTAME_ROUNDS", 12),
        ge=1,
        description="Failed split attempts before declaring a summand indecomposable",
    )
    cross_primes: int = Field(
        default_factory=lambda: _env_int("GTAME_CROSS_PRIMES", 2),
        ge=1,
        description="Primes that must agree on a decomposition",
    )

    @field_validator("prime")
    @classmethod
    def _check_prime(cls, v: int) -> int:
        if not 2 <= v < MAX_PRIME or not is_prime(v):
            raise ValueError(f"prime must be a prime below 2^31, got {v}")
        return v

    @classmethod
    def build(cls, **overrides: Any) -> SampleConfig:
        """Construct from environment defaults plus non-None overrides."""
        values = {k: v for k, v in overrides.items() if v is not None}
        try:
            return cls(**values)
        except ValidationError as e:
            raise ConfigurationError(str(e)) from e

    def primes(self) -> tuple[int, ...]:
        """Primary prime followed by the next smaller primes."""
        out = [self.prime]
        while len(out) < self.cross_primes:
            if out[-1] <= 2:
                break
            out.append(previous_prime(out[-1]))
        return tuple(out)

    def rng(self, *parts: Any) -> np.random.Generator:
        return derive_stream(self.seed, *parts)

    def with_samples(self, samples: int) -> SampleConfig:
        return self.model_copy(update={"samples": samples})

    def with_prime(self, prime: int) -> SampleConfig:
        return self.model_copy(update={"prime": prime})


class RunConfig(BaseModel):
    """Everything one CLI invocation needs besides the subcommand arguments."""

    algebra: str | None = Field(default=None, description="Algebra file path or fixture name")
    sampling: SampleConfig = Field(default_factory=SampleConfig)
    t_max: int = Field(
        default_factory=lambda: _env_int("GTAME_TMAX", 6), ge=1, description="Largest multiple probed by condition checks"
    )
    mode: Literal["human", "machine"] = "human"
    allow_low_confidence: bool = False
    seed_pinned: bool = Field(default=False, description="Seed given by flag or GTAME_SEED")

    def check_reproducible(self) -> None:
        if self.mode == "machine" and not self.seed_pinned:
            raise ConfigurationError("machine mode requires --seed or GTAME_SEED")
