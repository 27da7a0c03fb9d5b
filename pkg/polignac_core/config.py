"""
Configuration Module
====================

Parameters for the sieve, the empirical de Polignac set and the constructions.
Parameter groups are immutable for deterministic behavior; Settings aggregates
them and reads overrides from the environment (optionally a .env file).
"""

import logging
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

logger = logging.getLogger("config")


@dataclass(frozen=True)
class SieveConfig:
    """Segmented sieve parameters. Output never depends on them, only speed and memory."""

    segment_size: int = 1 << 16
    threads: int = 1


@dataclass(frozen=True)
class PolConfig:
    """Empirical de Polignac surrogate: gaps seen at least `threshold` times below `limit`."""

    limit: int = 1_000_000
    threshold: int = 100


@dataclass(frozen=True)
class ConstructionConfig:
    """Admissible construction and lacunary extraction."""

    window: int = 100
    budget: int = 100_000
    ratio: float = 10.0  # v_{n+1} / v_n, the "(say)" constant
    max_vertices: int = 64  # cap on the Ramsey-sized vertex set


@dataclass(frozen=True)
class SearchConfig:
    """Direct witness search."""

    # None = use the largest member of the empirical Pol set
    search_bound: Optional[int] = None
    max_nodes: int = 5_000_000


def _env_int(name: str, default: Optional[int], lo: int = 1, hi: Optional[int] = None) -> Optional[int]:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer)", name, raw)
        return default
    value = max(lo, value)
    if hi is not None:
        value = min(hi, value)
    return value


@dataclass
class Settings:
    """Main configuration container."""

    sieve: SieveConfig = field(default_factory=SieveConfig)
    pol: PolConfig = field(default_factory=PolConfig)
    construction: ConstructionConfig = field(default_factory=ConstructionConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    cache_dir: Optional[Path] = None
    k2: Optional[int] = None
    log_level: str = "INFO"

    @classmethod
    def from_env(cls) -> "Settings":
        """Load overrides from environment. Malformed values fall back to defaults."""
        sieve = SieveConfig(
            segment_size=_env_int("POLIGNAC_SEGMENT_SIZE", SieveConfig.segment_size) or SieveConfig.segment_size,
            threads=_env_int("POLIGNAC_THREADS", SieveConfig.threads, lo=1, hi=64) or 1,
        )
        pol = PolConfig(
            limit=_env_int("POLIGNAC_LIMIT", PolConfig.limit, lo=3) or PolConfig.limit,
            threshold=_env_int("POLIGNAC_THRESHOLD", PolConfig.threshold) or PolConfig.threshold,
        )
        raw_dir = os.getenv("POLIGNAC_CACHE_DIR", "").strip()
        return cls(
            sieve=sieve,
            pol=pol,
            cache_dir=Path(raw_dir) if raw_dir else None,
            k2=_env_int("POLIGNAC_K2", None),
            log_level=os.getenv("LOG_LEVEL", "INFO").strip().upper() or "INFO",
        )

    def with_sieve(self, segment_size: Optional[int] = None, threads: Optional[int] = None) -> "Settings":
        """Copy with CLI overrides applied to the sieve group."""
        sieve = self.sieve
        if segment_size is not None:
            sieve = replace(sieve, segment_size=segment_size)
        if threads is not None:
            sieve = replace(sieve, threads=threads)
        return replace(self, sieve=sieve)

    def census_cache_path(self, limit: int) -> Optional[Path]:
        """Default cache location for a limit, or None when no cache dir is configured."""
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"census-{limit}.csv"

    def to_dict(self) -> dict:
        return {
            "sieve": {"segment_size": self.sieve.segment_size, "threads": self.sieve.threads},
            "pol": {"limit": self.pol.limit, "threshold": self.pol.threshold},
            "construction": {
                "window": self.construction.window,
                "budget": self.construction.budget,
                "ratio": self.construction.ratio,
            },
            "cache_dir": str(self.cache_dir) if self.cache_dir else None,
            "k2": self.k2,
        }


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    if _settings is None:
        _settings = Settings.from_env()
    return _settings


def reset_settings() -> None:
    """Drop the cached instance (tests change the environment)."""
    global _settings
    _settings = None
