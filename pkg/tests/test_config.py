"""Unit tests for settings loaded from the environment."""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from pathlib import Path

import pytest

from polignac_core.config import (
    ConstructionConfig,
    PolConfig,
    SieveConfig,
    Settings,
    get_settings,
    reset_settings,
)

ENV_NAMES = (
    "POLIGNAC_CACHE_DIR",
    "POLIGNAC_THREADS",
    "POLIGNAC_SEGMENT_SIZE",
    "POLIGNAC_LIMIT",
    "POLIGNAC_THRESHOLD",
    "POLIGNAC_K2",
    "LOG_LEVEL",
)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


def test_defaults():
    s = Settings.from_env()
    assert s.sieve == SieveConfig()
    assert s.pol == PolConfig(limit=1_000_000, threshold=100)
    assert s.construction.ratio == 10.0
    assert s.cache_dir is None
    assert s.k2 is None
    assert s.log_level == "INFO"
    assert s.census_cache_path(1000) is None


def test_env_overrides(monkeypatch, tmp_path):
    monkeypatch.setenv("POLIGNAC_CACHE_DIR", str(tmp_path))
    monkeypatch.setenv("POLIGNAC_THREADS", "4")
    monkeypatch.setenv("POLIGNAC_LIMIT", "5000")
    monkeypatch.setenv("POLIGNAC_THRESHOLD", "7")
    monkeypatch.setenv("POLIGNAC_K2", "3")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    s = Settings.from_env()
    assert s.sieve.threads == 4
    assert s.pol == PolConfig(limit=5000, threshold=7)
    assert s.k2 == 3
    assert s.log_level == "DEBUG"
    assert s.census_cache_path(5000) == Path(tmp_path) / "census-5000.csv"


def test_threads_are_clamped(monkeypatch):
    monkeypatch.setenv("POLIGNAC_THREADS", "500")
    assert Settings.from_env().sieve.threads == 64
    monkeypatch.setenv("POLIGNAC_THREADS", "0")
    assert Settings.from_env().sieve.threads == 1


def test_malformed_values_fall_back(monkeypatch):
    monkeypatch.setenv("POLIGNAC_SEGMENT_SIZE", "lots")
    monkeypatch.setenv("POLIGNAC_LIMIT", "1e6")
    s = Settings.from_env()
    assert s.sieve.segment_size == SieveConfig.segment_size
    assert s.pol.limit == PolConfig.limit


def test_with_sieve_copies():
    base = Settings()
    changed = base.with_sieve(segment_size=1024, threads=2)
    assert changed.sieve == SieveConfig(segment_size=1024, threads=2)
    assert base.sieve == SieveConfig()
    assert changed.with_sieve().sieve == changed.sieve


def test_configs_are_frozen():
    with pytest.raises(Exception):
        ConstructionConfig().window = 5


def test_get_settings_is_cached(monkeypatch):
    first = get_settings()
    monkeypatch.setenv("POLIGNAC_K2", "9")
    assert get_settings() is first
    reset_settings()
    assert get_settings().k2 == 9


def test_to_dict():
    data = Settings().to_dict()
    assert data["sieve"] == {"segment_size": 1 << 16, "threads": 1}
    assert data["cache_dir"] is None
