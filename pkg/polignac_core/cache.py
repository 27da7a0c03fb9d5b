"""
Census cache file.

Format (LF line endings, decimal, no padding):
    polignac-census,v1,limit=<N>
    gap,count,first_index,first_prime
    <one row per gap, ascending>
"""

import logging
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from polignac_core.config import SieveConfig
from polignac_core.exceptions import CacheFormatError, CacheVersionError
from polignac_core.primes import GapCensus, GapRecord, SieveLimit, gap_census

logger = logging.getLogger("cache")

CACHE_MAGIC = "polignac-census"
CACHE_VERSION = "v1"
CACHE_COLUMNS = ["gap", "count", "first_index", "first_prime"]


def render_census_csv(census: GapCensus) -> str:
    """Header row plus one row per gap."""
    return census.to_frame()[CACHE_COLUMNS].to_csv(index=False, lineterminator="\n")


def render_cache_file(census: GapCensus) -> str:
    return f"{CACHE_MAGIC},{CACHE_VERSION},limit={census.limit.limit}\n" + render_census_csv(census)


def parse_cache_header(line: str) -> int:
    """Return the limit recorded in a v1 header line; reject any other version token."""
    parts = line.rstrip("\n").split(",")
    if len(parts) != 3 or parts[0] != CACHE_MAGIC or not parts[2].startswith("limit="):
        raise CacheFormatError(f"Not a census cache header: {line.strip()!r}")
    if parts[1] != CACHE_VERSION:
        raise CacheVersionError(
            f"Unsupported census cache version {parts[1]!r}",
            details={"Expected": CACHE_VERSION},
        )
    try:
        return int(parts[2][len("limit=") :])
    except ValueError as e:
        raise CacheFormatError(f"Bad limit in cache header: {parts[2]!r}") from e


class CensusCache:
    """Manages one census cache file. Writes are atomic (temp file + replace)."""

    def __init__(self, filepath: Union[str, Path]):
        self.filepath = Path(filepath)

    def exists(self) -> bool:
        return self.filepath.exists()

    def cached_limit(self) -> Optional[int]:
        if not self.filepath.exists():
            return None
        with open(self.filepath, "r", newline="") as f:
            return parse_cache_header(f.readline())

    def load(self, limit: int) -> Optional[GapCensus]:
        """
        Census for exactly `limit`, or None on a miss.

        A file for a different limit is a miss (the census is recomputed, never
        extended or truncated). A file with another version token raises.
        """
        if not self.filepath.exists():
            logger.info("Cache miss: %s does not exist", self.filepath)
            return None
        with open(self.filepath, "r", newline="") as f:
            cached = parse_cache_header(f.readline())
            if cached != limit:
                logger.warning("Cache limit mismatch in %s: cached=%d requested=%d; recomputing", self.filepath, cached, limit)
                return None
            try:
                frame = pd.read_csv(f, dtype="int64")
            except (ValueError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
                raise CacheFormatError(f"Unreadable census rows in {self.filepath}: {e}") from e
        if list(frame.columns) != CACHE_COLUMNS:
            raise CacheFormatError(f"Unexpected cache columns {list(frame.columns)}")
        gaps = frame["gap"]
        if not (gaps.is_unique and gaps.is_monotonic_increasing):
            raise CacheFormatError(f"Gap rows in {self.filepath} must be strictly ascending and unique")
        if (frame["count"] < 1).any():
            raise CacheFormatError(f"Gap counts in {self.filepath} must be at least 1")

        records = {
            gap: GapRecord(gap=gap, count=count, first_index=first_index, first_prime=first_prime)
            for gap, count, first_index, first_prime in zip(
                *(frame[column].astype(int).tolist() for column in CACHE_COLUMNS)
            )
        }
        total = sum(r.count for r in records.values())
        logger.info("Cache hit: %s (limit=%d, %d gaps)", self.filepath, limit, len(records))
        return GapCensus(limit=SieveLimit(limit), records=records, prime_count=total + 1)

    def save(self, census: GapCensus) -> None:
        self.filepath.parent.mkdir(parents=True, exist_ok=True)
        tmp_path = self.filepath.with_suffix(".tmp")
        with open(tmp_path, "w", newline="") as f:
            f.write(render_cache_file(census))
        tmp_path.replace(self.filepath)
        logger.debug("Census saved to %s", self.filepath)


def cached_census(
    limit: int,
    path: Optional[Union[str, Path]] = None,
    segment_size: int = SieveConfig.segment_size,
    threads: int = 1,
) -> GapCensus:
    """Load the census from `path` when it matches `limit` exactly, else build and store it."""
    sieve_limit = SieveLimit.of(limit)
    if path is None:
        return gap_census(sieve_limit, segment_size, threads)
    cache = CensusCache(path)
    census = cache.load(sieve_limit.limit)
    if census is None:
        census = gap_census(sieve_limit, segment_size, threads)
        cache.save(census)
    return census
