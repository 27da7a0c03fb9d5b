"""
Segmented prime sieve, consecutive-prime-gap census and the empirical
de Polignac set.

A gap g is an *empirical* de Polignac number when it occurs at least
`threshold` times among consecutive primes p_n < p_{n+1} <= limit. This is a
finite surrogate; nothing here decides membership in the true set.
"""

from __future__ import annotations

import bisect
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import islice
from math import isqrt
from typing import Dict, Iterator, Mapping, Optional

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from polignac_core.config import SieveConfig
from polignac_core.exceptions import AllocationBudgetExceeded, ConfigInvalid, SieveLimitError
from polignac_core.utils import I64_MAX

logger = logging.getLogger("primes")

MIN_LIMIT = 3
MAX_LIMIT = I64_MAX
MAX_SEGMENT_SIZE = 1 << 30

# Literature bounds B with Pol ∩ [2, B] known to be nonempty.
KNOWN_GAP_BOUNDS: Dict[str, int] = {
    "zhang": 70_000_000,
    "polymath8a": 4680,
    "maynard": 600,
    "polymath8b": 246,
}


@dataclass(frozen=True)
class SieveLimit:
    """Inclusive upper bound on the primes considered."""

    limit: int

    def __post_init__(self) -> None:
        if isinstance(self.limit, bool) or not isinstance(self.limit, (int, np.integer)):
            raise SieveLimitError(f"Sieve limit must be an integer, got {self.limit!r}")
        if self.limit < MIN_LIMIT:
            raise SieveLimitError(f"Sieve limit {self.limit} is below the minimum {MIN_LIMIT}")
        if self.limit > MAX_LIMIT:
            raise SieveLimitError(f"Sieve limit {self.limit} exceeds 2**63 - 1")
        object.__setattr__(self, "limit", int(self.limit))

    @classmethod
    def of(cls, value: "int | SieveLimit") -> "SieveLimit":
        return value if isinstance(value, SieveLimit) else cls(value)

    def __int__(self) -> int:
        return self.limit


@dataclass(frozen=True)
class GapRecord:
    """One gap value: multiplicity and first occurrence (1-based prime index n, p_n)."""

    gap: int
    count: int
    first_index: int
    first_prime: int


@dataclass(frozen=True)
class GapCensus:
    """All consecutive prime gaps with p_{n+1} <= limit."""

    limit: SieveLimit
    records: Mapping[int, GapRecord]
    prime_count: int

    def count(self, gap: int) -> int:
        record = self.records.get(gap)
        return record.count if record else 0

    @property
    def gaps(self) -> list[int]:
        return sorted(self.records)

    @property
    def max_gap(self) -> int:
        return max(self.records)

    @property
    def total_gaps(self) -> int:
        return sum(r.count for r in self.records.values())

    def to_frame(self) -> pd.DataFrame:
        """Rows in ascending gap order, columns gap,count,first_index,first_prime."""
        rows = [self.records[g] for g in self.gaps]
        return pd.DataFrame(
            {
                "gap": [r.gap for r in rows],
                "count": [r.count for r in rows],
                "first_index": [r.first_index for r in rows],
                "first_prime": [r.first_prime for r in rows],
            },
            dtype="int64",
        )


@dataclass(frozen=True)
class EmpiricalPol:
    """Surrogate for Pol: even gaps whose census count meets the threshold."""

    limit: SieveLimit
    threshold: int
    members: tuple[int, ...]
    counts: Mapping[int, int] = field(default_factory=dict, compare=False)

    def __contains__(self, g: object) -> bool:
        if not isinstance(g, (int, np.integer)):
            return False
        i = bisect.bisect_left(self.members, g)
        return i < len(self.members) and self.members[i] == g

    def __len__(self) -> int:
        return len(self.members)

    @property
    def max_member(self) -> Optional[int]:
        return self.members[-1] if self.members else None

    @property
    def ref(self) -> str:
        return f"empirical-pol(limit={self.limit.limit},threshold={self.threshold})"

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"gap": list(self.members), "count": [self.counts.get(g, 0) for g in self.members]},
            dtype="int64",
        )


def simple_sieve(limit: int) -> NDArray[np.int64]:
    """Primes <= limit with a single bytemap. Used for base primes and small helpers."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p : limit + 1 : p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def small_primes(n: int) -> list[int]:
    """Primes <= n as Python ints."""
    return simple_sieve(n).tolist()


def first_primes(k: int) -> list[int]:
    """p_1, ..., p_k."""
    if k <= 0:
        return []
    # p_k < k (ln k + ln ln k) for k >= 6
    bound = 15
    while True:
        found = small_primes(bound)
        if len(found) >= k:
            return found[:k]
        bound *= 2


def _sieve_segment(low: int, high: int, base: NDArray[np.int64]) -> NDArray[np.int64]:
    """Primes in [low, high). Base primes must cover sqrt(high - 1)."""
    mask = np.ones(high - low, dtype=bool)
    for p in base.tolist():
        p2 = p * p
        if p2 >= high:
            break
        start = max(p2, -(-low // p) * p)
        if start < high:
            mask[start - low :: p] = False
    if low < 2:
        mask[: 2 - low] = False
    return low + np.flatnonzero(mask).astype(np.int64)


def iter_prime_segments(
    limit: "int | SieveLimit",
    segment_size: int = SieveConfig.segment_size,
    threads: int = 1,
) -> Iterator[NDArray[np.int64]]:
    """
    Yield the primes in [2, limit] segment by segment, in ascending order.

    Segments may be sieved concurrently; results are always yielded in
    segment order so consumers see a deterministic stream.
    """
    top = SieveLimit.of(limit).limit
    if segment_size < 1 or segment_size > MAX_SEGMENT_SIZE:
        raise AllocationBudgetExceeded(
            f"Segment size {segment_size} is invalid (must be in [1, {MAX_SEGMENT_SIZE}])"
        )
    base = simple_sieve(isqrt(top))
    lows = range(2, top + 1, segment_size)
    logger.debug("Sieving [2, %d] in %d segments of %d (threads=%d)", top, len(lows), segment_size, threads)

    def sieve(low: int) -> NDArray[np.int64]:
        return _sieve_segment(low, min(low + segment_size, top + 1), base)

    if threads <= 1:
        for low in lows:
            yield sieve(low)
        return

    batch = threads * 4
    pending = iter(lows)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        while chunk := list(islice(pending, batch)):
            yield from pool.map(sieve, chunk)


def primes_up_to(
    limit: "int | SieveLimit",
    segment_size: int = SieveConfig.segment_size,
    threads: int = 1,
) -> NDArray[np.int64]:
    """Exactly the primes in [2, limit], strictly ascending."""
    segments = list(iter_prime_segments(limit, segment_size, threads))
    if not segments:
        return np.array([], dtype=np.int64)
    return np.concatenate(segments)


def gap_census(
    limit: "int | SieveLimit",
    segment_size: int = SieveConfig.segment_size,
    threads: int = 1,
) -> GapCensus:
    """
    Census of p_{n+1} - p_n over all consecutive pairs with p_{n+1} <= limit.

    Each segment carries its last prime forward, so gaps spanning a segment
    boundary are counted exactly once.
    """
    sieve_limit = SieveLimit.of(limit)
    started = time.monotonic()
    counts: Dict[int, int] = {}
    first: Dict[int, tuple[int, int]] = {}
    seen = 0
    carry: Optional[int] = None

    for seg in iter_prime_segments(sieve_limit, segment_size, threads):
        if seg.size == 0:
            continue
        arr = seg if carry is None else np.concatenate(([carry], seg))
        # 1-based index of arr[0]
        base_index = seen if carry is not None else 1
        seen += int(seg.size)
        carry = int(seg[-1])
        if arr.size < 2:
            continue
        diffs = np.diff(arr)
        values, first_pos, multiplicity = np.unique(diffs, return_index=True, return_counts=True)
        for g, pos, c in zip(values.tolist(), first_pos.tolist(), multiplicity.tolist()):
            counts[g] = counts.get(g, 0) + c
            if g not in first:
                first[g] = (base_index + pos, int(arr[pos]))

    records = {
        g: GapRecord(gap=g, count=counts[g], first_index=first[g][0], first_prime=first[g][1])
        for g in sorted(counts)
    }
    census = GapCensus(limit=sieve_limit, records=records, prime_count=seen)
    logger.info(
        "Census built: limit=%d, pi=%d, distinct gaps=%d, max gap=%d (%.2fs)",
        sieve_limit.limit,
        seen,
        len(records),
        census.max_gap if records else 0,
        time.monotonic() - started,
    )
    return census


def empirical_pol(census: GapCensus, threshold: int) -> EmpiricalPol:
    """Even gaps with census count >= threshold, ascending."""
    if threshold < 1:
        raise ConfigInvalid(f"Threshold must be >= 1, got {threshold}")
    kept = {g: r.count for g, r in census.records.items() if g % 2 == 0 and r.count >= threshold}
    members = tuple(sorted(kept))
    return EmpiricalPol(limit=census.limit, threshold=threshold, members=members, counts=kept)


def is_empirical_depolignac(g: int, pol: EmpiricalPol) -> bool:
    """Binary-search membership."""
    return g in pol


def bounded_gap_shadow(pol: EmpiricalPol) -> Dict[str, dict]:
    """For each literature bound B: is EmpiricalPol ∩ [2, B] nonempty, and its least element."""
    least = pol.members[0] if pol.members else None
    return {
        name: {"bound": bound, "nonempty": least is not None and least <= bound, "least": least}
        for name, bound in KNOWN_GAP_BOUNDS.items()
    }
