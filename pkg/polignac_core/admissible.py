"""
Admissible tuples.

A tuple of distinct nonnegative integers is admissible when it misses at
least one residue class mod p for every prime p. construct_admissible is a
deterministic finite version of the pigeonhole induction: at step n it keeps
the residue class mod p_n that is most populated in a lookahead window.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from polignac_core.exceptions import ConfigInvalid, SourceExhausted
from polignac_core.ipset import IntStream, StreamLike, as_stream
from polignac_core.primes import first_primes, simple_sieve, small_primes

logger = logging.getLogger("admissible")


@dataclass(frozen=True)
class KTuple:
    """Strictly increasing tuple (h_1, ..., h_k) of nonnegative integers."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        previous = -1
        for h in self.elements:
            if h < 0:
                raise ConfigInvalid(f"Tuple element {h} is negative")
            if h <= previous:
                raise ConfigInvalid(f"Tuple is not strictly increasing at {h}")
            previous = h

    @classmethod
    def of(cls, values: "Iterable[int] | KTuple") -> "KTuple":
        return values if isinstance(values, KTuple) else cls(tuple(int(v) for v in values))

    @property
    def k(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    violating_prime: Optional[int] = None

    def __bool__(self) -> bool:
        return self.admissible


@dataclass(frozen=True)
class ResidueChoice:
    """Step n of the construction: b_n ≡ residue (mod prime); survivors = tally of that class."""

    prime: int
    residue: int
    survivors: int


@dataclass(frozen=True)
class AdmissibleSeq:
    tuple: KTuple
    choices: tuple[ResidueChoice, ...]
    window: int

    @property
    def elements(self) -> tuple[int, ...]:
        return self.tuple.elements


def residue_classes(t: "Sequence[int] | KTuple", p: int) -> frozenset[int]:
    """{h mod p : h in t}."""
    return frozenset(h % p for h in KTuple.of(t))


def is_admissible(t: "Sequence[int] | KTuple") -> AdmissibilityVerdict:
    """
    Only primes p <= k need testing: k elements cannot cover p > k classes.
    Returns the least covering prime on failure.
    """
    kt = KTuple.of(t)
    if kt.k == 0:
        raise ConfigInvalid("Admissibility of an empty tuple is undefined")
    for p in small_primes(kt.k):
        if len(residue_classes(kt, p)) >= p:
            return AdmissibilityVerdict(False, p)
    return AdmissibilityVerdict(True)


def _pull(
    source: IntStream,
    start: int,
    want: int,
    budget: int,
    accept,
) -> tuple[list[tuple[int, int]], bool]:
    """
    Up to `want` accepted (index, value) pairs from source index `start` on,
    never reading at or past index `budget`. Second value: True if the source
    (or the budget) ran out before `want` were found.
    """
    found: list[tuple[int, int]] = []
    i = start
    while len(found) < want:
        if i >= budget:
            return found, True
        value = source.element(i)
        if value is None:
            return found, True
        if accept(value):
            found.append((i, value))
        i += 1
    return found, False


def construct_admissible(
    source: StreamLike,
    count: int,
    window: int,
    budget: int,
) -> AdmissibleSeq:
    """
    Extract an admissible strictly increasing subsequence b_1 < ... < b_count.

    Step n pulls up to `window` elements of the filtered stream (elements
    congruent to the earlier choices) lying beyond b_{n-1}. The tally is taken
    over whole residue periods: when at least p_n elements were pulled, the
    window is cut to a multiple of p_n. The most populated class wins, ties go
    to the smaller residue, and it must hold at least 2 elements; otherwise the
    pull doubles until `budget` source elements have been read. b_n is the least
    element of the winning class beyond b_{n-1} (b_0 = 0).

    Raises SourceExhausted (with `partial` set to what was built) when the
    data runs out first.
    """
    if count < 1:
        raise ConfigInvalid(f"count must be >= 1, got {count}")
    if window < 2 * count:
        raise ConfigInvalid(f"window {window} must be at least 2 * count = {2 * count}")
    if budget < 1:
        raise ConfigInvalid(f"budget must be >= 1, got {budget}")

    stream = as_stream(source)
    primes = first_primes(count)
    chosen: list[int] = []
    choices: list[ResidueChoice] = []
    start = 0  # source index just past b_{n-1}

    def partial() -> Optional[AdmissibleSeq]:
        if not chosen:
            return None
        return AdmissibleSeq(KTuple(tuple(chosen)), tuple(choices), window)

    for p in primes:
        fixed = [(c.prime, c.residue) for c in choices]

        def accept(v: int, fixed=fixed) -> bool:
            return v > (chosen[-1] if chosen else 0) and all(v % q == h for q, h in fixed)

        want = window
        while True:
            pulled, ran_out = _pull(stream, start, want, budget, accept)
            usable = pulled[: len(pulled) - len(pulled) % p] if len(pulled) >= p else pulled
            tally = Counter(v % p for _, v in usable)
            best = max(tally.values(), default=0)
            if best >= 2:
                residue = min(h for h, n in tally.items() if n == best)
                break
            if ran_out:
                raise SourceExhausted(
                    f"Source ran out at step {len(chosen) + 1} (p={p}) with {len(chosen)} of {count} elements",
                    partial=partial(),
                    details={"Pulled": len(pulled), "Budget": budget},
                )
            want *= 2

        index, b = next((i, v) for i, v in usable if v % p == residue)
        logger.debug("step %d: p=%d tally=%s -> h=%d, b=%d", len(chosen) + 1, p, dict(tally), residue, b)
        chosen.append(b)
        choices.append(ResidueChoice(prime=p, residue=residue, survivors=best))
        start = index + 1

    seq = AdmissibleSeq(KTuple(tuple(chosen)), tuple(choices), window)
    verdict = is_admissible(seq.tuple)
    if not verdict:
        # residues mod p_n are capped at n < p_n, so this cannot happen
        raise AssertionError(f"constructed tuple {chosen} covers all classes mod {verdict.violating_prime}")
    return seq


def extract_lacunary(seq: Iterable[int], ratio: float = 10.0) -> tuple[int, ...]:
    """Greedy: keep the first element, then each first element > ratio * last kept."""
    rho = Fraction(str(ratio)) if isinstance(ratio, float) else Fraction(ratio)
    if rho <= 1:
        raise ConfigInvalid(f"Lacunary ratio must exceed 1, got {ratio}")
    kept: list[int] = []
    previous = 0
    for v in seq:
        if v <= 0 or v <= previous:
            raise ConfigInvalid(f"Lacunary input must be positive and strictly increasing (at {v})")
        previous = v
        if not kept or v * rho.denominator > rho.numerator * kept[-1]:
            kept.append(v)
    return tuple(kept)


@dataclass(frozen=True)
class TranslateCensus:
    """Translates n + H counted for 0 <= n <= limit."""

    limit: int
    at_least: int
    with_enough_primes: int
    with_consecutive_pair: int


def count_prime_translates(t: "Sequence[int] | KTuple", limit: int, at_least: int = 2) -> TranslateCensus:
    """
    Count n in [0, limit] for which at least `at_least` of n + h_i are prime,
    and for which some n + h_i < n + h_j are consecutive primes.

    Finite shadow of prime-producing tuples. Diagnostic only.
    """
    kt = KTuple.of(t)
    if kt.k == 0:
        raise ConfigInvalid("Empty tuple")
    if limit < 0:
        raise ConfigInvalid(f"limit must be >= 0, got {limit}")
    top = limit + kt.elements[-1]
    is_prime = np.zeros(top + 1, dtype=bool)
    is_prime[simple_sieve(top)] = True
    # prime_rank[x] = number of primes <= x; consecutive iff ranks differ by one
    prime_rank = np.cumsum(is_prime)
    n = np.arange(limit + 1)

    hits = sum(is_prime[n + h].astype(np.int64) for h in kt.elements)
    enough = int(np.count_nonzero(hits >= at_least))

    consecutive = np.zeros(limit + 1, dtype=bool)
    hs = kt.elements
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            a, b = n + hs[i], n + hs[j]
            consecutive |= is_prime[a] & is_prime[b] & (prime_rank[b] - prime_rank[a] == 1)
    return TranslateCensus(
        limit=limit,
        at_least=at_least,
        with_enough_primes=enough,
        with_consecutive_pair=int(np.count_nonzero(consecutive)),
    )
