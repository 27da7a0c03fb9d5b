"""
Desk-scale shadows of the headline statement and its corollaries.

Each demo picks an IP set, intersects FS(M) with the empirical de Polignac
set and reports what it sees. These are plumbing checks over finite data;
they do not prove infinitude of anything.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Dict, Optional

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from polignac_core.exceptions import ConfigInvalid
from polignac_core.ipset import GeneratorSpec, StreamLike, as_stream, fs_enumerate, fs_intersection
from polignac_core.primes import EmpiricalPol, bounded_gap_shadow, simple_sieve

logger = logging.getLogger("demos")


@dataclass(frozen=True)
class FsPolShadow:
    """FS(M) ∩ EmpiricalPol for one generator set."""

    spec: str
    pol_ref: str
    members: tuple[int, ...]

    def to_frame(self, pol: EmpiricalPol) -> pd.DataFrame:
        return pd.DataFrame(
            {"value": list(self.members), "count": [pol.counts.get(m, 0) for m in self.members]},
            dtype="int64",
        )


def theorem1(spec: StreamLike, pol: EmpiricalPol) -> FsPolShadow:
    """Elements of FS(M) that are empirical de Polignac numbers."""
    stream = as_stream(spec)
    members = fs_intersection(stream, pol.members)
    logger.info("FS(M) ∩ %s: %d members", pol.ref, len(members))
    return FsPolShadow(spec=_describe(spec, stream), pol_ref=pol.ref, members=members)


def _describe(spec: StreamLike, stream) -> str:
    if isinstance(spec, (GeneratorSpec, str)):
        return str(spec)
    return repr(stream)


def squarefree_mask(n: int) -> NDArray[np.bool_]:
    """mask[x] is True iff x is squarefree, for 0 <= x <= n (0 is not)."""
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for p in simple_sieve(isqrt(n)).tolist():
        mask[p * p :: p * p] = False
    return mask


@dataclass(frozen=True)
class SquarefreeShiftCheck:
    """Does FS(M) ∩ [1, bound] sit inside S - s (S = squarefree numbers)?"""

    s: int
    s_squarefree: bool
    checked: int
    violations: tuple[int, ...]
    in_pol: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return not self.violations


def corollary1_check(
    spec: StreamLike,
    s: int,
    bound: int,
    pol: Optional[EmpiricalPol] = None,
    max_violations: int = 20,
) -> SquarefreeShiftCheck:
    """
    Membership check only: x + s squarefree for every x in FS(M) up to bound.
    No IP set inside S - s is constructed here; M is user-supplied.
    """
    if s < 1:
        raise ConfigInvalid(f"shift s must be >= 1, got {s}")
    fs = fs_enumerate(as_stream(spec), bound)
    mask = squarefree_mask(bound + s)
    violations = tuple(x for x in fs if not mask[x + s])[:max_violations]
    in_pol = tuple(x for x in fs if pol is not None and x in pol and mask[x + s])
    return SquarefreeShiftCheck(
        s=s,
        s_squarefree=bool(mask[s]),
        checked=len(fs),
        violations=violations,
        in_pol=in_pol,
    )


@dataclass(frozen=True)
class RoughHalfGap:
    """a = p_{n+1} - p_n with m = a/2 + 1 free of prime factors <= c."""

    gap: int
    m: int
    count: int


def corollary2(c: int, pol: EmpiricalPol) -> tuple[RoughHalfGap, ...]:
    """
    FS of {2P * 2**i} (P the product of primes <= c) meets pol in gaps a for
    which m = a/2 + 1 is coprime to P, so half the gap equals m - 1.
    """
    spec = GeneratorSpec.rough(c)
    rows = []
    for a in fs_intersection(spec, pol.members):
        m = a // 2 + 1
        if gcd(m, spec.primorial) != 1:
            raise AssertionError(f"m={m} shares a factor with {spec.primorial}")
        rows.append(RoughHalfGap(gap=a, m=m, count=pol.counts.get(a, 0)))
    return tuple(rows)


def corollary3(pol: EmpiricalPol) -> FsPolShadow:
    """Members of pol written only with the digits 0 and 2."""
    return theorem1(GeneratorSpec.digits(), pol)


def bounds(pol: EmpiricalPol) -> Dict[str, dict]:
    return bounded_gap_shadow(pol)
