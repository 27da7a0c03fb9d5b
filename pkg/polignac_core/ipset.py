"""
Generator sets M, finite-sums sets FS(M), partial sums and block-sum witnesses.

Streams are memoised single-consumer cursors over strictly increasing
integer sequences. Element i of a stream is reproducible: it is computed
once and cached, independent of where the cursor is. Exhaustion of a
finite stream is a signal (None / StopIteration), not an error.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from polignac_core.exceptions import ArithmeticOverflow, ConfigInvalid, SpecInvalid
from polignac_core.primes import small_primes
from polignac_core.utils import U64_MAX, checked_add, checked_mul

logger = logging.getLogger("ipset")

# Largest bound for which subset sums use a dense numpy table.
DP_TABLE_LIMIT = 1 << 26


class GeneratorKind(str, Enum):
    """Shape of the base set M."""

    EXPLICIT = "list"
    GEOMETRIC = "geom"
    DIGITS = "digits"  # {2 * 10**i}: FS is the numbers written with digits 0 and 2
    ROUGH = "rough"  # {2P * 2**i}, P = product of primes <= c


@dataclass(frozen=True)
class GeneratorSpec:
    """Declarative description of a strictly increasing base set M."""

    kind: GeneratorKind
    values: tuple[int, ...] = ()
    base: int = 0
    ratio: int = 0
    c: int = 0
    primorial: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        kind = GeneratorKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is GeneratorKind.EXPLICIT:
            if not self.values:
                raise SpecInvalid("Explicit list is empty")
            previous = 0
            for v in self.values:
                if v <= 0:
                    raise SpecInvalid(f"List element {v} is not positive", token=str(v))
                if v <= previous:
                    raise SpecInvalid(f"List is not strictly ascending at {v}", token=str(v))
                if v > U64_MAX:
                    raise SpecInvalid(f"List element {v} exceeds 2**64 - 1", token=str(v))
                previous = v
        elif kind is GeneratorKind.GEOMETRIC:
            if self.base < 2:
                raise SpecInvalid(f"Geometric base {self.base} < 2", token=str(self.base))
            if self.ratio < 2:
                raise SpecInvalid(f"Geometric ratio {self.ratio} < 2", token=str(self.ratio))
        elif kind is GeneratorKind.ROUGH:
            if self.c < 2:
                raise SpecInvalid(f"Rough bound {self.c} < 2", token=str(self.c))
            product = 1
            for p in small_primes(self.c):
                product *= p
            object.__setattr__(self, "primorial", product)

    @classmethod
    def explicit(cls, values: Iterable[int]) -> "GeneratorSpec":
        return cls(GeneratorKind.EXPLICIT, values=tuple(int(v) for v in values))

    @classmethod
    def geometric(cls, base: int, ratio: int) -> "GeneratorSpec":
        return cls(GeneratorKind.GEOMETRIC, base=base, ratio=ratio)

    @classmethod
    def digits(cls) -> "GeneratorSpec":
        return cls(GeneratorKind.DIGITS)

    @classmethod
    def rough(cls, c: int) -> "GeneratorSpec":
        return cls(GeneratorKind.ROUGH, c=c)

    @property
    def is_finite(self) -> bool:
        return self.kind is GeneratorKind.EXPLICIT

    def element(self, i: int) -> Optional[int]:
        """m_{i+1} (0-based i); None past the end of a finite list."""
        if self.kind is GeneratorKind.EXPLICIT:
            return self.values[i] if i < len(self.values) else None
        if self.kind is GeneratorKind.GEOMETRIC:
            return checked_mul(self.base, self.ratio**i)
        if self.kind is GeneratorKind.DIGITS:
            return checked_mul(2, 10**i)
        return checked_mul(2 * self.primorial, 2**i)

    def __str__(self) -> str:
        if self.kind is GeneratorKind.EXPLICIT:
            return "list:" + ",".join(str(v) for v in self.values)
        if self.kind is GeneratorKind.GEOMETRIC:
            return f"geom:{self.base},{self.ratio}"
        if self.kind is GeneratorKind.DIGITS:
            return "digits"
        return f"rough:{self.c}"


def _parse_int(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise SpecInvalid(f"Not an integer: {token!r}", token=token) from None


def parse_spec(text: str) -> GeneratorSpec:
    """
    Parse the spec mini-language: list:4,6,10 | list:1..200 | geom:2,2 | digits | rough:5.

    Errors name the offending token.
    """
    text = text.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == GeneratorKind.DIGITS.value:
        if rest.strip():
            raise SpecInvalid("'digits' takes no parameters", token=rest.strip())
        return GeneratorSpec.digits()
    tokens = [t.strip() for t in rest.split(",")] if rest.strip() else []
    if kind == GeneratorKind.EXPLICIT.value:
        values: list[int] = []
        for token in tokens:
            if ".." in token:
                lo, _, hi = token.partition("..")
                values.extend(range(_parse_int(lo), _parse_int(hi) + 1))
            else:
                values.append(_parse_int(token))
        if not values:
            raise SpecInvalid("Explicit list is empty", token=text)
        return GeneratorSpec.explicit(values)
    if kind == GeneratorKind.GEOMETRIC.value:
        if len(tokens) != 2:
            raise SpecInvalid("geom takes exactly two parameters: base,ratio", token=rest)
        return GeneratorSpec.geometric(_parse_int(tokens[0]), _parse_int(tokens[1]))
    if kind == GeneratorKind.ROUGH.value:
        if len(tokens) != 1:
            raise SpecInvalid("rough takes exactly one parameter: c", token=rest)
        return GeneratorSpec.rough(_parse_int(tokens[0]))
    raise SpecInvalid(f"Unknown generator kind {kind!r}", token=kind)


class IntStream:
    """Memoised strictly increasing integer sequence with a single-consumer cursor."""

    def __init__(self) -> None:
        self._memo: list[int] = []
        self._done = False
        self._cursor = 0

    def _produce(self, i: int) -> Optional[int]:
        raise NotImplementedError

    def element(self, i: int) -> Optional[int]:
        """Element i (0-based), None when the stream ends before it. Overflow raises."""
        while len(self._memo) <= i and not self._done:
            value = self._produce(len(self._memo))
            if value is None:
                self._done = True
                break
            if self._memo and value <= self._memo[-1]:
                raise SpecInvalid(f"Stream is not strictly increasing at {value}", token=str(value))
            self._memo.append(value)
        return self._memo[i] if i < len(self._memo) else None

    def __iter__(self) -> Iterator[int]:
        return self

    def __next__(self) -> int:
        value = self.element(self._cursor)
        if value is None:
            raise StopIteration
        self._cursor += 1
        return value

    @property
    def position(self) -> int:
        return self._cursor

    @property
    def produced(self) -> int:
        """Elements materialised so far."""
        return len(self._memo)

    def restart(self) -> None:
        self._cursor = 0

    def take(self, n: int) -> list[int]:
        """The first n elements (fewer if the stream ends)."""
        out = []
        for i in range(n):
            value = self.element(i)
            if value is None:
                break
            out.append(value)
        return out

    def prefix_up_to(self, bound: int) -> list[int]:
        """All elements <= bound. An element that would overflow is above any 64-bit bound."""
        bound = min(bound, U64_MAX)
        out = []
        i = 0
        while True:
            try:
                value = self.element(i)
            except ArithmeticOverflow:
                break
            if value is None or value > bound:
                break
            out.append(value)
            i += 1
        return out

    def bounded(self, ceiling: int = U64_MAX) -> "BoundedStream":
        return BoundedStream(self, ceiling)


class ListStream(IntStream):
    """Finite explicit sequence."""

    def __init__(self, values: Sequence[int]):
        super().__init__()
        self._values = [int(v) for v in values]

    def _produce(self, i: int) -> Optional[int]:
        return self._values[i] if i < len(self._values) else None


class IterStream(IntStream):
    """Wraps any iterator of ascending ints."""

    def __init__(self, values: Iterable[int]):
        super().__init__()
        self._it = iter(values)

    def _produce(self, i: int) -> Optional[int]:
        return next(self._it, None)


class GeneratorStream(IntStream):
    """Lazy realisation of a GeneratorSpec."""

    def __init__(self, spec: GeneratorSpec):
        super().__init__()
        self.spec = spec

    def _produce(self, i: int) -> Optional[int]:
        return self.spec.element(i)

    def __repr__(self) -> str:
        return f"GeneratorStream({self.spec})"


class PartialSumStream(IntStream):
    """B = {m_1, m_1 + m_2, m_1 + m_2 + m_3, ...}."""

    def __init__(self, source: IntStream):
        super().__init__()
        self.source = source

    def _produce(self, i: int) -> Optional[int]:
        m = self.source.element(i)
        if m is None:
            return None
        previous = self._memo[i - 1] if i > 0 else 0
        return checked_add(previous, m)


class BoundedStream(IntStream):
    """
    View that ends where the inner stream would exceed `ceiling` or overflow.

    `truncated` records that the end came from the ceiling rather than from
    the inner stream running out.
    """

    def __init__(self, inner: IntStream, ceiling: int = U64_MAX):
        super().__init__()
        self.inner = inner
        self.ceiling = ceiling
        self.truncated = False

    def _produce(self, i: int) -> Optional[int]:
        try:
            value = self.inner.element(i)
        except ArithmeticOverflow:
            self.truncated = True
            return None
        if value is not None and value > self.ceiling:
            self.truncated = True
            return None
        return value


StreamLike = Union[IntStream, GeneratorSpec, str, Sequence[int]]


def stream_from_spec(spec: Union[GeneratorSpec, str]) -> GeneratorStream:
    """Fresh stream for a spec (or mini-language text)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    return GeneratorStream(spec)


def as_stream(source: StreamLike) -> IntStream:
    if isinstance(source, IntStream):
        return source
    if isinstance(source, (GeneratorSpec, str)):
        return stream_from_spec(source)
    if isinstance(source, Sequence):
        return ListStream(source)
    return IterStream(source)


@dataclass(frozen=True)
class BlockWitness:
    """value = m_{lo+1} + ... + m_hi (1-based indices, lo < hi)."""

    lo: int
    hi: int
    value: int

    def verify(self, stream: StreamLike) -> bool:
        s = as_stream(stream)
        if not 0 <= self.lo < self.hi:
            return False
        total = 0
        for i in range(self.lo, self.hi):
            m = s.element(i)
            if m is None:
                return False
            total += m
        return total == self.value


@dataclass(frozen=True)
class FsMembership:
    """Outcome of an FS membership query; subset is ascending when contained."""

    value: int
    contained: bool
    subset: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.contained


def fs_enumerate(stream: StreamLike, bound: int) -> tuple[int, ...]:
    """FS(M) ∩ [1, bound], ascending."""
    if bound < 1:
        raise ConfigInvalid(f"FS bound must be >= 1, got {bound}")
    elems = as_stream(stream).prefix_up_to(bound)
    if bound <= DP_TABLE_LIMIT:
        reach = np.zeros(bound + 1, dtype=bool)
        reach[0] = True
        for m in elems:
            # rhs is evaluated on the old table, so each element is used at most once
            reach[m:] = reach[m:] | reach[: bound + 1 - m]
        return tuple(np.flatnonzero(reach)[1:].tolist())

    sums: set[int] = set()
    for m in elems:
        sums |= {s + m for s in sums if s + m <= bound}
        sums.add(m)
    return tuple(sorted(sums))


def _subset_sum_dfs(elems: list[int], target: int) -> Optional[tuple[int, ...]]:
    """Exact subset sum for large targets: largest-first DFS with suffix-sum pruning."""
    desc = sorted(elems, reverse=True)
    remaining = [0] * (len(desc) + 1)
    for i in range(len(desc) - 1, -1, -1):
        remaining[i] = remaining[i + 1] + desc[i]
    failed: set[tuple[int, int]] = set()
    chosen: list[int] = []

    def go(i: int, t: int) -> bool:
        if t == 0:
            return True
        if i == len(desc) or remaining[i] < t or (i, t) in failed:
            return False
        if desc[i] <= t:
            chosen.append(desc[i])
            if go(i + 1, t - desc[i]):
                return True
            chosen.pop()
        if go(i + 1, t):
            return True
        failed.add((i, t))
        return False

    return tuple(sorted(chosen)) if go(0, target) else None


def fs_contains(x: int, stream: StreamLike) -> FsMembership:
    """Exact subset-sum membership of x in FS(M), with one witnessing subset."""
    if x < 1:
        return FsMembership(x, False)
    elems = as_stream(stream).prefix_up_to(x)
    if x > DP_TABLE_LIMIT:
        subset = _subset_sum_dfs(elems, x)
        return FsMembership(x, subset is not None, subset)

    reach = np.zeros(x + 1, dtype=bool)
    reach[0] = True
    via = np.full(x + 1, -1, dtype=np.int64)
    for idx, m in enumerate(elems):
        newly = np.flatnonzero(reach[: x + 1 - m] & ~reach[m:]) + m
        reach[newly] = True
        via[newly] = idx
        if reach[x]:
            break
    if not reach[x]:
        return FsMembership(x, False)

    # via[s] was set from a sum reached with strictly earlier elements, so indices strictly decrease
    subset = []
    s = x
    while s > 0:
        m = elems[int(via[s])]
        subset.append(m)
        s -= m
    return FsMembership(x, True, tuple(sorted(subset)))


def partial_sums(stream: StreamLike) -> PartialSumStream:
    """Lazy B: element l is m_1 + ... + m_{l+1}. Overflow is raised, never wrapped."""
    return PartialSumStream(as_stream(stream))


def block_witness(stream: StreamLike, target: int) -> Optional[BlockWitness]:
    """
    The consecutive block m_{lo+1} + ... + m_hi equal to target with minimal hi.

    Two-pointer scan: elements are positive and increasing, so for a fixed hi
    the window sum is strictly decreasing in lo and at most one lo matches.
    """
    if target < 1:
        return None
    s = as_stream(stream)
    lo = hi = total = 0
    while True:
        try:
            m = s.element(hi)
        except ArithmeticOverflow:
            return None
        if m is None or m > target:
            return None
        hi += 1
        total += m
        while total > target:
            total -= s.element(lo)
            lo += 1
        if total == target:
            return BlockWitness(lo=lo, hi=hi, value=target)


def fs_intersection(stream: StreamLike, members: Iterable[int]) -> tuple[int, ...]:
    """FS(M) ∩ members, ascending."""
    wanted = sorted(set(int(m) for m in members if m >= 1))
    if not wanted:
        return ()
    fs = set(fs_enumerate(stream, wanted[-1]))
    return tuple(m for m in wanted if m in fs)
