"""Checked integer arithmetic. Python ints never wrap, so the 64-bit contract is enforced here."""

from math import comb

from polignac_core.exceptions import ArithmeticOverflow

U64_MAX = (1 << 64) - 1
I64_MAX = (1 << 63) - 1


def checked_add(a: int, b: int, limit: int = U64_MAX) -> int:
    """a + b, raising ArithmeticOverflow above limit."""
    result = a + b
    if result > limit:
        raise ArithmeticOverflow(f"{a} + {b} exceeds {limit}")
    return result


def checked_mul(a: int, b: int, limit: int = U64_MAX) -> int:
    """a * b, raising ArithmeticOverflow above limit."""
    result = a * b
    if result > limit:
        raise ArithmeticOverflow(f"{a} * {b} exceeds {limit}")
    return result


def saturating_binomial(n: int, k: int, limit: int = I64_MAX) -> tuple[int, bool]:
    """C(n, k) clamped to limit. Returns (value, saturated)."""
    value = comb(n, k)
    if value > limit:
        return limit, True
    return value, False
