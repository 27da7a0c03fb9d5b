"""Unit tests for generator specs, streams, FS sets and block witnesses."""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from polignac_core.exceptions import ArithmeticOverflow, SpecInvalid
from polignac_core.ipset import (
    BlockWitness,
    GeneratorKind,
    GeneratorSpec,
    ListStream,
    block_witness,
    fs_contains,
    fs_enumerate,
    fs_intersection,
    parse_spec,
    partial_sums,
    stream_from_spec,
)


def _brute_fs(values, bound):
    sums = set()
    for r in range(1, len(values) + 1):
        for combo in combinations(values, r):
            s = sum(combo)
            if s <= bound:
                sums.add(s)
    return tuple(sorted(sums))


ascending_lists = st.lists(st.integers(1, 2_000), min_size=1, max_size=12, unique=True).map(sorted)


def test_parse_spec_forms():
    assert parse_spec("list:4,6,10") == GeneratorSpec.explicit([4, 6, 10])
    assert parse_spec("geom:2,2") == GeneratorSpec.geometric(2, 2)
    assert parse_spec("digits").kind is GeneratorKind.DIGITS
    assert parse_spec("rough:5").primorial == 30
    assert parse_spec("list:1..5").values == (1, 2, 3, 4, 5)


@pytest.mark.parametrize("text", ["list:4,6,10", "geom:3,5", "digits", "rough:7"])
def test_spec_renders_back(text):
    assert str(parse_spec(text)) == text


@pytest.mark.parametrize(
    "text, token",
    [
        ("list:4,x", "x"),
        ("list:6,4", "4"),
        ("list:0,2", "0"),
        ("geom:1,2", "1"),
        ("cubes:3", "cubes"),
    ],
)
def test_parse_spec_names_offending_token(text, token):
    with pytest.raises(SpecInvalid) as exc:
        parse_spec(text)
    assert exc.value.token == token


def test_generator_elements():
    assert stream_from_spec("geom:2,2").take(5) == [2, 4, 8, 16, 32]
    assert stream_from_spec("digits").take(4) == [2, 20, 200, 2000]
    assert stream_from_spec("rough:3").take(3) == [12, 24, 48]
    assert stream_from_spec("list:4,6").take(5) == [4, 6]


def test_stream_cursor_and_restart():
    s = stream_from_spec("geom:2,2")
    assert [next(s), next(s)] == [2, 4]
    assert s.position == 2
    s.restart()
    assert next(s) == 2
    assert s.element(10) == 2048


def test_finite_stream_exhausts():
    s = ListStream([4, 6])
    assert list(s) == [4, 6]
    assert s.element(2) is None


def test_fs_enumerate_digits():
    assert fs_enumerate("digits", 250) == (2, 20, 22, 200, 202, 220, 222)


def test_fs_enumerate_digits_are_zero_two_numerals():
    expected = tuple(n for n in range(1, 100_001) if set(str(n)) <= {"0", "2"})
    assert len(expected) == 31
    assert fs_enumerate("digits", 100_000) == expected


def test_fs_enumerate_powers_of_two_are_all_evens():
    assert fs_enumerate("geom:2,2", 64) == tuple(range(2, 65, 2))


@settings(max_examples=50, deadline=None)
@given(values=ascending_lists, bound=st.integers(1, 10_000))
def test_fs_enumerate_matches_subset_oracle(values, bound):
    assert fs_enumerate(values, bound) == _brute_fs(values, bound)


@settings(max_examples=50, deadline=None)
@given(values=ascending_lists, x=st.integers(1, 5_000))
def test_fs_contains_certificate(values, x):
    result = fs_contains(x, values)
    assert result.contained == (x in _brute_fs(values, x))
    if result:
        assert sum(result.subset) == x
        assert len(set(result.subset)) == len(result.subset)
        assert set(result.subset) <= set(values)


def test_fs_contains_small_cases():
    assert fs_contains(10, [4, 6]).subset == (4, 6)
    assert not fs_contains(8, [4, 6])
    assert not fs_contains(0, [4, 6])


def test_partial_sums():
    assert partial_sums("geom:2,2").take(4) == [2, 6, 14, 30]
    assert partial_sums([4, 6]).take(5) == [4, 10]


def test_partial_sums_overflow_is_raised():
    b = partial_sums("geom:2,2")
    assert b.element(62) == 2**64 - 2
    with pytest.raises(ArithmeticOverflow):
        b.element(63)


def test_bounded_view_stops_at_u64():
    b = partial_sums("geom:2,2").bounded()
    assert len(b.take(100)) == 63
    assert b.truncated


def test_block_witness_recovers_partial_sum_differences():
    sums = [0] + partial_sums("geom:2,2").take(12)
    for i in range(1, 12):
        for j in range(i + 1, 13):
            w = block_witness("geom:2,2", sums[j] - sums[i])
            assert w == BlockWitness(lo=i, hi=j, value=sums[j] - sums[i])
            assert w.verify("geom:2,2")


def test_block_witness_absent():
    assert block_witness("geom:2,2", 10) is None
    assert block_witness([4, 6], 5) is None
    assert block_witness([4, 6], 0) is None


def test_block_witness_on_digits():
    assert block_witness("digits", 220) == BlockWitness(lo=1, hi=3, value=220)
    assert block_witness("digits", 202) is None


def test_fs_intersection():
    assert fs_intersection("digits", [2, 4, 20, 22, 30]) == (2, 20, 22)
    assert fs_intersection([4, 6], []) == ()
