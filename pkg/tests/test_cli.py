"""CLI tests: output formats, exit codes and determinism."""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

import json
import logging

import pytest
from click.testing import CliRunner

from polignac_core.cli import cli
from polignac_core.config import reset_settings


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in (
        "POLIGNAC_CACHE_DIR",
        "POLIGNAC_THREADS",
        "POLIGNAC_SEGMENT_SIZE",
        "POLIGNAC_LIMIT",
        "POLIGNAC_THRESHOLD",
        "POLIGNAC_K2",
        "LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def runner():
    return CliRunner()


SEARCH_ARGS = [
    "pipeline", "--set", "geom:2,2", "--k", "3", "--limit", "1000000",
    "--threshold", "100", "--mode", "search", "--search-bound", "64",
]


def test_census_csv(runner):
    result = runner.invoke(cli, ["census", "--limit", "12", "--format", "csv"])
    assert result.exit_code == 0
    assert result.output == "gap,count,first_index,first_prime\n1,1,1,2\n2,2,2,3\n4,1,4,7\n"


def test_census_json(runner):
    result = runner.invoke(cli, ["census", "--limit", "12", "--format", "json"])
    data = json.loads(result.output)
    assert data["prime_count"] == 5
    assert [row["gap"] for row in data["gaps"]] == [1, 2, 4]


def test_census_below_minimum_is_usage_error(runner):
    result = runner.invoke(cli, ["census", "--limit", "2"])
    assert result.exit_code == 2


def test_census_cache_reuse(runner, tmp_path, caplog):
    cache = str(tmp_path / "c.csv")
    args = ["--verbose", "census", "--limit", "12", "--cache", cache, "--format", "csv"]
    caplog.set_level(logging.INFO)
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0 and second.exit_code == 0
    assert first.output == second.output
    assert "Cache hit" in caplog.text
    with open(cache) as f:
        assert f.readline() == "polignac-census,v1,limit=12\n"


def test_census_cache_version_mismatch(runner, tmp_path):
    cache = tmp_path / "c.csv"
    cache.write_text("polignac-census,v9,limit=12\n")
    result = runner.invoke(cli, ["census", "--limit", "12", "--cache", str(cache)])
    assert result.exit_code == 3


def test_census_default_cache_dir(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("POLIGNAC_CACHE_DIR", str(tmp_path))
    reset_settings()
    result = runner.invoke(cli, ["census", "--limit", "50", "--format", "csv"])
    assert result.exit_code == 0
    assert (tmp_path / "census-50.csv").exists()


def test_census_threads_do_not_change_output(runner):
    single = runner.invoke(cli, ["--threads", "1", "census", "--limit", "100000", "--format", "csv"])
    pooled = runner.invoke(cli, ["--threads", "4", "--segment-size", "4096", "census", "--limit", "100000", "--format", "csv"])
    assert single.output == pooled.output


def test_pol_listing(runner):
    result = runner.invoke(cli, ["pol", "--limit", "12", "--threshold", "1", "--format", "csv"])
    assert result.output == "gap,count\n2,2\n4,1\n"
    empty = runner.invoke(cli, ["pol", "--limit", "12", "--threshold", "3", "--format", "csv"])
    assert empty.exit_code == 0
    assert empty.output == "gap,count\n"
    bad = runner.invoke(cli, ["pol", "--limit", "12", "--threshold", "0"])
    assert bad.exit_code == 2


def test_admissible_check(runner):
    assert runner.invoke(cli, ["admissible", "check", "0,2,4"]).output == "inadmissible: p=3\n"
    assert runner.invoke(cli, ["admissible", "check", "0,2,6"]).output == "admissible\n"
    assert runner.invoke(cli, ["admissible", "check", "0,x"]).exit_code == 2


def test_admissible_construct(runner):
    result = runner.invoke(cli, ["admissible", "construct", "--set", "list:1..200", "--count", "3", "--format", "json"])
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["tuple"] == [2, 6, 30]
    assert [c["residue"] for c in data["choices"]] == [0, 0, 0]


def test_admissible_construct_exhausted(runner):
    result = runner.invoke(cli, ["admissible", "construct", "--set", "list:1,3", "--count", "3"])
    assert result.exit_code == 4


def test_fs_enumerate(runner):
    result = runner.invoke(cli, ["fs", "enumerate", "--set", "digits", "--bound", "250"])
    assert result.output == "2,20,22,200,202,220,222\n"


def test_fs_bad_spec(runner):
    result = runner.invoke(cli, ["fs", "enumerate", "--set", "cubes:3", "--bound", "10"])
    assert result.exit_code == 2


def test_fs_block_and_contains(runner):
    block = runner.invoke(cli, ["fs", "block", "--set", "geom:2,2", "12"])
    assert block.output == "lo=1 hi=3\n"
    contains = runner.invoke(cli, ["fs", "contains", "--set", "list:4,6,10", "20", "--format", "json"])
    assert json.loads(contains.output)["subset"] == [4, 6, 10]


def test_ramsey_verify(runner):
    five = runner.invoke(cli, ["ramsey", "verify", "3", "3", "5"])
    assert five.exit_code == 0
    assert five.output.splitlines()[0] == "false"
    six = runner.invoke(cli, ["ramsey", "verify", "3", "3", "6"])
    assert six.output.splitlines()[0] == "true"
    assert runner.invoke(cli, ["ramsey", "verify", "3", "3", "7"]).exit_code == 2


def test_ramsey_bound(runner):
    assert runner.invoke(cli, ["ramsey", "bound", "3", "3"]).output.startswith("6")


def test_pipeline_search_witness(runner):
    result = runner.invoke(cli, SEARCH_ARGS)
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["outcome"] == "witness"
    assert data["witness"]["a"] == [2, 4, 8]
    assert sorted(data["witness"]["block_sums"]) == [2, 4, 6, 8, 12, 14]
    assert all(c is not None for c in data["witness"]["certificates"])


def test_pipeline_output_is_deterministic(runner):
    first = runner.invoke(cli, SEARCH_ARGS)
    second = runner.invoke(cli, ["--threads", "4"] + SEARCH_ARGS)
    assert first.output == second.output
    assert json.dumps(json.loads(first.output), sort_keys=True, indent=2, ensure_ascii=False) + "\n" == first.output


def test_pipeline_digits(runner):
    result = runner.invoke(
        cli, ["pipeline", "--set", "digits", "--k", "1", "--limit", "1000000", "--threshold", "1"]
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["witness"]["a"] == [2]


def test_pipeline_faithful_failure(runner):
    result = runner.invoke(
        cli,
        ["pipeline", "--mode", "faithful", "--set", "geom:2,2", "--k", "2", "--limit", "1000000", "--k2", "3"],
    )
    assert result.exit_code == 5
    data = json.loads(result.output)
    assert data["outcome"] == "failure"
    assert data["witness"] is None
    assert data["diagnostics"]["failure"]["stage"] == 6


def test_pipeline_faithful_needs_k2(runner):
    result = runner.invoke(cli, ["pipeline", "--mode", "faithful", "--set", "geom:2,2", "--k", "1", "--limit", "1000"])
    assert result.exit_code == 2


def test_pipeline_odd_generators_rejected(runner):
    result = runner.invoke(cli, ["pipeline", "--set", "list:3,5", "--k", "1", "--limit", "1000"])
    assert result.exit_code == 2


def test_demo_corollary3(runner):
    result = runner.invoke(cli, ["demo", "corollary3", "--limit", "1000000", "--threshold", "1", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "value,count"
    assert lines[1].startswith("2,")


def test_demo_bounds(runner):
    result = runner.invoke(cli, ["demo", "bounds", "--limit", "100000", "--threshold", "100", "--format", "json"])
    rows = json.loads(result.output)
    assert {row["result"] for row in rows} == {"zhang", "polymath8a", "maynard", "polymath8b"}
    assert all(row["nonempty"] for row in rows)


def test_unknown_command_is_usage_error(runner):
    assert runner.invoke(cli, ["frobnicate"]).exit_code == 2
