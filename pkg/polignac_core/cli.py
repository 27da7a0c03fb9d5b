"""
Command-line interface for the polignac toolkit.

Usage:
    polignac census --limit 1000000 --format csv
    polignac pol --limit 1000000 --threshold 100
    polignac admissible check 0,2,6
    polignac admissible construct --set list:1..200 --count 3
    polignac fs enumerate --set digits --bound 250
    polignac ramsey verify 3 3 6
    polignac pipeline --set geom:2,2 --k 3 --mode search --search-bound 64
    polignac demo corollary3 --limit 1000000 --threshold 1

csv and json output is byte-stable; the table format is for reading only.
Logs go to stderr. Exit codes: 0 ok, 2 usage, 3 cache, 4 exhausted source,
5 failure outcome or unexpected error.
"""

from __future__ import annotations

import functools
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click
import pandas as pd

from polignac_core.admissible import (
    construct_admissible,
    count_prime_translates,
    is_admissible,
)
from polignac_core.cache import cached_census, render_census_csv
from polignac_core.config import Settings, get_settings
from polignac_core.demos import bounds, corollary1_check, corollary2, corollary3, theorem1
from polignac_core.exceptions import ConfigInvalid, PolignacError, SourceExhausted, exit_code_for
from polignac_core.ipset import (
    block_witness,
    fs_contains,
    fs_enumerate,
    parse_spec,
    partial_sums,
    stream_from_spec,
)
from polignac_core.pipeline import PipelineConfig, PipelineMode, run_pipeline
from polignac_core.primes import EmpiricalPol, GapCensus, empirical_pol
from polignac_core.ramsey import (
    ColoredGraph,
    RamseyQuery,
    color_graph,
    ramsey_bound,
    verify_ramsey_exhaustive,
)

__all__ = ["cli"]

logger = logging.getLogger("cli")

FORMATS = click.Choice(["table", "csv", "json"])


def format_json(obj: Any) -> str:
    """One document, sorted keys, single trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def format_frame(frame: pd.DataFrame, fmt: str) -> str:
    if fmt == "csv":
        return frame.to_csv(index=False, lineterminator="\n")
    if fmt == "json":
        return format_json(frame.to_dict(orient="records"))
    if frame.empty:
        return "(empty)\n"
    return frame.to_string(index=False) + "\n"


def parse_int_list(text: str) -> list[int]:
    """'0,2,6' -> [0, 2, 6]. Raises click.BadParameter on junk."""
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated integer list, got {text!r}") from None


def handle_errors(func: Callable) -> Callable:
    """Map toolkit exceptions to their exit codes; anything else is logged and exits 5."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except PolignacError as e:
            click.echo(e.describe(), err=True)
            sys.exit(exit_code_for(e))
        except (click.ClickException, click.exceptions.Exit, SystemExit):
            raise
        except Exception as e:
            logger.exception("Unexpected error: %s", e)
            click.echo(f"❌ Unexpected error: {type(e).__name__}: {e}", err=True)
            sys.exit(5)

    return wrapper


def _settings() -> Settings:
    ctx = click.get_current_context()
    obj = ctx.find_object(Settings)
    return obj if obj is not None else get_settings()


def load_census(limit: int, cache: Optional[str]) -> GapCensus:
    settings = _settings()
    path = Path(cache) if cache else settings.census_cache_path(limit)
    return cached_census(
        limit,
        path=path,
        segment_size=settings.sieve.segment_size,
        threads=settings.sieve.threads,
    )


def load_pol(limit: int, threshold: int, cache: Optional[str]) -> EmpiricalPol:
    return empirical_pol(load_census(limit, cache), threshold)


def limit_option(func):
    return click.option(
        "--limit",
        type=int,
        default=None,
        help="Sieve limit (default POLIGNAC_LIMIT or 1000000)",
    )(func)


def threshold_option(func):
    return click.option(
        "--threshold",
        type=int,
        default=None,
        help="Minimum gap multiplicity (default POLIGNAC_THRESHOLD or 100)",
    )(func)


def cache_option(func):
    return click.option(
        "--cache",
        type=click.Path(dir_okay=False),
        default=None,
        help="Census cache file (default POLIGNAC_CACHE_DIR/census-<limit>.csv)",
    )(func)


def format_option(default: str = "table"):
    return click.option("--format", "fmt", type=FORMATS, default=default, show_default=True)


def _limit(limit: Optional[int]) -> int:
    return limit if limit is not None else _settings().pol.limit


def _threshold(threshold: Optional[int]) -> int:
    return threshold if threshold is not None else _settings().pol.threshold


@click.group()
@click.version_option(version="0.1.0", prog_name="polignac")
@click.option("--threads", type=click.IntRange(1, 64), default=None, help="Sieve worker threads")
@click.option("--segment-size", type=int, default=None, help="Sieve segment size")
@click.option("--verbose", "-v", is_flag=True, help="Log INFO and DEBUG to stderr")
@click.pass_context
def cli(ctx: click.Context, threads: Optional[int], segment_size: Optional[int], verbose: bool):
    """
    IP sets, prime gaps and the empirical de Polignac set.

    Examples:

        polignac census --limit 100000 --format csv

        polignac pipeline --set geom:2,2 --k 3 --search-bound 64
    """
    settings = get_settings().with_sieve(segment_size=segment_size, threads=threads)
    ctx.obj = settings
    if verbose:
        level = logging.DEBUG
    elif os.getenv("LOG_LEVEL"):
        level = getattr(logging, settings.log_level, logging.WARNING)
    else:
        level = logging.WARNING
    logging.getLogger().setLevel(level)


# ---------------------------------------------------------------------------
# census / pol
# ---------------------------------------------------------------------------


@cli.command()
@limit_option
@cache_option
@format_option()
@handle_errors
def census(limit: Optional[int], cache: Optional[str], fmt: str):
    """Consecutive prime gap census up to LIMIT."""
    result = load_census(_limit(limit), cache)
    if fmt == "csv":
        click.echo(render_census_csv(result), nl=False)
    elif fmt == "json":
        click.echo(
            format_json(
                {
                    "limit": result.limit.limit,
                    "prime_count": result.prime_count,
                    "gaps": result.to_frame().to_dict(orient="records"),
                }
            ),
            nl=False,
        )
    else:
        click.echo(f"limit={result.limit.limit} primes={result.prime_count} max_gap={result.max_gap}")
        click.echo(format_frame(result.to_frame(), fmt), nl=False)


@cli.command()
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def pol(limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str):
    """Empirical de Polignac set: even gaps seen at least THRESHOLD times."""
    result = load_pol(_limit(limit), _threshold(threshold), cache)
    if fmt == "json":
        click.echo(
            format_json({"ref": result.ref, "members": result.to_frame().to_dict(orient="records")}),
            nl=False,
        )
    else:
        click.echo(format_frame(result.to_frame(), fmt), nl=False)


# ---------------------------------------------------------------------------
# admissible
# ---------------------------------------------------------------------------


@cli.group()
def admissible():
    """Admissible tuples."""


@admissible.command("check")
@click.argument("elements")
@format_option()
@handle_errors
def admissible_check(elements: str, fmt: str):
    """Is the comma-separated tuple ELEMENTS admissible?"""
    values = parse_int_list(elements)
    verdict = is_admissible(values)
    if fmt == "json":
        click.echo(
            format_json(
                {"tuple": values, "admissible": verdict.admissible, "violating_prime": verdict.violating_prime}
            ),
            nl=False,
        )
    elif verdict:
        click.echo("admissible")
    else:
        click.echo(f"inadmissible: p={verdict.violating_prime}")


@admissible.command("construct")
@click.option("--set", "spec", required=True, help="Source set, e.g. list:1..200 or geom:2,2")
@click.option("--count", type=int, required=True, help="Tuple length k")
@click.option("--window", type=int, default=None, help="Lookahead window W")
@click.option("--budget", type=int, default=None, help="Max source elements pulled")
@click.option("--partial-sums", "use_partial_sums", is_flag=True, help="Run on the partial sums of the set")
@format_option()
@handle_errors
def admissible_construct(
    spec: str, count: int, window: Optional[int], budget: Optional[int], use_partial_sums: bool, fmt: str
):
    """Greedy residue-class construction of an admissible subsequence."""
    settings = _settings()
    stream = stream_from_spec(parse_spec(spec))
    source = partial_sums(stream).bounded() if use_partial_sums else stream.bounded()
    try:
        seq = construct_admissible(
            source,
            count,
            window if window is not None else max(settings.construction.window, 2 * count),
            budget if budget is not None else settings.construction.budget,
        )
    except SourceExhausted as e:
        if e.partial is not None:
            click.echo(f"partial: {','.join(str(b) for b in e.partial.elements)}", err=True)
        raise
    if fmt == "json":
        click.echo(
            format_json(
                {
                    "tuple": list(seq.elements),
                    "choices": [
                        {"prime": c.prime, "residue": c.residue, "survivors": c.survivors} for c in seq.choices
                    ],
                }
            ),
            nl=False,
        )
        return
    frame = pd.DataFrame(
        {
            "prime": [c.prime for c in seq.choices],
            "residue": [c.residue for c in seq.choices],
            "survivors": [c.survivors for c in seq.choices],
            "b": list(seq.elements),
        },
        dtype="int64",
    )
    if fmt == "table":
        click.echo("(" + ", ".join(str(b) for b in seq.elements) + ")")
    click.echo(format_frame(frame, fmt), nl=False)


@admissible.command("translates")
@click.argument("elements")
@limit_option
@click.option("--at-least", type=int, default=2, show_default=True)
@format_option()
@handle_errors
def admissible_translates(elements: str, limit: Optional[int], at_least: int, fmt: str):
    """Count translates n + H (n <= LIMIT) holding several primes."""
    t = parse_int_list(elements)
    result = count_prime_translates(t, _limit(limit), at_least)
    data = {
        "tuple": t,
        "limit": result.limit,
        "at_least": result.at_least,
        "with_enough_primes": result.with_enough_primes,
        "with_consecutive_pair": result.with_consecutive_pair,
    }
    if fmt == "json":
        click.echo(format_json(data), nl=False)
    elif fmt == "csv":
        row = dict(data, tuple=" ".join(str(h) for h in t))
        click.echo(format_frame(pd.DataFrame([row]), fmt), nl=False)
    else:
        for key, value in data.items():
            click.echo(f"{key}: {value}")


# ---------------------------------------------------------------------------
# fs
# ---------------------------------------------------------------------------


@cli.group()
def fs():
    """Finite-sums sets FS(M)."""


@fs.command("enumerate")
@click.option("--set", "spec", required=True)
@click.option("--bound", type=int, required=True)
@format_option("csv")
@handle_errors
def fs_enumerate_cmd(spec: str, bound: int, fmt: str):
    """FS(M) ∩ [1, BOUND]."""
    values = fs_enumerate(parse_spec(spec), bound)
    if fmt == "json":
        click.echo(format_json(list(values)), nl=False)
    elif fmt == "csv":
        click.echo(",".join(str(v) for v in values))
    else:
        click.echo(format_frame(pd.DataFrame({"value": list(values)}, dtype="int64"), fmt), nl=False)


@fs.command("contains")
@click.option("--set", "spec", required=True)
@click.argument("value", type=int)
@format_option()
@handle_errors
def fs_contains_cmd(spec: str, value: int, fmt: str):
    """Is VALUE a finite sum of distinct elements of M?"""
    result = fs_contains(value, parse_spec(spec))
    subset = list(result.subset) if result.subset else None
    if fmt == "json":
        click.echo(format_json({"value": value, "contained": result.contained, "subset": subset}), nl=False)
    elif result:
        click.echo(f"true: {' + '.join(str(m) for m in subset)}")
    else:
        click.echo("false")


@fs.command("partial")
@click.option("--set", "spec", required=True)
@click.option("--count", type=int, default=10, show_default=True)
@format_option("csv")
@handle_errors
def fs_partial_cmd(spec: str, count: int, fmt: str):
    """First COUNT partial sums m_1 + ... + m_l (stops short of 2**64)."""
    values = partial_sums(stream_from_spec(parse_spec(spec))).bounded().take(count)
    if fmt == "json":
        click.echo(format_json(values), nl=False)
    elif fmt == "csv":
        click.echo(",".join(str(v) for v in values))
    else:
        click.echo(format_frame(pd.DataFrame({"l": range(1, len(values) + 1), "sum": values}), fmt), nl=False)


@fs.command("block")
@click.option("--set", "spec", required=True)
@click.argument("target", type=int)
@format_option()
@handle_errors
def fs_block_cmd(spec: str, target: int, fmt: str):
    """Consecutive block m_{lo+1} + ... + m_hi equal to TARGET, if any."""
    witness = block_witness(parse_spec(spec), target)
    if fmt == "json":
        data = {"value": target, "lo": witness.lo, "hi": witness.hi} if witness else {"value": target, "lo": None, "hi": None}
        click.echo(format_json(data), nl=False)
    elif witness:
        click.echo(f"lo={witness.lo} hi={witness.hi}")
    else:
        click.echo("none")


# ---------------------------------------------------------------------------
# ramsey
# ---------------------------------------------------------------------------


def _graph_dict(g: ColoredGraph) -> dict:
    return {
        "n": g.n,
        "vertices": list(g.vertices),
        "blue_edges": [list(e) for e in sorted(g.blue_edges)],
        "pol_ref": g.pol_ref,
    }


@cli.group()
def ramsey():
    """Ramsey numbers and de Polignac colorings."""


@ramsey.command("verify")
@click.argument("r", type=int)
@click.argument("s", type=int)
@click.argument("n", type=int)
@format_option()
@handle_errors
def ramsey_verify(r: int, s: int, n: int, fmt: str):
    """Exhaustively check that every 2-coloring of K_N has a blue K_R or a red K_S."""
    verdict = verify_ramsey_exhaustive(r, s, n)
    if fmt == "json":
        click.echo(
            format_json(
                {
                    "r": r,
                    "s": s,
                    "n": n,
                    "holds": verdict.holds,
                    "colorings_checked": verdict.colorings_checked,
                    "counterexample": _graph_dict(verdict.counterexample) if verdict.counterexample else None,
                }
            ),
            nl=False,
        )
        return
    click.echo("true" if verdict.holds else "false")
    if verdict.counterexample is not None:
        edges = " ".join(f"{i}-{j}" for i, j in sorted(verdict.counterexample.blue_edges))
        click.echo(f"counterexample blue edges: {edges or '(none)'}")


@ramsey.command("bound")
@click.argument("r", type=int)
@click.argument("s", type=int)
@format_option()
@handle_errors
def ramsey_bound_cmd(r: int, s: int, fmt: str):
    """R(r, s) when tabulated, else the binomial upper bound."""
    result = ramsey_bound(RamseyQuery(r, s))
    if fmt == "json":
        click.echo(
            format_json({"r": r, "s": s, "value": result.value, "exact": result.exact, "saturated": result.saturated}),
            nl=False,
        )
    else:
        click.echo(str(result.value))
        if not result.exact:
            click.echo("upper bound" + (" (saturated)" if result.saturated else ""), err=True)


@ramsey.command("color")
@click.argument("vertices")
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def ramsey_color(vertices: str, limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str):
    """Color K_N on ascending VERTICES: blue iff the difference is empirically de Polignac."""
    pol_set = load_pol(_limit(limit), _threshold(threshold), cache)
    graph = color_graph(parse_int_list(vertices), pol_set)
    if fmt == "json":
        data = _graph_dict(graph)
        data["red_edges"] = [list(e) for e in sorted(graph.red_edges)]
        click.echo(format_json(data), nl=False)
        return
    frame = pd.DataFrame(
        [
            {"i": i, "j": j, "difference": graph.vertices[j - 1] - graph.vertices[i - 1], "color": graph.color(i, j).value}
            for i in range(1, graph.n + 1)
            for j in range(i + 1, graph.n + 1)
        ]
    )
    click.echo(format_frame(frame, fmt), nl=False)


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


@cli.command()
@click.option("--set", "spec", required=True, help="IP-set generators, e.g. geom:2,2")
@click.option("--k", type=int, required=True, help="Witness length")
@limit_option
@threshold_option
@click.option("--mode", type=click.Choice([m.value for m in PipelineMode]), default="search", show_default=True)
@click.option("--ratio", type=float, default=None, help="Lacunary ratio (faithful)")
@click.option("--window", type=int, default=None, help="Admissible lookahead window (faithful)")
@click.option("--budget", type=int, default=None, help="Admissible pull budget (faithful)")
@click.option("--k2", type=int, default=None, help="Red clique size (faithful; default POLIGNAC_K2)")
@click.option("--search-bound", type=int, default=None, help="Largest a_n tried (search)")
@cache_option
@handle_errors
def pipeline(
    spec: str,
    k: int,
    limit: Optional[int],
    threshold: Optional[int],
    mode: str,
    ratio: Optional[float],
    window: Optional[int],
    budget: Optional[int],
    k2: Optional[int],
    search_bound: Optional[int],
    cache: Optional[str],
):
    """Find a_1..a_k whose block sums are distinct empirical de Polignac numbers in FS(M)."""
    settings = _settings()
    construction = settings.construction
    cfg = PipelineConfig(
        spec=parse_spec(spec),
        k=k,
        limit=_limit(limit),
        threshold=_threshold(threshold),
        mode=PipelineMode(mode),
        ratio=ratio if ratio is not None else construction.ratio,
        window=window if window is not None else construction.window,
        budget=budget if budget is not None else construction.budget,
        k2=k2 if k2 is not None else settings.k2,
        search_bound=search_bound if search_bound is not None else settings.search.search_bound,
        max_vertices=construction.max_vertices,
        max_nodes=settings.search.max_nodes,
    )
    if cfg.k < 1:
        raise ConfigInvalid(f"k must be >= 1, got {cfg.k}")
    report = run_pipeline(cfg, load_census(cfg.limit, cache))
    click.echo(report.to_json(), nl=False)
    if report.witness is None:
        sys.exit(5)


# ---------------------------------------------------------------------------
# demos
# ---------------------------------------------------------------------------


@cli.group()
def demo():
    """Desk-scale shadows of the IP-set / prime-gap statements."""


@demo.command("theorem1")
@click.option("--set", "spec", required=True)
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def demo_theorem1(spec: str, limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str):
    """FS(M) ∩ EmpiricalPol for an even IP set."""
    pol_set = load_pol(_limit(limit), _threshold(threshold), cache)
    result = theorem1(parse_spec(spec), pol_set)
    click.echo(format_frame(result.to_frame(pol_set), fmt), nl=False)


@demo.command("corollary1")
@click.option("--set", "spec", required=True)
@click.option("--s", "shift", type=int, required=True, help="Shift s (should be squarefree)")
@click.option("--bound", type=int, required=True)
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def demo_corollary1(
    spec: str, shift: int, bound: int, limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str
):
    """Check FS(M) ∩ [1, BOUND] lies in (squarefree numbers) - s."""
    pol_set = load_pol(_limit(limit), _threshold(threshold), cache)
    result = corollary1_check(parse_spec(spec), shift, bound, pol_set)
    data = {
        "s": result.s,
        "s_squarefree": result.s_squarefree,
        "checked": result.checked,
        "holds": result.holds,
        "violations": list(result.violations),
        "in_pol": list(result.in_pol),
    }
    if fmt == "json":
        click.echo(format_json(data), nl=False)
    else:
        for key, value in data.items():
            click.echo(f"{key}: {value}")


@demo.command("corollary2")
@click.option("--c", "c", type=int, required=True, help="Rough bound c")
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def demo_corollary2(c: int, limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str):
    """Gaps a with m = a/2 + 1 free of prime factors <= c."""
    pol_set = load_pol(_limit(limit), _threshold(threshold), cache)
    rows = corollary2(c, pol_set)
    frame = pd.DataFrame(
        {"gap": [r.gap for r in rows], "m": [r.m for r in rows], "count": [r.count for r in rows]},
        dtype="int64",
    )
    click.echo(format_frame(frame, fmt), nl=False)


@demo.command("corollary3")
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def demo_corollary3(limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str):
    """Empirical de Polignac numbers written with digits 0 and 2 only."""
    pol_set = load_pol(_limit(limit), _threshold(threshold), cache)
    click.echo(format_frame(corollary3(pol_set).to_frame(pol_set), fmt), nl=False)


@demo.command("bounds")
@limit_option
@threshold_option
@cache_option
@format_option()
@handle_errors
def demo_bounds(limit: Optional[int], threshold: Optional[int], cache: Optional[str], fmt: str):
    """Least empirical member against the published bounded-gap constants."""
    pol_set = load_pol(_limit(limit), _threshold(threshold), cache)
    shadow = bounds(pol_set)
    frame = pd.DataFrame(
        [{"result": name, **values} for name, values in shadow.items()],
        columns=["result", "bound", "nonempty", "least"],
    )
    click.echo(format_frame(frame, fmt), nl=False)


def main() -> None:
    logging.basicConfig(format="%(asctime)s [%(levelname)s] %(name)s: %(message)s", stream=sys.stderr)
    cli(prog_name="polignac")


if __name__ == "__main__":
    main()
