"""
Witness pipeline: from an IP-set generator to a_1, ..., a_k whose
consecutive-block sums are pairwise distinct, lie in FS(M), and are empirical
de Polignac numbers.

Two routes share one verification path:
  faithful  partial sums -> admissible -> lacunary -> coloring -> clique
  search    depth-first over FS(M) ∩ EmpiricalPol, lexicographically least first

Neither route proves anything about the true de Polignac set; reports say so.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Optional, Sequence, TypedDict

from polignac_core.admissible import construct_admissible, extract_lacunary
from polignac_core.config import ConstructionConfig, PolConfig, SearchConfig
from polignac_core.exceptions import ArithmeticOverflow, ConfigInvalid, SourceExhausted
from polignac_core.ipset import (
    GeneratorSpec,
    IntStream,
    StreamLike,
    as_stream,
    block_witness,
    fs_contains,
    fs_enumerate,
    parse_spec,
    partial_sums,
    stream_from_spec,
)
from polignac_core.primes import EmpiricalPol, GapCensus, SieveLimit, empirical_pol, gap_census
from polignac_core.ramsey import Color, RamseyQuery, color_graph, find_clique, ramsey_bound
from polignac_core.utils import U64_MAX

logger = logging.getLogger("pipeline")

EMPIRICAL_NOTE = (
    "Membership is in the empirical set: even gaps seen at least `threshold` times "
    "between consecutive primes up to `limit`. Nothing here proves membership in Pol."
)
RED_CLIQUE_REASON = (
    "red-clique present: Maynard–Tao contradiction not checkable empirically — "
    "raise limit or threshold"
)


class PipelineMode(str, Enum):
    FAITHFUL = "faithful"
    SEARCH = "search"


@dataclass(frozen=True)
class PipelineConfig:
    spec: GeneratorSpec
    k: int
    limit: int = PolConfig.limit
    threshold: int = PolConfig.threshold
    mode: PipelineMode = PipelineMode.SEARCH
    ratio: float = ConstructionConfig.ratio
    window: int = ConstructionConfig.window
    budget: int = ConstructionConfig.budget
    k2: Optional[int] = None
    search_bound: Optional[int] = SearchConfig.search_bound
    max_vertices: int = ConstructionConfig.max_vertices
    max_nodes: int = SearchConfig.max_nodes

    def __post_init__(self) -> None:
        if isinstance(self.spec, str):
            object.__setattr__(self, "spec", parse_spec(self.spec))
        object.__setattr__(self, "mode", PipelineMode(self.mode))

    def to_dict(self) -> dict:
        return {
            "spec": str(self.spec),
            "k": self.k,
            "limit": self.limit,
            "threshold": self.threshold,
            "mode": self.mode.value,
            "ratio": float(self.ratio),
            "window": self.window,
            "budget": self.budget,
            "k2": self.k2,
            "search_bound": self.search_bound,
            "max_vertices": self.max_vertices,
        }


def validate_config(cfg: PipelineConfig) -> None:
    """
    Raise ConfigInvalid on bad parameters.

    Evenness of FS(M) needs every generator even; the first max(4k, 64)
    elements are sampled (a stream may end earlier or stop at 2**64).
    """
    if cfg.k < 1:
        raise ConfigInvalid(f"k must be >= 1, got {cfg.k}")
    if cfg.threshold < 1:
        raise ConfigInvalid(f"threshold must be >= 1, got {cfg.threshold}")
    SieveLimit.of(cfg.limit)
    if cfg.mode is PipelineMode.FAITHFUL:
        if cfg.k2 is None or cfg.k2 < 1:
            raise ConfigInvalid("faithful mode needs k2 >= 1 (--k2 or POLIGNAC_K2)")
        if cfg.ratio <= 1:
            raise ConfigInvalid(f"ratio must exceed 1, got {cfg.ratio}")
        if cfg.max_vertices < 2:
            raise ConfigInvalid(f"max_vertices must be >= 2, got {cfg.max_vertices}")
    if cfg.search_bound is not None and cfg.search_bound < 2:
        raise ConfigInvalid(f"search_bound must be >= 2, got {cfg.search_bound}")

    sample = stream_from_spec(cfg.spec).bounded().take(max(4 * cfg.k, 64))
    odd = [m for m in sample if m % 2]
    if odd:
        raise ConfigInvalid(
            f"Generator {odd[0]} of {cfg.spec} is odd; FS(M) must lie in the even numbers",
            details={"Spec": str(cfg.spec)},
        )


@dataclass(frozen=True)
class Certificate:
    """Why a value lies in FS(M): a consecutive block m_{lo+1..hi}, or an explicit subset."""

    value: int
    kind: str
    lo: Optional[int] = None
    hi: Optional[int] = None
    subset: Optional[tuple[int, ...]] = None

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "kind": self.kind,
            "lo": self.lo,
            "hi": self.hi,
            "subset": list(self.subset) if self.subset is not None else None,
        }


@dataclass(frozen=True)
class VerifiedWitness:
    a: tuple[int, ...]
    h: tuple[int, ...]
    # ordered by (i, j), 1 <= i <= j <= k
    block_sums: tuple[int, ...]
    certificates: tuple[Optional[Certificate], ...]

    @property
    def k(self) -> int:
        return len(self.a)

    def to_dict(self) -> dict:
        return {
            "a": list(self.a),
            "h": list(self.h),
            "block_sums": list(self.block_sums),
            "certificates": [c.to_dict() if c else None for c in self.certificates],
        }


@dataclass(frozen=True)
class StageRecord:
    stage: int
    name: str
    status: str
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PipelineFailure:
    stage: int
    name: str
    reason: str


class ReportDict(TypedDict):
    config: dict
    outcome: str
    witness: Optional[dict]
    diagnostics: dict


@dataclass(frozen=True)
class PipelineReport:
    config: PipelineConfig
    witness: Optional[VerifiedWitness]
    stages: tuple[StageRecord, ...]
    failure: Optional[PipelineFailure] = None
    census_summary: dict = field(default_factory=dict)

    @property
    def outcome(self) -> str:
        return "witness" if self.witness is not None else "failure"

    def to_dict(self) -> ReportDict:
        return {
            "config": self.config.to_dict(),
            "outcome": self.outcome,
            "witness": self.witness.to_dict() if self.witness else None,
            "diagnostics": {
                "stages": [asdict(s) for s in self.stages],
                "failure": asdict(self.failure) if self.failure else None,
                "census": dict(self.census_summary),
                "empirical": True,
                "note": EMPIRICAL_NOTE,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def block_sum_pairs(k: int) -> list[tuple[int, int]]:
    """(i, j) for 1 <= i <= j <= k in lexicographic order."""
    return [(i, j) for i in range(1, k + 1) for j in range(i, k + 1)]


def certify(value: int, stream: IntStream) -> Optional[Certificate]:
    """A block certificate when one exists, else a subset certificate, else None."""
    block = block_witness(stream, value)
    if block is not None:
        return Certificate(value=value, kind="block", lo=block.lo, hi=block.hi)
    membership = fs_contains(value, stream)
    if membership:
        return Certificate(value=value, kind="subset", subset=membership.subset)
    return None


def assemble_witness(a: Sequence[int], h: Optional[Sequence[int]], source: StreamLike) -> VerifiedWitness:
    """Block sums and FS certificates for a candidate. h defaults to partial sums of a from 0."""
    a = tuple(int(x) for x in a)
    if h is None:
        hs = [0]
        for x in a:
            hs.append(hs[-1] + x)
        h = hs
    stream = as_stream(source)
    sums = tuple(sum(a[i - 1 : j]) for i, j in block_sum_pairs(len(a)))
    certificates = tuple(certify(s, stream) for s in sums)
    return VerifiedWitness(a=a, h=tuple(int(x) for x in h), block_sums=sums, certificates=certificates)


def _check_certificate(cert: Optional[Certificate], value: int, stream: IntStream) -> Optional[str]:
    if cert is None:
        return f"block sum {value} has no FS certificate"
    if cert.value != value:
        return f"certificate for {cert.value} attached to block sum {value}"
    if cert.kind == "block":
        if cert.lo is None or cert.hi is None or not 0 <= cert.lo < cert.hi:
            return f"malformed block certificate for {value}"
        total = 0
        for i in range(cert.lo, cert.hi):
            m = stream.element(i)
            if m is None:
                return f"block certificate for {value} runs past the end of M"
            total += m
        return None if total == value else f"block m_{cert.lo + 1}..m_{cert.hi} sums to {total}, not {value}"
    if cert.kind == "subset":
        subset = cert.subset or ()
        if len(set(subset)) != len(subset):
            return f"subset certificate for {value} repeats an element"
        members = set(stream.prefix_up_to(value))
        stray = [m for m in subset if m not in members]
        if stray:
            return f"subset certificate for {value} uses {stray[0]}, not in M"
        return None if subset and sum(subset) == value else f"subset certificate does not sum to {value}"
    return f"unknown certificate kind {cert.kind!r}"


def verify_witness(w: VerifiedWitness, source: StreamLike, pol: EmpiricalPol) -> tuple[bool, list[str]]:
    """
    Re-check a witness from scratch. Returns (valid, violations); valid iff no
    violations.
    """
    violations: list[str] = []
    k = len(w.a)
    if k < 1:
        return False, ["witness has no elements"]
    if len(w.h) != k + 1:
        violations.append(f"h has {len(w.h)} elements, expected {k + 1}")
    else:
        if any(b <= a for a, b in zip(w.h, w.h[1:])):
            violations.append("h is not strictly increasing")
        for n in range(k):
            if w.a[n] != w.h[n + 1] - w.h[n]:
                violations.append(f"a_{n + 1} = {w.a[n]} but h_{n + 2} - h_{n + 1} = {w.h[n + 1] - w.h[n]}")

    pairs = block_sum_pairs(k)
    expected = [sum(w.a[i - 1 : j]) for i, j in pairs]
    if list(w.block_sums) != expected:
        violations.append(f"block sums {list(w.block_sums)} do not match recomputed {expected}")
    if len(w.h) == k + 1:
        for (i, j), s in zip(pairs, expected):
            if s != w.h[j] - w.h[i - 1]:
                violations.append(f"telescoping fails for ({i}, {j})")

    seen: dict[int, tuple[int, int]] = {}
    for (i, j), s in zip(pairs, expected):
        if s in seen:
            violations.append(f"block sums ({seen[s][0]}, {seen[s][1]}) and ({i}, {j}) both equal {s}")
        else:
            seen[s] = (i, j)
        if s not in pol:
            violations.append(f"block sum {s} is not in {pol.ref}")

    stream = as_stream(source)
    certificates = list(w.certificates)
    if len(certificates) != len(expected):
        violations.append(f"{len(certificates)} certificates for {len(expected)} block sums")
    else:
        for cert, s in zip(certificates, expected):
            problem = _check_certificate(cert, s, stream)
            if problem:
                violations.append(problem)
    return not violations, violations


def _resolve_census(cfg: PipelineConfig, census: Optional[GapCensus]) -> GapCensus:
    if census is None:
        return gap_census(cfg.limit)
    if census.limit.limit != cfg.limit:
        raise ConfigInvalid(f"Census limit {census.limit.limit} does not match requested limit {cfg.limit}")
    return census


def _census_summary(census: GapCensus, pol: EmpiricalPol) -> dict:
    return {
        "limit": census.limit.limit,
        "prime_count": census.prime_count,
        "max_gap": census.max_gap if census.records else 0,
        "pol_size": len(pol),
        "pol_max": pol.max_member,
    }


def _finish(
    cfg: PipelineConfig,
    stages: list[StageRecord],
    summary: dict,
    failure: Optional[PipelineFailure] = None,
    witness: Optional[VerifiedWitness] = None,
) -> PipelineReport:
    if failure is not None:
        logger.info("Pipeline failed at stage %d (%s): %s", failure.stage, failure.name, failure.reason)
    return PipelineReport(
        config=cfg, witness=witness, stages=tuple(stages), failure=failure, census_summary=summary
    )


def _verify_stage(
    cfg: PipelineConfig,
    stage: int,
    candidate: VerifiedWitness,
    pol: EmpiricalPol,
    stages: list[StageRecord],
    summary: dict,
) -> PipelineReport:
    valid, violations = verify_witness(candidate, cfg.spec, pol)
    if not valid:
        stages.append(StageRecord(stage, "witness", "failed", {"violations": violations}))
        return _finish(cfg, stages, summary, PipelineFailure(stage, "witness", "; ".join(violations)))
    stages.append(StageRecord(stage, "witness", "ok", {"a": list(candidate.a)}))
    logger.info("Witness found: a=%s", list(candidate.a))
    return _finish(cfg, stages, summary, witness=candidate)


def run_faithful(cfg: PipelineConfig, census: Optional[GapCensus] = None) -> PipelineReport:
    """
    Follow the construction stage by stage. Expected to fail for k >= 2 at
    sieve limits within reach: lacunary differences outgrow every census gap.
    """
    validate_config(cfg)
    census = _resolve_census(cfg, census)
    pol = empirical_pol(census, cfg.threshold)
    summary = _census_summary(census, pol)
    stages: list[StageRecord] = []
    stage, name = 1, "partial_sums"

    try:
        source = partial_sums(stream_from_spec(cfg.spec)).bounded(U64_MAX)

        stage, name = 2, "admissible"
        bound = ramsey_bound(RamseyQuery(cfg.k + 1, cfg.k2))
        count = min(bound.value, cfg.max_vertices)
        window = max(cfg.window, 2 * count)
        truncated = False
        try:
            seq = construct_admissible(source, count, window, cfg.budget)
        except SourceExhausted as e:
            seq = e.partial
            got = len(seq.elements) if seq else 0
            stages.append(
                StageRecord(1, "partial_sums", "ok", {"produced": source.produced, "capped_at_u64": source.truncated})
            )
            if got < cfg.k + 1:
                stages.append(StageRecord(2, name, "failed", {"requested": count, "built": got}))
                return _finish(cfg, stages, summary, PipelineFailure(2, name, e.message))
            truncated = True
            logger.warning("Admissible construction stopped after %d of %d elements; continuing", got, count)
        else:
            stages.append(
                StageRecord(1, "partial_sums", "ok", {"produced": source.produced, "capped_at_u64": source.truncated})
            )
        stages.append(
            StageRecord(
                2,
                name,
                "truncated" if truncated else "ok",
                {
                    "requested": count,
                    "ramsey_bound": bound.value,
                    "ramsey_exact": bound.exact,
                    "window": window,
                    "elements": list(seq.elements),
                    "choices": [[c.prime, c.residue, c.survivors] for c in seq.choices],
                },
            )
        )

        stage, name = 3, "lacunary"
        lacunary = extract_lacunary(seq.elements, cfg.ratio)
        spread = lacunary[-1] - lacunary[0] if len(lacunary) >= 2 else 0
        stages.append(
            StageRecord(
                3,
                name,
                "ok",
                {
                    "survivors": list(lacunary),
                    "largest_difference": spread,
                    "largest_census_gap": summary["max_gap"],
                },
            )
        )
        logger.info("Lacunary survivors: %d (largest difference %d)", len(lacunary), spread)

        stage, name = 4, "vertices"
        n_vertices = min(bound.value, len(lacunary))
        vertices = lacunary[:n_vertices]
        detail = {"N": n_vertices, "ramsey_bound": bound.value}
        if n_vertices < cfg.k + 1:
            stages.append(StageRecord(4, name, "failed", detail))
            reason = f"only {n_vertices} lacunary vertices, a blue clique needs {cfg.k + 1}"
            return _finish(cfg, stages, summary, PipelineFailure(4, name, reason))
        stages.append(StageRecord(4, name, "ok", detail))

        stage, name = 5, "coloring"
        graph = color_graph(vertices, pol)
        stages.append(StageRecord(5, name, "ok", {"blue_edges": graph.blue_count, "red_edges": graph.red_count}))

        stage, name = 6, "clique"
        clique = find_clique(graph, Color.BLUE, cfg.k + 1)
        if clique is None:
            red = find_clique(graph, Color.RED, cfg.k2)
            detail = {
                "blue_clique": None,
                "red_clique": list(red) if red else None,
                "largest_difference": graph.max_difference(),
                "largest_census_gap": summary["max_gap"],
            }
            stages.append(StageRecord(6, name, "failed", detail))
            if red is not None:
                reason = RED_CLIQUE_REASON
            else:
                reason = f"no blue K_{cfg.k + 1} and no red K_{cfg.k2} among {graph.n} vertices"
            reason += f" (largest difference {graph.max_difference()} vs largest census gap {summary['max_gap']})"
            return _finish(cfg, stages, summary, PipelineFailure(6, name, reason))
        stages.append(StageRecord(6, name, "ok", {"blue_clique": list(clique)}))

        stage, name = 7, "witness"
        h = [vertices[i - 1] for i in clique]
        a = [h[n + 1] - h[n] for n in range(cfg.k)]
        candidate = assemble_witness(a, h, cfg.spec)
        return _verify_stage(cfg, 7, candidate, pol, stages, summary)
    except ArithmeticOverflow as e:
        stages.append(StageRecord(stage, name, "failed", {"overflow": e.message}))
        return _finish(cfg, stages, summary, PipelineFailure(stage, name, f"64-bit overflow: {e.message}"))


def _search(
    k: int,
    candidates: Sequence[int],
    admissible_sum,
    max_nodes: int,
) -> tuple[Optional[tuple[int, ...]], int, bool]:
    """
    Lexicographically least a_1..a_k over ascending candidates such that all
    block sums pass `admissible_sum` and are pairwise distinct.
    Returns (found, nodes visited, budget hit).
    """
    prefix: list[int] = []
    sums: set[int] = set()
    nodes = 0

    def extend() -> bool:
        nonlocal nodes
        if len(prefix) == k:
            return True
        for c in candidates:
            nodes += 1
            if nodes > max_nodes:
                return False
            # new block sums end at the new element; they increase with the start, so never collide among themselves
            new_sums = []
            running = c
            ok = True
            for prev in [None] + prefix[::-1]:
                if prev is not None:
                    running += prev
                if running in sums or not admissible_sum(running):
                    ok = False
                    break
                new_sums.append(running)
            if not ok:
                continue
            prefix.append(c)
            sums.update(new_sums)
            if extend():
                return True
            prefix.pop()
            sums.difference_update(new_sums)
            if nodes > max_nodes:
                return False
        return False

    found = extend()
    return (tuple(prefix) if found else None), nodes, nodes > max_nodes


def run_search(cfg: PipelineConfig, census: Optional[GapCensus] = None) -> PipelineReport:
    """Direct search over FS(M) ∩ EmpiricalPol ∩ [2, search_bound]."""
    validate_config(cfg)
    census = _resolve_census(cfg, census)
    pol = empirical_pol(census, cfg.threshold)
    summary = _census_summary(census, pol)
    stages: list[StageRecord] = []

    if not pol.members:
        stages.append(StageRecord(1, "candidates", "failed", {"pol_size": 0}))
        return _finish(cfg, stages, summary, PipelineFailure(1, "candidates", f"{pol.ref} is empty"))

    try:
        search_bound = cfg.search_bound if cfg.search_bound is not None else pol.max_member
        # block sums must be in pol, so FS is only needed up to its largest member
        fs_bound = min(cfg.k * search_bound, pol.max_member)
        fs = set(fs_enumerate(stream_from_spec(cfg.spec), fs_bound)) if fs_bound >= 1 else set()
        candidates = [g for g in pol.members if 2 <= g <= search_bound and g in fs]
        stages.append(
            StageRecord(1, "candidates", "ok", {"search_bound": search_bound, "count": len(candidates)})
        )
        logger.info("Search candidates: %d in [2, %d]", len(candidates), search_bound)

        found, nodes, exhausted_budget = _search(
            cfg.k, candidates, lambda s: s in pol and s in fs, cfg.max_nodes
        )
        detail = {"nodes": nodes, "node_budget": cfg.max_nodes}
        logger.debug("Search visited %d nodes", nodes)
        if found is None:
            stages.append(StageRecord(2, "search", "failed", detail))
            if exhausted_budget:
                reason = f"node budget {cfg.max_nodes} exhausted before a witness was found"
            else:
                reason = f"no witness of length {cfg.k} with every a_n <= {search_bound}"
            return _finish(cfg, stages, summary, PipelineFailure(2, "search", reason))
        stages.append(StageRecord(2, "search", "ok", detail))

        candidate = assemble_witness(found, None, cfg.spec)
        return _verify_stage(cfg, 3, candidate, pol, stages, summary)
    except ArithmeticOverflow as e:
        stages.append(StageRecord(len(stages) + 1, "search", "failed", {"overflow": e.message}))
        return _finish(cfg, stages, summary, PipelineFailure(len(stages), "search", f"64-bit overflow: {e.message}"))


def run_pipeline(cfg: PipelineConfig, census: Optional[GapCensus] = None) -> PipelineReport:
    if cfg.mode is PipelineMode.FAITHFUL:
        return run_faithful(cfg, census)
    return run_search(cfg, census)
