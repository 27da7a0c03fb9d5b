"""
Polignac Toolkit Core
=====================

IP (finite-sums) sets, a segmented prime-gap census, the empirical
de Polignac set, admissible tuples, Ramsey colorings and the witness
pipeline. Pure logic; the command line lives in polignac_core.cli.
"""

from polignac_core.admissible import KTuple, construct_admissible, extract_lacunary, is_admissible
from polignac_core.exceptions import PolignacError
from polignac_core.ipset import GeneratorSpec, fs_contains, fs_enumerate, parse_spec, partial_sums
from polignac_core.pipeline import PipelineConfig, PipelineMode, PipelineReport, run_pipeline, verify_witness
from polignac_core.primes import EmpiricalPol, GapCensus, SieveLimit, empirical_pol, gap_census
from polignac_core.ramsey import Color, ColoredGraph, color_graph, find_clique, ramsey_bound

__version__ = "0.1.0"

__all__ = [
    "Color",
    "ColoredGraph",
    "EmpiricalPol",
    "GapCensus",
    "GeneratorSpec",
    "KTuple",
    "PipelineConfig",
    "PipelineMode",
    "PipelineReport",
    "PolignacError",
    "SieveLimit",
    "color_graph",
    "construct_admissible",
    "empirical_pol",
    "extract_lacunary",
    "find_clique",
    "fs_contains",
    "fs_enumerate",
    "gap_census",
    "is_admissible",
    "parse_spec",
    "partial_sums",
    "ramsey_bound",
    "run_pipeline",
    "verify_witness",
]
