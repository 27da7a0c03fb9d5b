"""
Blue/red edge coloring by empirical de Polignac membership, clique search,
and desk-scale Ramsey numbers.

Vertex indices in the public API are 1-based (v_1 < ... < v_N).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np
from numpy.typing import NDArray

from polignac_core.exceptions import ConfigInvalid, TooLarge
from polignac_core.primes import EmpiricalPol
from polignac_core.utils import saturating_binomial

logger = logging.getLogger("ramsey")

MAX_EXHAUSTIVE_EDGES = 20


class Color(str, Enum):
    BLUE = "blue"
    RED = "red"


@dataclass(frozen=True)
class ColoredGraph:
    """Complete graph on ascending vertices; every pair not in blue_edges is red."""

    vertices: tuple[int, ...]
    blue_edges: frozenset[tuple[int, int]]
    pol_ref: str

    @classmethod
    def from_blue_edges(
        cls,
        n: int,
        blue_edges: Iterable[tuple[int, int]],
        vertices: Optional[Sequence[int]] = None,
        pol_ref: str = "explicit",
    ) -> "ColoredGraph":
        verts = tuple(vertices) if vertices is not None else tuple(range(1, n + 1))
        if len(verts) != n:
            raise ConfigInvalid(f"{len(verts)} vertices given for n={n}")
        edges = frozenset((min(i, j), max(i, j)) for i, j in blue_edges)
        for i, j in edges:
            if not 1 <= i < j <= n:
                raise ConfigInvalid(f"Edge ({i}, {j}) out of range for n={n}")
        return cls(vertices=verts, blue_edges=edges, pol_ref=pol_ref)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def blue_count(self) -> int:
        return len(self.blue_edges)

    @property
    def red_count(self) -> int:
        return self.edge_count - self.blue_count

    @property
    def red_edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (i, j) for i, j in combinations(range(1, self.n + 1), 2) if (i, j) not in self.blue_edges
        )

    def color(self, i: int, j: int) -> Color:
        key = (min(i, j), max(i, j))
        return Color.BLUE if key in self.blue_edges else Color.RED

    def adjacency(self, color: Color) -> NDArray[np.bool_]:
        """0-based boolean adjacency of the chosen color subgraph."""
        blue = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.blue_edges:
            blue[i - 1, j - 1] = blue[j - 1, i - 1] = True
        if Color(color) is Color.BLUE:
            return blue
        red = ~blue
        np.fill_diagonal(red, False)
        return red

    def max_difference(self) -> int:
        return self.vertices[-1] - self.vertices[0] if self.n >= 2 else 0


@dataclass(frozen=True)
class RamseyQuery:
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r < 1 or self.s < 1:
            raise ConfigInvalid(f"Ramsey query needs r, s >= 1, got ({self.r}, {self.s})")


@dataclass(frozen=True)
class RamseyBound:
    value: int
    exact: bool
    saturated: bool = False


@dataclass(frozen=True)
class RamseyVerdict:
    holds: bool
    colorings_checked: int
    counterexample: Optional[ColoredGraph] = None


def color_graph(vertices: Sequence[int], pol: EmpiricalPol) -> ColoredGraph:
    """Edge (i, j) is blue iff v_j - v_i is an empirical de Polignac number."""
    verts = tuple(int(v) for v in vertices)
    if len(verts) < 2:
        raise ConfigInvalid("A colored graph needs at least 2 vertices")
    if any(b <= a for a, b in zip(verts, verts[1:])):
        raise ConfigInvalid("Vertices must be strictly increasing")
    blue = frozenset(
        (i + 1, j + 1)
        for i, j in combinations(range(len(verts)), 2)
        if (verts[j] - verts[i]) in pol
    )
    graph = ColoredGraph(vertices=verts, blue_edges=blue, pol_ref=pol.ref)
    logger.debug("Colored K_%d: %d blue / %d red", graph.n, graph.blue_count, graph.red_count)
    return graph


def _neighbour_masks(g: ColoredGraph, color: Color) -> list[int]:
    adj = g.adjacency(color)
    masks = []
    for row in adj:
        mask = 0
        for j in np.flatnonzero(row).tolist():
            mask |= 1 << j
        masks.append(mask)
    return masks


def find_clique(g: ColoredGraph, color: Color, size: int) -> Optional[tuple[int, ...]]:
    """
    A size-m clique in the chosen color, or None.

    Branch and bound over bitsets. Color-degree is used for pruning only:
    vertices with fewer than m - 1 neighbours in the color are dropped up
    front, and branches that cannot reach m are cut. Candidates are tried in
    ascending index order, never by degree, so the result is the
    lexicographically least clique even when a higher-degree vertex starts
    another one.
    """
    if size < 1:
        raise ConfigInvalid(f"Clique size must be >= 1, got {size}")
    if size > g.n:
        return None
    masks = _neighbour_masks(g, Color(color))
    candidates = 0
    for v, mask in enumerate(masks):
        if mask.bit_count() >= size - 1:
            candidates |= 1 << v

    def extend(clique: list[int], cand: int) -> Optional[list[int]]:
        if len(clique) == size:
            return clique
        while cand:
            if len(clique) + cand.bit_count() < size:
                return None
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            found = extend(clique + [v], cand & masks[v])
            if found is not None:
                return found
        return None

    found = extend([], candidates)
    return tuple(v + 1 for v in found) if found is not None else None


def ramsey_bound(q: RamseyQuery) -> RamseyBound:
    """
    Exact R(r, s) for the tabulated cases, else the binomial bound C(r+s-2, r-1)
    saturating at 2**63 - 1.
    """
    r, s = q.r, q.s
    if r == 1 or s == 1:
        return RamseyBound(1, exact=True)
    if r == 2:
        return RamseyBound(s, exact=True)
    if s == 2:
        return RamseyBound(r, exact=True)
    if (r, s) == (3, 3):
        return RamseyBound(6, exact=True)
    value, saturated = saturating_binomial(r + s - 2, r - 1)
    return RamseyBound(value, exact=False, saturated=saturated)


def _clique_edge_masks(n: int, size: int, edge_bit: dict[tuple[int, int], int]) -> list[int]:
    masks = []
    for verts in combinations(range(n), size):
        mask = 0
        for i, j in combinations(verts, 2):
            mask |= 1 << edge_bit[(i, j)]
        masks.append(mask)
    return masks


def verify_ramsey_exhaustive(r: int, s: int, n: int) -> RamseyVerdict:
    """
    True iff every 2-coloring of K_n has a blue K_r or a red K_s.

    Enumerates all 2**C(n,2) colorings (bit set = blue). The first coloring
    without either clique is returned as the counterexample.
    """
    RamseyQuery(r, s)
    if n < 0:
        raise ConfigInvalid(f"n must be >= 0, got {n}")
    edges = list(combinations(range(n), 2))
    if len(edges) > MAX_EXHAUSTIVE_EDGES:
        raise TooLarge(f"K_{n} has {len(edges)} edges; exhaustive check is capped at {MAX_EXHAUSTIVE_EDGES}")
    edge_bit = {e: b for b, e in enumerate(edges)}
    blue_masks = _clique_edge_masks(n, r, edge_bit) if r <= n else []
    red_masks = _clique_edge_masks(n, s, edge_bit) if s <= n else []

    total = 1 << len(edges)
    for coloring in range(total):
        if any(coloring & m == m for m in blue_masks):
            continue
        if any(coloring & m == 0 for m in red_masks):
            continue
        blue = [(i + 1, j + 1) for (i, j), b in edge_bit.items() if coloring >> b & 1]
        counterexample = ColoredGraph.from_blue_edges(n, blue, pol_ref="counterexample")
        return RamseyVerdict(False, coloring + 1, counterexample)
    return RamseyVerdict(True, total)
