"""Unit tests for the de Polignac coloring, clique search and small Ramsey numbers."""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from polignac_core.exceptions import ConfigInvalid, TooLarge
from polignac_core.primes import empirical_pol, gap_census
from polignac_core.ramsey import (
    Color,
    ColoredGraph,
    RamseyQuery,
    color_graph,
    find_clique,
    ramsey_bound,
    verify_ramsey_exhaustive,
)


@st.composite
def colored_graphs(draw):
    n = draw(st.integers(1, 8))
    pairs = list(combinations(range(1, n + 1), 2))
    blue = [e for e in pairs if draw(st.booleans())]
    return ColoredGraph.from_blue_edges(n, blue)


def _oracle_clique(g, color, size):
    for verts in combinations(range(1, g.n + 1), size):
        if all(g.color(i, j) is color for i, j in combinations(verts, 2)):
            return verts
    return None


def test_ramsey_three_three():
    five = verify_ramsey_exhaustive(3, 3, 5)
    assert not five.holds
    g = five.counterexample
    assert g is not None and g.n == 5
    assert find_clique(g, Color.BLUE, 3) is None
    assert find_clique(g, Color.RED, 3) is None

    six = verify_ramsey_exhaustive(3, 3, 6)
    assert six.holds
    assert six.colorings_checked == 2**15
    assert six.counterexample is None


def test_ramsey_exhaustive_cap():
    with pytest.raises(TooLarge):
        verify_ramsey_exhaustive(3, 3, 7)


@pytest.mark.parametrize(
    "r, s, value, exact",
    [
        (3, 3, 6, True),
        (1, 5, 1, True),
        (2, 7, 7, True),
        (7, 2, 7, True),
        (4, 4, 20, False),
        (3, 4, 10, False),
    ],
)
def test_ramsey_bound(r, s, value, exact):
    bound = ramsey_bound(RamseyQuery(r, s))
    assert bound.value == value
    assert bound.exact == exact
    assert not bound.saturated


def test_ramsey_bound_saturates():
    bound = ramsey_bound(RamseyQuery(40, 40))
    assert bound.saturated
    assert bound.value == 2**63 - 1


def test_ramsey_query_validation():
    with pytest.raises(ConfigInvalid):
        RamseyQuery(0, 3)


def test_color_graph_by_gap_membership():
    pol = empirical_pol(gap_census(100), 1)  # {2, 4, 6, 8}
    g = color_graph([0, 2, 6, 20], pol)
    assert g.blue_edges == frozenset({(1, 2), (1, 3), (2, 3)})
    assert g.red_count == 3
    assert g.pol_ref == pol.ref
    assert find_clique(g, Color.BLUE, 3) == (1, 2, 3)
    assert find_clique(g, Color.RED, 3) is None
    assert find_clique(g, Color.RED, 2) == (1, 4)


def test_color_graph_rejects_bad_vertices():
    pol = empirical_pol(gap_census(100), 1)
    with pytest.raises(ConfigInvalid):
        color_graph([5], pol)
    with pytest.raises(ConfigInvalid):
        color_graph([4, 2, 8], pol)


def test_single_vertex_clique_is_first_vertex():
    g = ColoredGraph.from_blue_edges(3, [])
    assert find_clique(g, Color.BLUE, 1) == (1,)
    assert find_clique(g, Color.BLUE, 2) is None
    assert find_clique(g, Color.RED, 3) == (1, 2, 3)
    assert find_clique(g, Color.RED, 4) is None


def test_clique_prefers_low_indices_over_high_degree():
    # vertex 3 has the largest blue degree but (1, 2) comes first
    g = ColoredGraph.from_blue_edges(6, [(1, 2), (3, 4), (3, 5), (3, 6), (4, 5)])
    assert find_clique(g, Color.BLUE, 2) == (1, 2)
    assert find_clique(g, Color.BLUE, 3) == (3, 4, 5)


def test_from_blue_edges_validation():
    with pytest.raises(ConfigInvalid):
        ColoredGraph.from_blue_edges(3, [(1, 4)])
    g = ColoredGraph.from_blue_edges(3, [(2, 1)])
    assert g.color(1, 2) is Color.BLUE


@settings(max_examples=150, deadline=None)
@given(g=colored_graphs(), color=st.sampled_from([Color.BLUE, Color.RED]), size=st.integers(1, 5))
def test_find_clique_matches_enumeration(g, color, size):
    assert find_clique(g, color, size) == _oracle_clique(g, color, size)


@settings(max_examples=200, deadline=None)
@given(bits=st.lists(st.booleans(), min_size=15, max_size=15))
def test_every_coloring_of_k6_has_a_monochromatic_triangle(bits):
    pairs = list(combinations(range(1, 7), 2))
    g = ColoredGraph.from_blue_edges(6, [e for e, blue in zip(pairs, bits) if blue])
    blue = find_clique(g, Color.BLUE, 3)
    red = find_clique(g, Color.RED, 3)
    assert blue is not None or red is not None
