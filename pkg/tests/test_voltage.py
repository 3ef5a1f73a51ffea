"""Voltage graphs, patches, ends and small cuts."""

import math

import networkx as nx
import pytest

from quasicolour.corpus import EXAMPLES, example
from quasicolour.errors import ArgumentError, ResourceError
from quasicolour.voltage import (
    EUCLIDEAN,
    EuclideanGroup,
    PeriodicGraph,
    build_patch,
    cover_vertex,
    estimate_ends,
    max_edge_length,
    neighbours,
    patch_connectivity,
    position,
    require_valid,
    small_cuts,
    translate,
    validate_quotient,
)

UNIT = EuclideanGroup(((1, 0), (0, 1)))


def graph(darts, orbits=1, geometry=None):
    return PeriodicGraph(EUCLIDEAN, orbits, darts, geometry or ((0, 0),) * orbits, UNIT)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_every_example_validates(name):
    assert validate_quotient(example(name)).ok


def test_unknown_example():
    with pytest.raises(ArgumentError):
        example("nope")


def test_missing_reverse_dart_is_reported():
    pg = graph([(0, 0, (1, 0)), (0, 0, (-1, 0)), (0, 0, (0, 1))])
    report = validate_quotient(pg)
    assert not report.ok
    assert [m for m, _ in report.problems] == ["missing reverse dart"]
    with pytest.raises(ArgumentError):
        require_valid(pg)


def test_duplicate_and_loop_darts_are_reported():
    dup = graph([(0, 0, (1, 0)), (0, 0, (1, 0)), (0, 0, (-1, 0))])
    assert "duplicate dart" in [m for m, _ in validate_quotient(dup).problems]
    loop = graph([(0, 0, (0, 0)), (0, 0, (1, 0)), (0, 0, (-1, 0))])
    assert "loop in cover" in [m for m, _ in validate_quotient(loop).problems]


def test_bad_orbit_reference():
    with pytest.raises(ArgumentError):
        graph([(0, 1, (0, 0))])


def test_square_patch_sizes(square):
    sizes = [len(build_patch(square, None, r).vertices) for r in range(5)]
    assert sizes == [2 * r * r + 2 * r + 1 for r in range(5)]
    patch = build_patch(square, None, 1)
    assert len(patch.edges) == 4
    assert nx.is_connected(patch.graph())


def test_patch_is_a_ball(square):
    patch = build_patch(square, None, 4)
    for v, d in zip(patch.vertices, patch.depth):
        assert abs(v.key[0]) + abs(v.key[1]) == d


def test_patch_cap(square):
    with pytest.raises(ResourceError):
        build_patch(square, None, 30, cap=100)


def test_hexagonal_patch(hexagonal):
    patch = build_patch(hexagonal, None, 1)
    assert len(patch.vertices) == 4 and len(patch.edges) == 3
    assert all(hexagonal.degree(u) == 3 for u in range(2))


def test_heptagonal_patch_has_degree_seven(heptagonal):
    patch = build_patch(heptagonal, None, 3)
    g = patch.graph()
    inner = [i for i, d in enumerate(patch.depth) if d < 3]
    assert all(g.degree(i) == 7 for i in inner)
    # {3,7}: every edge of the root lies on exactly two triangles
    root_nbrs = set(g.neighbors(0))
    for n in root_nbrs:
        assert len(root_nbrs & set(g.neighbors(n))) == 2
    assert all(abs(complex(*p)) < 1 for p in patch.positions())


def test_translation_acts_on_the_left(square, heptagonal):
    v = cover_vertex(square, 0, (2, -1))
    assert translate(square, (1, 1), v) == cover_vertex(square, 0, (3, 0))
    # translations commute with taking neighbours
    for t in ((1, 0), (3, -2)):
        moved = [translate(square, t, n) for n in neighbours(square, v)]
        assert moved == neighbours(square, translate(square, t, v))
    root = cover_vertex(heptagonal, 0)
    z = heptagonal.group.element((3,))
    assert translate(heptagonal, z, root) == root


def test_max_edge_lengths(square, heptagonal):
    assert max_edge_length(square) == 1.0
    assert math.isclose(max_edge_length(example("square-diagonals")), math.sqrt(2))
    # {3,7} edge: 2 arccosh(cos(pi/3) / sin(pi/7))
    want = 2 * math.acosh(math.cos(math.pi / 3) / math.sin(math.pi / 7))
    assert math.isclose(max_edge_length(heptagonal), want, rel_tol=1e-9)


def test_position(hexagonal):
    v = cover_vertex(hexagonal, 1, (2, 0))
    assert position(hexagonal, v) == (2 + 1 / 3, 1 / 3)


def test_ends(square, heptagonal):
    assert estimate_ends(square, 2, 8) == 1
    assert estimate_ends(example("path"), 1, 6) == 2
    assert estimate_ends(heptagonal, 1, 3) == 1
    with pytest.raises(ArgumentError):
        estimate_ends(square, 3, 3)


@pytest.mark.parametrize("r", [1, 2, 4])
def test_square_ends_stable_in_R(square, r):
    assert {estimate_ends(square, r, R) for R in range(r + 1, 10)} == {1}


@pytest.mark.parametrize(
    "name,kappa",
    [("square", 3), ("hexagonal", 3), ("leafed", 1), ("two-leaf", 1), ("subdivided", 2), ("triangular", 3)],
)
def test_patch_connectivity(name, kappa):
    assert patch_connectivity(build_patch(example(name), None, 6), 3) == kappa


def test_small_cuts_cut_off_finite_pieces():
    pg = example("subdivided")
    patch = build_patch(pg, None, 5)
    g = patch.graph()
    found = list(small_cuts(patch, 2))
    assert found
    for cut, comp in found:
        rest = g.copy()
        rest.remove_nodes_from(cut)
        assert not any(patch.depth[i] == patch.radius for i in comp)
        assert set(comp) in [set(c) for c in nx.connected_components(rest)]


def test_degenerate_patch_rejected(square):
    with pytest.raises(ArgumentError):
        patch_connectivity(build_patch(square, None, 1), 3)
