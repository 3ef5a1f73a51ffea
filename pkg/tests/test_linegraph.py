"""Line graphs, the planarity scan, edge colourings and orientations."""

import networkx as nx
import pytest

from quasicolour.colouring import PeriodicColouring, pipeline
from quasicolour.corpus import example
from quasicolour.errors import ArgumentError, UnsupportedInputError
from quasicolour.linegraph import (
    DEGREE_CUT_ROUTE,
    Orientation,
    check_edge_colouring,
    edge_orbits,
    forbidden_subgraphs,
    line_graph,
    line_planarity_check,
    periodic_edge_colouring,
    periodic_orientation,
)
from quasicolour.verify import check_proper
from quasicolour.voltage import build_patch, cover_vertex, neighbours, validate_quotient


def test_edge_orbit_counts(square, hexagonal):
    assert len(edge_orbits(square)) == 2
    assert len(edge_orbits(hexagonal)) == 3
    assert len(edge_orbits(example("triangular"))) == 3


@pytest.mark.parametrize("name,orbits,degree", [("square", 2, 6), ("hexagonal", 3, 4), ("path", 1, 2), ("triangular", 3, 10)])
def test_line_graph_degrees(name, orbits, degree):
    lg = line_graph(example(name))
    assert validate_quotient(lg).ok
    assert lg.orbits == orbits
    assert {lg.degree(u) for u in range(lg.orbits)} == {degree}


def test_line_graph_matches_networkx_on_a_patch(hexagonal):
    # the line graph of a large patch agrees with the line-graph patch away from the rim
    lg = line_graph(hexagonal)
    lpatch = build_patch(lg, None, 3)
    big = build_patch(hexagonal, None, 12)
    L = nx.line_graph(big.graph())
    centre = next(e for e in L.nodes if 0 in e)
    ball = nx.ego_graph(L, centre, radius=3)
    assert ball.number_of_nodes() == len(lpatch.vertices)
    assert ball.number_of_edges() == len(lpatch.edges)


def test_line_graph_rejects_fuchsian(heptagonal):
    with pytest.raises(UnsupportedInputError):
        line_graph(heptagonal)


def test_planarity_hexagonal_passes(hexagonal):
    report = line_planarity_check(hexagonal, 6)
    assert report.ok and report.route == DEGREE_CUT_ROUTE
    assert report.max_degree == 3 and not report.witnesses


def test_planarity_square_fails_with_degree_four_witness(square):
    report = line_planarity_check(square, 6)
    assert report.route == "fail"
    assert report.witnesses[0]["type"] == "degree-4 non-cut vertex"


def test_planarity_leafed_fails_with_claw(square):
    report = line_planarity_check(example("leafed"), 6)
    assert report.route == "fail"
    first = report.witnesses[0]
    assert first["type"] == "K1,5" and len(first["leaves"]) == 5


def test_planarity_radius_guard(hexagonal):
    with pytest.raises(ArgumentError):
        line_planarity_check(hexagonal, 3)


def test_forbidden_subgraph_witnesses_are_subgraphs(square):
    patch = build_patch(example("square-diagonals"), None, 3)
    g = patch.graph()
    found = {w["type"]: w for w in forbidden_subgraphs(patch)}
    assert "K1,5" in found and "K2+3K1" in found
    index = {(v.orbit, tuple(v.element)): i for i, v in enumerate(patch.vertices)}
    ids = [index[(o, tuple(e))] for o, e in found["K1,5"]["vertices"]]
    assert all(g.has_edge(ids[0], j) for j in ids[1:])


def test_hexagonal_edge_colouring(hexagonal):
    ec, report = periodic_edge_colouring(hexagonal)
    assert ec.palette >= 3
    assert check_edge_colouring(ec, 5) == []
    assert check_proper(ec.colouring, ec.line, 5).ok
    assert report["planarity"]["route"] == DEGREE_CUT_ROUTE


def test_edge_colouring_rejects_square(square):
    with pytest.raises(UnsupportedInputError):
        periodic_edge_colouring(square)


def test_orientation_antisymmetric_and_invariant(square):
    pc, _ = pipeline(square)
    orient = periodic_orientation(pc)
    patch = build_patch(square, None, 6)
    for i, j in patch.edges:
        u, v = patch.vertices[i], patch.vertices[j]
        assert orient.points_forward(u, v) != orient.points_forward(v, u)
    for (a, k), fwd in orient.forward.items():
        rep = pc.quotient.representative(a)
        assert orient.points_forward(rep, neighbours(square, rep)[k]) == fwd


def test_orientation_needs_proper_colouring(square):
    pc, _ = pipeline(square)
    flat = PeriodicColouring(square, pc.quotient, [0] * pc.quotient.size, "flat")
    with pytest.raises(ArgumentError):
        periodic_orientation(flat)
    with pytest.raises(ArgumentError):
        Orientation(flat, {}).points_forward(cover_vertex(square, 0), cover_vertex(square, 0, (1, 0)))
