"""Quotients, exact and heuristic colourings, lifting and the two pipelines."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quasicolour.colouring import (
    PeriodicColouring,
    colour_quotient,
    dsatur,
    euclid_pipeline,
    exact_colouring,
    is_proper,
    lift_colouring,
    pipeline,
)
from quasicolour.corpus import example
from quasicolour.errors import ArgumentError, ResourceError, SubgroupTooSmallError, UnsupportedInputError
from quasicolour.quotient import quotient_mod_subgroup, shortest_noncontractible
from quasicolour.subgroups import LatticeSubgroup
from quasicolour.verify import brute_force_chromatic, check_periodic, check_proper
from quasicolour.voltage import cover_vertex, neighbours

EUCLIDEAN_NAMES = ["square", "hexagonal", "triangular", "square-diagonals", "leafed", "two-leaf", "subdivided"]


def diag(a, b):
    return LatticeSubgroup(((a, 0), (0, b)))


def test_square_quotient_mod_two(square):
    q = quotient_mod_subgroup(square, diag(2, 2))
    assert q.size == 4 and q.edge_count == 8
    assert all(q.degree(a) == 4 for a in range(4))
    with pytest.raises(SubgroupTooSmallError):
        quotient_mod_subgroup(square, diag(1, 1))


def test_quotient_resolution_is_constant_on_orbits(square):
    sub = LatticeSubgroup(((3, 1), (0, 2)))
    q = quotient_mod_subgroup(square, sub)
    assert q.size == sub.index == 6
    for x, y in itertools.product(range(-4, 5), repeat=2):
        v = cover_vertex(square, 0, (x, y))
        for t in sub.generators():
            w = cover_vertex(square, 0, (x + t[0], y + t[1]))
            assert q.resolve(v) == q.resolve(w)


def test_quotient_edges_match_cover_degrees(hexagonal):
    q = quotient_mod_subgroup(hexagonal, diag(2, 3))
    assert q.size == 12
    assert sum(q.degree(a) for a in range(q.size)) == 2 * q.edge_count == 36


def test_heptagonal_quotient_sizes(heptagonal):
    pc, report = pipeline(heptagonal)
    q = pc.quotient
    assert report["index"] == 168
    assert q.size == 24 and q.edge_count == 84
    assert all(q.degree(a) == 7 for a in range(q.size))
    assert report["genus"] == 3


# -- shortest non-contractible cycle -------------------------------------------


def closed_walk_oracle(pg, sub, limit):
    """Shortest closed walk in the quotient whose lift joins two distinct cover vertices.

    Plain depth-first enumeration of walks in the cover from each class
    representative, no pruning beyond the length bound.
    """
    q = quotient_mod_subgroup(pg, sub, allow_loops=True)
    best = None
    for a, rep in enumerate(q.representatives):
        stack = [(rep, 0)]
        while stack:
            v, n = stack.pop()
            if n and v != rep and q.resolve(v) == a:
                best = n if best is None else min(best, n)
                continue
            if n < (limit if best is None else min(limit, best - 1)):
                for w in neighbours(pg, v):
                    stack.append((w, n + 1))
    return best


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_shortest_noncontractible_square_diag(square, n):
    assert shortest_noncontractible(square, diag(n, n)) == n
    assert closed_walk_oracle(square, diag(n, n), 7) == n


@pytest.mark.parametrize("name,rows", [("square", ((3, 0), (0, 6))), ("hexagonal", ((2, 0), (0, 2))), ("triangular", ((3, 1), (0, 3))), ("square-diagonals", ((4, 0), (0, 3)))])
def test_shortest_noncontractible_matches_oracle(name, rows):
    pg = example(name)
    sub = LatticeSubgroup(rows)
    got = shortest_noncontractible(pg, sub)
    assert got == closed_walk_oracle(pg, sub, got + 1)


def test_shortest_noncontractible_heptagonal(heptagonal):
    pc, _ = pipeline(heptagonal)
    assert shortest_noncontractible(heptagonal, pc.subgroup) >= 3


# -- exact colouring against brute force ---------------------------------------


def small_quotients(limit=14):
    for name in EUCLIDEAN_NAMES:
        pg = example(name)
        for a in range(1, 8):
            for b in range(1, 8):
                for c in range(0, max(a, 1)):
                    sub = LatticeSubgroup(((a, c), (0, b))) if c else diag(a, b)
                    if pg.orbits * sub.index > limit:
                        continue
                    try:
                        q = quotient_mod_subgroup(pg, sub)
                    except SubgroupTooSmallError:
                        continue
                    yield name, sub.matrix, q


def test_small_quotient_family_is_nontrivial():
    qs = list(small_quotients())
    assert len(qs) > 50
    assert max(q.size for _, _, q in qs) == 14


def test_exact_colouring_agrees_with_brute_force():
    for name, rows, q in small_quotients():
        adj = q.adjacency()
        chi = brute_force_chromatic(adj)
        for k in range(2, 7):
            cols = exact_colouring(adj, k)
            assert (cols is not None) == (chi <= k), (name, rows, k)
            if cols is not None:
                assert is_proper(adj, cols) and max(cols) < k


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]), max_size=25))))
def test_exact_colouring_random_graphs(data):
    n, edges = data
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    chi = brute_force_chromatic(adj)
    assert exact_colouring(adj, chi) is not None
    assert exact_colouring(adj, chi - 1) is None
    cols = dsatur(adj)
    assert is_proper(adj, cols) and max(cols) + 1 >= chi


def test_exact_colouring_budget():
    import networkx as nx

    g = nx.mycielski_graph(5)  # chromatic number 5
    adj = [sorted(g[v]) for v in sorted(g)]
    with pytest.raises(ResourceError):
        exact_colouring(adj, 4, node_budget=50)


def test_colour_quotient_strategies(square):
    q = quotient_mod_subgroup(square, diag(2, 2))
    assert colour_quotient(q, "exact-k", 2).palette == 2
    assert colour_quotient(q, "exact-k", 1) is None
    assert colour_quotient(q, "unique").palette == 4
    assert colour_quotient(q, "dsatur").palette == 2
    with pytest.raises(ArgumentError):
        colour_quotient(q, "greedy")
    with pytest.raises(ArgumentError):
        colour_quotient([[0]], "dsatur")


def test_brute_force_limits():
    assert brute_force_chromatic([]) == 0
    with pytest.raises(ArgumentError):
        brute_force_chromatic([[] for _ in range(15)])


# -- lifting and pipelines -----------------------------------------------------


def test_lifted_colouring_is_periodic_and_proper(square):
    q = quotient_mod_subgroup(square, diag(2, 2))
    pc = lift_colouring(colour_quotient(q, "exact-k", 2), q)
    assert check_proper(pc, r=6).ok
    assert check_periodic(pc, 50, seed=3).ok


@pytest.mark.parametrize(
    "name,index,palette,steps",
    [
        ("square", 4, 2, 0),
        ("hexagonal", 1, 2, 0),
        ("triangular", 4, 4, 0),
        ("square-diagonals", 4, 4, 0),
        ("leafed", 4, 2, 1),
        ("two-leaf", 4, 2, 1),
        ("subdivided", 4, 3, 1),
        ("leafed-subdivided", 4, 3, 2),
    ],
)
def test_euclid_pipeline(name, index, palette, steps):
    pg = example(name)
    pc, report = euclid_pipeline(pg)
    assert report["index"] == index
    assert pc.palette == palette == report["palette"]
    assert report["reduction_steps"] == steps
    assert check_proper(pc, pg, 6).ok
    assert check_periodic(pc, 40).ok
    assert report["genus"] == 1 and report["ringel_youngs"] == 7


def test_pipeline_rejects_two_ended_and_fuchsian_mismatch(heptagonal):
    with pytest.raises(UnsupportedInputError):
        pipeline(example("path"))
    with pytest.raises(ArgumentError):
        euclid_pipeline(heptagonal)


def test_pentagonal_pipeline():
    pg = example("pentagonal")
    pc, report = pipeline(pg)
    assert report["index"] == 120 and report["genus"] == 4
    assert check_proper(pc, pg, 3).ok


def test_heptagonal_unique_strategy(heptagonal):
    pc, report = pipeline(heptagonal, strategy="unique")
    assert pc.palette == 24 == report["unique_bound"]
    assert check_proper(pc, heptagonal, 2).ok


def test_corrupted_colouring_fails_checks(square):
    pc, _ = pipeline(square)

    def shifted(v):
        return pc.quotient.resolve(v) if v.element[0] < 5 else (pc.quotient.resolve(v) + 1) % pc.quotient.size

    bad = PeriodicColouring(square, pc.quotient, pc.colours, "corrupt", resolver=shifted)
    assert not check_periodic(bad, 100).ok
    report = check_proper(bad, square, 8)
    assert not report.ok and report.failures
